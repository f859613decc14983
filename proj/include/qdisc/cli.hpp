// Copyright 2026 The qdisc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: state files, subcommands, CSV/JSON emission.
//
//   qdisc divergences --rho F --sigma F [--bits] [--psi-csv PATH]
//   qdisc stein       --rho F --sigma F --eps E --n-max N [--variant V]
//   qdisc hoeffding   --rho F --sigma F --r R --n-max N
//   qdisc chernoff    --rho F --sigma F --n-max N
//   qdisc binary      --p P --q Q --a A --n-max N
//   qdisc oracle      --rho F --sigma F --n N --a A
//
// Exit codes: 0 success, 1 numerical non-convergence, 2 invalid input,
// 3 resource cap. Files named by relative paths are placed under
// $QDISC_OUTPUT_DIR when that variable is set.

#ifndef QDISC_CLI_HPP
#define QDISC_CLI_HPP

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qdisc/classical_binary.hpp"
#include "qdisc/divergences.hpp"
#include "qdisc/error.hpp"
#include "qdisc/exact_oracles.hpp"
#include "qdisc/finite_bounds.hpp"
#include "qdisc/format.hpp"
#include "qdisc/linalg.hpp"
#include "qdisc/ns_mapping.hpp"

namespace qdisc::cli {

using Json = nlohmann::json;

inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kTraceRenormalizeTol = 1e-6;

/// {"dim": d, "matrix": [[[re, im], ...], ...]}, row-major. A trace within
/// 1e-6 of one is renormalized (with a warning appended to `warnings`).
inline DensityMatrix parse_state_json(const Json& doc, std::vector<std::string>* warnings = nullptr) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("matrix")) {
    fail(ErrorCode::invalid_input, "state: expected an object with keys \"dim\" and \"matrix\"");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
    fail(ErrorCode::invalid_input, "state: \"dim\" must be a positive integer");
  }
  const auto d = static_cast<std::size_t>(doc["dim"].get<long long>());
  if (d > kDefaultDimCap) {
    fail(ErrorCode::resource_limit, "state: dim " + std::to_string(d) + " exceeds cap " +
                                        std::to_string(kDefaultDimCap));
  }
  const Json& m = doc["matrix"];
  if (!m.is_array() || m.size() != d) {
    fail(ErrorCode::invalid_input, "state: \"matrix\" must have " + std::to_string(d) + " rows");
  }
  std::vector<Complex> raw(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!m[i].is_array() || m[i].size() != d) {
      fail(ErrorCode::invalid_input, "state: row " + std::to_string(i) + " must have " + std::to_string(d) +
                                         " entries");
    }
    for (std::size_t j = 0; j < d; ++j) {
      const Json& z = m[i][j];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        fail(ErrorCode::invalid_input, "state: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                           ") must be a [re, im] pair of numbers");
      }
      raw[i * d + j] = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  const double defect = HermitianMatrix::hermiticity_defect(d, raw);
  if (defect > kHermitianTol) {
    fail(ErrorCode::invalid_input, "state: matrix is not Hermitian (max |M_jk - conj(M_kj)| = " +
                                       format_double(defect) + ")");
  }
  HermitianMatrix h(d, std::move(raw));
  const double tr = h.trace();
  if (std::abs(tr - 1.0) > kTraceRenormalizeTol) {
    fail(ErrorCode::invalid_input, "state: trace " + format_double(tr) + " differs from 1 by more than 1e-6");
  }
  if (std::abs(tr - 1.0) > kTraceTol) {
    if (warnings != nullptr) warnings->push_back("state trace " + format_double(tr) + " renormalized to 1");
    h = (1.0 / tr) * h;
  }
  return DensityMatrix::from_hermitian(h, kPsdTol, kTraceTol);
}

inline DensityMatrix parse_state_file(const std::string& path, std::vector<std::string>* warnings = nullptr) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::invalid_input, "cannot open state file '" + path + "'");
  Json doc;
  try {
    in >> doc;
  } catch (const Json::exception& e) {
    fail(ErrorCode::invalid_input, "malformed JSON in '" + path + "': " + e.what());
  }
  return parse_state_json(doc, warnings);
}

/// Relative output paths resolve under $QDISC_OUTPUT_DIR when it is set.
inline std::filesystem::path output_path(const std::string& name) {
  std::filesystem::path p(name);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("QDISC_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

inline void write_file(const std::string& name, const std::string& content) {
  const auto path = output_path(name);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::invalid_input, "cannot write output file '" + path.string() + "'");
  out << content;
}

/// Empty field for values that are unavailable at this n.
inline std::string csv_field(double v, bool available = true) {
  return available ? format_double(v) : std::string();
}

/// Evaluates rows 0..count-1 on `threads` workers; output order is by index.
template <class F>
std::vector<std::string> parallel_rows(std::size_t count, unsigned threads, F&& row) {
  std::vector<std::string> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = row(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

inline int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::resource_limit:
      return 3;
    case ErrorCode::no_convergence:
      return 1;
    default:
      return 2;
  }
}

inline Json report_json(const DivergenceProfile& p, double scale) {
  Json j;
  j["relative_entropy"] = p.relative_entropy / scale;
  j["chernoff"] = p.chernoff / scale;
  j["chernoff_argmin_t"] = p.chernoff_argmin_t;
  j["eta"] = p.eta;
  j["variance"] = p.variance / (scale * scale);
  return j;
}

struct StatePair {
  std::string rho;
  std::string sigma;
};

inline void add_state_options(CLI::App* sub, StatePair& files) {
  sub->add_option("--rho", files.rho, "state file for the null hypothesis")->required();
  sub->add_option("--sigma", files.sigma, "state file for the alternative hypothesis")->required();
}

inline std::pair<DensityMatrix, DensityMatrix> load_pair(const StatePair& files, std::ostream& err) {
  std::vector<std::string> warnings;
  DensityMatrix rho = parse_state_file(files.rho, &warnings);
  DensityMatrix sigma = parse_state_file(files.sigma, &warnings);
  if (rho.dim() != sigma.dim()) {
    fail(ErrorCode::invalid_input, "states have different dimensions: " + std::to_string(rho.dim()) + " vs " +
                                       std::to_string(sigma.dim()));
  }
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  return {std::move(rho), std::move(sigma)};
}

inline bool tensor_feasible(std::size_t d, std::size_t n, std::size_t cap) {
  double total = 1.0;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(d);
  return total <= static_cast<double>(cap);
}

inline void emit(const std::string& content, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << content;
  } else {
    write_file(output, content);
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-n error bounds and exact oracles for binary quantum state discrimination", "qdisc"};
  app.require_subcommand(1);
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--threads", threads, "worker threads for sweeps over n")->check(CLI::PositiveNumber);

  StatePair files;
  std::string output;
  bool bits = false;
  std::string psi_csv = "psi_curve.csv";
  double t_min = -1.0;
  double t_max = 2.0;
  std::size_t t_points = 301;
  double eps = 0.1;
  double r = 0.0;
  double a = 0.0;
  double p = 0.0;
  double q = 0.0;
  std::size_t n_max = 10;
  std::size_t n = 1;
  std::size_t exact_max_dim = 256;
  std::size_t max_dim = kDefaultDimCap;
  std::string variant = "as_derived";

  auto* div = app.add_subcommand("divergences", "divergence profile (JSON) and psi curve (CSV file)");
  add_state_options(div, files);
  div->add_flag("--bits", bits, "report entropic quantities in bits");
  div->add_option("--psi-csv", psi_csv, "psi curve CSV path (t, psi, psi', psi'')");
  div->add_option("--t-min", t_min, "psi grid start");
  div->add_option("--t-max", t_max, "psi grid end");
  div->add_option("--t-points", t_points, "psi grid size")->check(CLI::Range(2, 1000000));

  auto* stein = app.add_subcommand("stein", "Stein-regime bounds on (1/n) log beta_{n,eps}");
  add_state_options(stein, files);
  stein->add_option("--eps", eps, "type-I error level in (0, 1)")->required();
  stein->add_option("--n-max", n_max, "largest n")->required()->check(CLI::PositiveNumber);
  stein->add_option("--variant", variant, "as_derived or as_printed")
      ->check(CLI::IsMember({"as_derived", "as_printed"}));
  stein->add_option("--exact-max-dim", exact_max_dim, "largest d^n for the exact oracle");
  stein->add_option("--output", output, "write CSV here instead of stdout");

  auto* hoeff = app.add_subcommand("hoeffding", "Hoeffding-regime upper bound on (1/n) log beta_{n,e^{-nr}}");
  add_state_options(hoeff, files);
  hoeff->add_option("--r", r, "type-I error exponent")->required();
  hoeff->add_option("--n-max", n_max, "largest n")->required()->check(CLI::PositiveNumber);
  hoeff->add_option("--output", output, "write CSV here instead of stdout");

  auto* chern = app.add_subcommand("chernoff", "bounds on (1/n) log e_n(0)");
  add_state_options(chern, files);
  chern->add_option("--n-max", n_max, "largest n")->required()->check(CLI::PositiveNumber);
  chern->add_option("--exact-max-dim", exact_max_dim, "largest d^n for the exact oracle");
  chern->add_option("--output", output, "write CSV here instead of stdout");

  auto* bin = app.add_subcommand("binary", "binary classical error rate curve");
  bin->add_option("--p", p, "first distribution (p, 1-p)")->required();
  bin->add_option("--q", q, "second distribution (q, 1-q)")->required();
  bin->add_option("--a", a, "Neyman-Pearson threshold")->required();
  bin->add_option("--n-max", n_max, "largest n")->required()->check(CLI::Range(2, 1000000));
  bin->add_option("--output", output, "write CSV here instead of stdout");

  auto* oracle = app.add_subcommand("oracle", "exact mixed error and NP test errors");
  add_state_options(oracle, files);
  oracle->add_option("--n", n, "number of copies")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--a", a, "Neyman-Pearson threshold")->required();
  oracle->add_option("--max-dim", max_dim, "largest d^n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (div->parsed()) {
      const auto [rho, sigma] = load_pair(files, err);
      const PsiCurve c = PsiCurve::from_states(rho, sigma);
      Json j = report_json(divergence_profile(c), bits ? std::numbers::ln2 : 1.0);
      j["units"] = bits ? "bits" : "nats";
      j["orthogonal_supports"] = c.orthogonal_supports();
      j["support_contained"] = c.support_contained();
      j["psi_csv"] = output_path(psi_csv).string();
      std::string csv = "t,psi,psi_prime,psi_second\n";
      for (std::size_t i = 0; i < t_points; ++i) {
        const double t = i + 1 == t_points
                             ? t_max
                             : t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(t_points - 1);
        if (c.orthogonal_supports()) {
          csv += format_double(t) + "," + format_double(-kInf) + ",,\n";
          continue;
        }
        const auto m = c.moments(t);
        csv += format_double(t) + "," + format_double(m.psi) + "," + format_double(m.mean) + "," +
               format_double(m.variance) + "\n";
      }
      write_file(psi_csv, csv);
      out << j.dump(2) << '\n';
      return 0;
    }
    if (stein->parsed()) {
      const auto [rho, sigma] = load_pair(files, err);
      const PsiCurve c = PsiCurve::from_states(rho, sigma);
      const SteinVariant v = variant == "as_printed" ? SteinVariant::as_printed : SteinVariant::as_derived;
      auto rows = parallel_rows(n_max, threads, [&](std::size_t i) {
        const std::size_t k = i + 1;
        const BoundReport lo = stein_lower(c, k, eps, v);
        const BoundReport up = stein_upper(c, k, eps, v);
        const bool feasible = tensor_feasible(rho.dim(), k, exact_max_dim);
        double exact = kNaN;
        if (feasible) exact = std::log(beta_eps_exact(TensorPowers(rho, sigma, k), eps)) / static_cast<double>(k);
        const BoundReport ref = second_order_reference(c, k, eps);
        return std::to_string(k) + "," + format_double(lo.value) + "," + format_double(up.value) + "," +
               csv_field(exact, feasible) + "," + csv_field(ref.value, ref.valid) + "\n";
      });
      std::string csv = "n,lower,upper,exact,second_order_ref\n";
      for (const auto& row : rows) csv += row;
      emit(csv, output, out);
      return 0;
    }
    if (hoeff->parsed()) {
      const auto [rho, sigma] = load_pair(files, err);
      const PsiCurve c = PsiCurve::from_states(rho, sigma);
      std::string csv = "n,upper,t_r,H_r\n";
      for (std::size_t k = 1; k <= n_max; ++k) {
        const BoundReport rep = hoeffding_upper(c, k, r);
        if (!rep.valid) fail(ErrorCode::out_of_range, "hoeffding: " + rep.reason);
        csv += std::to_string(k) + "," + format_double(rep.value) + "," + format_double(rep.parameter("t_r")) +
               "," + format_double(rep.parameter("hoeffding")) + "\n";
      }
      emit(csv, output, out);
      return 0;
    }
    if (chern->parsed()) {
      const auto [rho, sigma] = load_pair(files, err);
      const PsiCurve c = PsiCurve::from_states(rho, sigma);
      auto rows = parallel_rows(n_max, threads, [&](std::size_t i) {
        const std::size_t k = i + 1;
        const MixedUpper up = mixed_upper(c, k, 0.0);
        const BoundReport lo = quantum_chernoff_lower(rho, sigma, k);
        const bool feasible = tensor_feasible(rho.dim(), k, exact_max_dim);
        double exact = kNaN;
        if (feasible) {
          exact = std::log(quantum_mixed_error_exact(TensorPowers(rho, sigma, k), 0.0)) / static_cast<double>(k);
        }
        return std::to_string(k) + "," + format_double(up.mixed.value) + "," + csv_field(lo.value, lo.valid) +
               "," + csv_field(exact, feasible) + "\n";
      });
      std::string csv = "n,mixed_upper_rate,mixed_lower_rate,exact_rate\n";
      for (const auto& row : rows) csv += row;
      emit(csv, output, out);
      return 0;
    }
    if (bin->parsed()) {
      const BinaryPair bp = BinaryPair::make(p, q);
      emit(rate_curve_csv(rate_curve(bp, a, n_max)), output, out);
      return 0;
    }
    if (oracle->parsed()) {
      const auto [rho, sigma] = load_pair(files, err);
      const TensorPowers tp(rho, sigma, n, max_dim);
      const NPTestErrors np = np_test_errors(tp, a);
      Json j;
      j["n"] = n;
      j["a"] = a;
      j["e_n"] = quantum_mixed_error_exact(tp, a);
      j["alpha"] = np.alpha;
      j["beta"] = np.beta;
      j["degenerate_kernel"] = np.degenerate_kernel;
      out << j.dump(2) << '\n';
      return 0;
    }
  } catch (const Error& e) {
    err << "error[" << code_name(e.code()) << "]: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("qdisc");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qdisc::cli

#endif  // QDISC_CLI_HPP
