// Command-line harness around the ssal library: instance generation,
// solving, the brute-force oracle, projection cross-checks and small
// benchmark sweeps with CSV/JSON output.
//
// Exit codes: 0 success/converged, 1 error, 2 not converged, 3 check failure.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssal/json_io.hpp"
#include "ssal/oracle.hpp"
#include "ssal/problems.hpp"
#include "ssal/rng.hpp"
#include "ssal/semiproj.hpp"
#include "ssal/solver.hpp"

namespace {

enum class LogLevel { kOff, kInfo, kTrace };

LogLevel log_level() {
  const char* env = std::getenv("SSAL_LOG");
  if (!env) return LogLevel::kInfo;
  const std::string v(env);
  if (v == "off") return LogLevel::kOff;
  if (v == "trace") return LogLevel::kTrace;
  return LogLevel::kInfo;
}

void log_info(const std::string& msg) {
  if (log_level() != LogLevel::kOff) std::cerr << "[ssal] " << msg << "\n";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void append_csv_row(const std::string& path, const std::string& header,
                    const std::string& row) {
  const bool fresh = !std::filesystem::exists(path) ||
                     std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open CSV file " + path);
  if (fresh) out << header << "\n";
  out << row << "\n";
}

struct SolveOverrides {
  std::optional<double> rho, omega, epsilon;
  std::optional<int> max_outer;
};

ssal::SolverParams make_params(const ssal::ProblemSpec& spec,
                               const SolveOverrides& ov) {
  ssal::SolverParams params = ssal::SolverParams::defaults_for(spec);
  if (ov.rho) params.rho = *ov.rho;
  if (ov.omega) params.omega = *ov.omega;
  if (ov.epsilon) params.epsilon = *ov.epsilon;
  if (ov.max_outer) params.max_outer = *ov.max_outer;
  if (log_level() == LogLevel::kTrace)
    params.on_iterate = [](const ssal::IterateState& s) {
      std::cerr << "[ssal]   k=" << s.k << " residual=" << s.primal_residual
                << "\n";
    };
  return params;
}

constexpr const char* kSolveCsvHeader =
    "instance_id,n,K,rho,omega,epsilon,iterations,converged,objective_x,"
    "objective_polished,primal_residual,stationarity_residual,wall_time_s,mse";

int cmd_gen(const std::string& family, int n, int p, int m, int K,
            double sigma2, std::uint64_t seed, bool with_risk,
            const std::string& out) {
  ssal::InstanceFile file;
  if (family == "portfolio") {
    ssal::PortfolioParams params;
    params.K = K;
    params.with_risk = with_risk;
    auto inst = ssal::gen_portfolio(n, m, seed, params);
    file.spec = std::move(inst.spec);
    file.id = "portfolio-n" + std::to_string(n) + "-m" + std::to_string(m) +
              "-K" + std::to_string(K) + "-seed" + std::to_string(seed);
  } else {
    auto inst = ssal::gen_cs(p, n, K, sigma2, seed);
    file.spec = std::move(inst.spec);
    file.f_true = std::move(inst.f_true);
    file.noise_sigma2 = sigma2;
    file.id = "cs-p" + std::to_string(p) + "-n" + std::to_string(n) + "-K" +
              std::to_string(K) + "-seed" + std::to_string(seed);
  }
  ssal::save_instance(file, out);
  log_info("wrote instance " + file.id + " to " + out);
  return 0;
}

int cmd_solve(const std::string& instance_path, const std::string& out,
              const std::string& csv, const SolveOverrides& ov) {
  const ssal::InstanceFile inst = ssal::load_instance(instance_path);
  const std::string id =
      inst.id.empty()
          ? std::filesystem::path(instance_path).stem().string()
          : inst.id;
  const ssal::SolverParams params = make_params(inst.spec, ov);
  const ssal::SolveReport report = ssal::solve(inst.spec, params);

  double mse_value = std::numeric_limits<double>::quiet_NaN();
  if (inst.f_true) mse_value = ssal::mse(*inst.f_true, report.x_polished);

  if (!out.empty()) {
    nlohmann::json doc = nlohmann::json::parse(ssal::report_to_json(report));
    doc["instance_id"] = id;
    doc["params"] = {{"rho", params.rho},
                     {"omega", params.omega},
                     {"epsilon", params.epsilon},
                     {"max_outer", params.max_outer}};
    if (inst.f_true) doc["mse"] = mse_value;
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot write " + out);
    os << doc.dump(2) << "\n";
  }

  std::string row = id + "," + std::to_string(inst.spec.n) + "," +
                    std::to_string(inst.spec.y_set.K) + "," +
                    format_double(params.rho) + "," +
                    format_double(params.omega) + "," +
                    format_double(params.epsilon) + "," +
                    std::to_string(report.outer_iterations) + "," +
                    (report.converged ? "true" : "false") + "," +
                    format_double(report.objective_x) + "," +
                    format_double(report.objective_polished) + "," +
                    format_double(report.primal_residual_final) + "," +
                    format_double(report.stationarity_residual) + "," +
                    format_double(report.wall_time_s) + "," +
                    format_double(mse_value);
  append_csv_row(csv, kSolveCsvHeader, row);

  log_info("solved " + id + ": " +
           (report.converged ? "converged" : "NOT converged") + " in " +
           std::to_string(report.outer_iterations) + " outer iterations");
  return report.converged ? 0 : 2;
}

int cmd_oracle(const std::string& instance_path, const std::string& out) {
  const ssal::InstanceFile inst = ssal::load_instance(instance_path);
  const ssal::OracleResult result = ssal::global_solve(inst.spec);
  if (!out.empty()) {
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot write " + out);
    os << ssal::oracle_to_json(result) << "\n";
  } else {
    std::cout << ssal::oracle_to_json(result) << "\n";
  }
  log_info("oracle objective " + format_double(result.objective) + " over " +
           std::to_string(result.supports_examined) + " supports");
  return 0;
}

int cmd_check(int n, int K, int repeat, std::uint64_t seed,
              bool inject_mismatch) {
  if (n > ssal::kOracleDimensionCap) {
    std::cerr << "check: n=" << n << " exceeds the oracle cap of "
              << ssal::kOracleDimensionCap << "\n";
    return 1;
  }

  // Projection route vs enumeration route; any mismatch beyond 1e-10 fails.
  std::printf("projection check: n=%d K=%d repeat=%d\n", n, K, repeat);
  std::printf("%8s %22s %22s %12s\n", "seed", "projection", "oracle", "delta");
  bool mismatch = false;
  for (int s = 0; s < repeat; ++s) {
    ssal::CounterRng rng(seed + s);
    ssal::Vector w(n);
    for (int i = 0; i < n; ++i) w[i] = rng.gaussian();
    ssal::SemicontinuousSet Y{ssal::Vector::Constant(n, 0.1),
                              ssal::Vector::Ones(n), K};
    const auto proj = ssal::project_semicard(w, Y);
    double proj_obj = 0.5 * (proj.y - w).squaredNorm();
    if (inject_mismatch && s == 0) proj_obj += 1e-6;

    ssal::ProblemSpec spec;
    spec.n = n;
    spec.objective = ssal::LeastSquares{ssal::Matrix::Identity(n, n), w};
    spec.y_set = Y;
    const auto oracle = ssal::global_solve(spec);
    const double delta = proj_obj - oracle.objective;
    std::printf("%8d %22.15e %22.15e %12.3e\n", s, proj_obj, oracle.objective,
                delta);
    if (std::abs(delta) > 1e-10) mismatch = true;
  }
  if (mismatch) {
    std::printf("projection check FAILED\n");
    return 3;
  }
  std::printf("projection check OK (%d/%d)\n", repeat, repeat);

  // Solver-vs-oracle gaps are informational and never gate the exit code.
  const int gap_runs = std::min(repeat, 20);
  std::printf("\nsolver gap report (%d instances):\n", gap_runs);
  std::printf("%8s %22s %22s %12s\n", "seed", "oracle", "polished", "rel gap");
  for (int s = 0; s < gap_runs; ++s) {
    const auto inst = ssal::gen_cs(6, 10, 3, 0.01, seed + 100 + s);
    const auto params = ssal::SolverParams::defaults_for(inst.spec);
    const auto report = ssal::solve(inst.spec, params);
    const auto oracle = ssal::global_solve(inst.spec);
    const double gap = (report.objective_polished - oracle.objective) /
                       std::max(std::abs(oracle.objective), 1e-12);
    std::printf("%8d %22.15e %22.15e %12.3e\n", s, oracle.objective,
                report.objective_polished, gap);
  }
  return 0;
}

constexpr const char* kBenchCsvHeader =
    "row,family,n,p,m,K,seed,status,converged,iterations,wall_time_s,"
    "objective_polished,mse_ssal,mse_baseline,iter_min,iter_max,iter_mean,"
    "time_min_s,time_max_s,time_mean_s,mse_ssal_mean,mse_baseline_mean";

int cmd_bench(const std::string& family, int n, int p, int m, int K,
              double sigma2, std::uint64_t seed, int repeat, int jobs,
              bool with_risk, const std::string& out,
              const SolveOverrides& ov) {
  struct Row {
    bool ok = false;
    std::string error;
    bool converged = false;
    int iterations = 0;
    double wall_time_s = 0.0;
    double objective_polished = 0.0;
    double mse_ssal = std::numeric_limits<double>::quiet_NaN();
    double mse_baseline = std::numeric_limits<double>::quiet_NaN();
  };
  std::vector<Row> rows(repeat);

  const auto run_one = [&](int idx) {
    Row& row = rows[idx];
    try {
      if (family == "portfolio") {
        ssal::PortfolioParams params;
        params.K = K;
        params.with_risk = with_risk;
        const auto inst = ssal::gen_portfolio(n, m, seed + idx, params);
        const auto report =
            ssal::solve(inst.spec, make_params(inst.spec, ov));
        row.converged = report.converged;
        row.iterations = report.outer_iterations;
        row.wall_time_s = report.wall_time_s;
        row.objective_polished = report.objective_polished;
      } else {
        const auto inst = ssal::gen_cs(p, n, K, sigma2, seed + idx);
        const auto report =
            ssal::solve(inst.spec, make_params(inst.spec, ov));
        row.converged = report.converged;
        row.iterations = report.outer_iterations;
        row.wall_time_s = report.wall_time_s;
        row.objective_polished = report.objective_polished;
        row.mse_ssal = ssal::mse(inst.f_true, report.x_polished);
        row.mse_baseline =
            ssal::mse(inst.f_true, ssal::baseline_hard_threshold(inst));
      }
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  const int workers = std::max(1, std::min(jobs, repeat));
  if (workers == 1) {
    for (int i = 0; i < repeat; ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int wkr = 0; wkr < workers; ++wkr)
      pool.emplace_back([&, wkr] {
        for (int i = wkr; i < repeat; i += workers) run_one(i);
      });
    for (auto& th : pool) th.join();
  }

  const std::string prefix = family + "," + std::to_string(n) + "," +
                             (family == "cs" ? std::to_string(p) : "") + "," +
                             (family == "portfolio" ? std::to_string(m) : "") +
                             "," + std::to_string(K);
  int failures = 0;
  double iter_min = std::numeric_limits<double>::infinity(), iter_max = 0,
         iter_sum = 0;
  double t_min = std::numeric_limits<double>::infinity(), t_max = 0, t_sum = 0;
  double mse_ssal_sum = 0, mse_base_sum = 0;
  int ok_count = 0, mse_count = 0;
  for (int i = 0; i < repeat; ++i) {
    const Row& row = rows[i];
    std::string line = "instance," + prefix + "," +
                       std::to_string(seed + i) + "," +
                       (row.ok ? "ok" : "error") + ",";
    if (row.ok) {
      line += std::string(row.converged ? "true" : "false") + "," +
              std::to_string(row.iterations) + "," +
              format_double(row.wall_time_s) + "," +
              format_double(row.objective_polished) + "," +
              format_double(row.mse_ssal) + "," +
              format_double(row.mse_baseline);
      iter_min = std::min(iter_min, double(row.iterations));
      iter_max = std::max(iter_max, double(row.iterations));
      iter_sum += row.iterations;
      t_min = std::min(t_min, row.wall_time_s);
      t_max = std::max(t_max, row.wall_time_s);
      t_sum += row.wall_time_s;
      ++ok_count;
      if (!std::isnan(row.mse_ssal)) {
        mse_ssal_sum += row.mse_ssal;
        mse_base_sum += row.mse_baseline;
        ++mse_count;
      }
    } else {
      ++failures;
      line += ",,,,,";
      log_info("instance seed " + std::to_string(seed + i) +
               " failed: " + row.error);
    }
    line += ",,,,,,,,";  // summary columns stay empty on instance rows
    append_csv_row(out, kBenchCsvHeader, line);
  }

  std::string summary = "summary," + prefix + ",," +
                        (failures == 0 ? std::string("ok")
                                       : std::to_string(failures) + " failed") +
                        ",,,,,,,";
  if (ok_count > 0) {
    summary += format_double(iter_min) + "," + format_double(iter_max) + "," +
               format_double(iter_sum / ok_count) + "," +
               format_double(t_min) + "," + format_double(t_max) + "," +
               format_double(t_sum / ok_count) + ",";
    if (mse_count > 0)
      summary += format_double(mse_ssal_sum / mse_count) + "," +
                 format_double(mse_base_sum / mse_count);
    else
      summary += ",";
  } else {
    summary += ",,,,,,,";
  }
  append_csv_row(out, kBenchCsvHeader, summary);
  log_info("bench finished: " + std::to_string(ok_count) + "/" +
           std::to_string(repeat) + " instances ok, results in " + out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SSAL: splitting solver for convex programs with cardinality "
               "and semicontinuous constraints"};
  app.require_subcommand(1);

  std::string family = "portfolio";
  std::string instance_path, out_path, csv_path = "ssal_results.csv";
  int n = 100, p = 64, m = 10, K = 10, repeat = 10, jobs = 1;
  double sigma2 = 0.01;
  std::uint64_t seed = 1;
  bool with_risk = false, inject_mismatch = false;
  SolveOverrides ov;
  double rho = 0, omega = 0, epsilon = 0;
  int max_outer = 0;

  auto* gen = app.add_subcommand("gen", "generate an instance JSON file");
  gen->add_option("family", family, "portfolio or cs")
      ->required()
      ->check(CLI::IsMember({"portfolio", "cs"}));
  gen->add_option("--n", n, "dimension");
  gen->add_option("--p", p, "observation count (cs)");
  gen->add_option("--m", m, "factor count (portfolio)");
  gen->add_option("--K", K, "cardinality budget");
  gen->add_option("--sigma2", sigma2, "noise variance (cs)");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_flag("--with-risk", with_risk, "include the quadratic risk block");
  gen->add_option("--out", out_path, "output path")->required();

  auto* solve = app.add_subcommand("solve", "run the splitting solver");
  solve->add_option("--instance", instance_path, "instance JSON")->required();
  solve->add_option("--out", out_path, "report JSON path");
  solve->add_option("--csv", csv_path, "CSV file to append one row to");
  auto* orho = solve->add_option("--rho", rho, "penalty parameter");
  auto* oomega = solve->add_option("--omega", omega, "multiplier step size");
  auto* oeps = solve->add_option("--epsilon", epsilon, "stopping threshold");
  auto* omax = solve->add_option("--max-outer", max_outer, "iteration cap");

  auto* oracle = app.add_subcommand("oracle", "exhaustive global solve");
  oracle->add_option("--instance", instance_path, "instance JSON")->required();
  oracle->add_option("--out", out_path, "result JSON path");

  auto* check = app.add_subcommand(
      "check", "projection-vs-oracle and solver-vs-oracle cross checks");
  check->add_option("--n", n, "projection dimension")->default_val(8);
  check->add_option("--K", K, "cardinality budget")->default_val(3);
  check->add_option("--repeat", repeat, "number of seeds")->default_val(100);
  check->add_option("--seed", seed, "base seed");
  check->add_flag("--inject-mismatch", inject_mismatch,
                  "harness self-test: corrupt one value")
      ->group("");  // hidden

  auto* bench = app.add_subcommand("bench", "seeded benchmark sweep");
  bench->add_option("family", family, "portfolio or cs")
      ->required()
      ->check(CLI::IsMember({"portfolio", "cs"}));
  bench->add_option("--n", n, "dimension");
  bench->add_option("--p", p, "observation count (cs)");
  bench->add_option("--m", m, "factor count (portfolio)");
  bench->add_option("--K", K, "cardinality budget");
  bench->add_option("--sigma2", sigma2, "noise variance (cs)");
  bench->add_option("--seed", seed, "base seed");
  bench->add_option("--repeat", repeat, "number of seeded instances");
  bench->add_option("--jobs", jobs, "parallel workers");
  bench->add_flag("--with-risk", with_risk, "include the quadratic risk block");
  bench->add_option("--out", out_path, "summary CSV path")->required();
  auto* brho = bench->add_option("--rho", rho, "penalty parameter");
  auto* bomega = bench->add_option("--omega", omega, "multiplier step size");
  auto* beps = bench->add_option("--epsilon", epsilon, "stopping threshold");
  auto* bmax = bench->add_option("--max-outer", max_outer, "iteration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (orho->count() || brho->count()) ov.rho = rho;
  if (oomega->count() || bomega->count()) ov.omega = omega;
  if (oeps->count() || beps->count()) ov.epsilon = epsilon;
  if (omax->count() || bmax->count()) ov.max_outer = max_outer;

  try {
    if (gen->parsed())
      return cmd_gen(family, n, p, m, K, sigma2, seed, with_risk, out_path);
    if (solve->parsed()) return cmd_solve(instance_path, out_path, csv_path, ov);
    if (oracle->parsed()) return cmd_oracle(instance_path, out_path);
    if (check->parsed()) return cmd_check(n, K, repeat, seed, inject_mismatch);
    if (bench->parsed())
      return cmd_bench(family, n, p, m, K, sigma2, seed, repeat, jobs,
                       with_risk, out_path, ov);
  } catch (const ssal::SizeCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
