#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sparselocal/rng.hpp"

namespace sparselocal {

// One experiment run. Unset numeric fields (-1, or empty n_values) pick up
// the kind's default, which mirrors the reference protocol for that claim.
struct ExperimentSpec {
  std::string kind;            // cycles | surplus | nhood | path | tfa-ba |
                               // pcc-ba | truncated-ba | findh-bench | sentence-bench
  std::string model = "";     // er | ba (kinds that generate; default per kind)
  std::vector<int> n_values;   // single value or a sweep
  double d = -1.0;
  int r = -1;
  int k = -1;
  int m = -1;
  int p = -1;
  double q = -1.0;
  int steps = -1;              // tfa-ba rounds / pcc max rounds
  long long trials = -1;       // trials, seeds per point, or instances
  double epsilon = 0.01;
  std::uint64_t seed = 0;      // master seed
  std::string out;             // base path for <out>.csv and <out>.json; empty skips files
};

// Long-format row. Columns that do not apply to a kind stay at their
// defaults. The row's unit of work is reproducible as
// Seed{master}.stream(seed_index).
struct ReportRow {
  int n = 0;
  double d = 0.0;
  int r = 0;
  int k = 0;
  int m = 0;
  int p = 0;
  double q = 0.0;
  int s = 0;
  int step = 0;
  long long trial = 0;
  std::uint64_t seed_index = 0;
  std::string statistic;
  double value = 0.0;
};

struct ExperimentReport {
  nlohmann::json spec;      // normalized spec echo (defaults resolved)
  nlohmann::json versions;  // {"code": ..., "rng": ...}
  std::vector<ReportRow> rows;
  nlohmann::json summary;

  nlohmann::json to_json() const;
  void write_csv(std::ostream& out) const;
};

inline constexpr const char* kReportCsvHeader =
    "kind,n,d,r,k,m,p,q,s,step,trial,seed_index,statistic,value";

// Dispatches on spec.kind, resolves defaults, runs all trials (parallel over
// SPARSE_LOCAL_THREADS workers, deterministic aggregation), and writes
// <out>.csv and <out>.json when spec.out is set. Per-unit module errors are
// recorded as a "failed" row plus a summary entry; the run continues.
ExperimentReport run_experiment(const ExperimentSpec& spec);

void write_report_files(const ExperimentReport& report, const std::string& out_base);

// Average-rank Spearman correlation; NaN when either side is constant.
double spearman_rho(const std::vector<double>& xs, const std::vector<double>& ys);

struct SlopeFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
  double t_stat = 0.0;  // slope / stderr; 0 when the fit is exactly constant
};

// Ordinary least squares y = a + b x with the t statistic for b = 0.
SlopeFit ols_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace sparselocal
