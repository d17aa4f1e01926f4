#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "girthlab/covariance.hpp"
#include "girthlab/environment.hpp"
#include "girthlab/graphs.hpp"
#include "girthlab/power_series.hpp"
#include "girthlab/stats.hpp"

namespace girthlab {

/// A test function in a campaign panel. `squared` means the functional is
/// evaluated for f(x^2) — the natural convention on bipartite graphs — so the
/// expanded series has even-degree coefficients only.
struct FunctionSpec {
  std::string name;
  PowerSeries series;
  bool squared = false;

  PowerSeries expanded() const { return squared ? series.compose_square() : series; }
};

struct ExperimentConfig {
  std::string graph_spec;          // e.g. "cycle n=200"
  std::string sampler_spec;        // e.g. "antisym", "permvec base=1,0,-1"
  std::vector<FunctionSpec> functions;
  std::int64_t samples = 0;        // N >= 2
  std::uint64_t master_seed = 1;
  std::vector<double> eps_list;    // optional m_eps sweep
  bool allow_ungated = false;      // override the girth gate (flagged in the result)
  bool tree_reference = false;     // also compare against infinite-tree references
  int threads = 0;                 // 0 = hardware / GIRTHLAB_THREADS
  bool keep_samples = false;       // retain raw per-sample values in the result
};

/// Monomial-degree gates implied by the girth. Degrees up to `cap` are
/// allowed in campaigns; up to `mean_exact` the trace functionals have
/// exactly zero mean and covariance given by the alpha form; up to
/// `tree_exact` per function (and summed degree girth-2 per pair) the alpha
/// values coincide with the infinite tree.
struct DegreeGates {
  int cap = 0;
  int mean_exact = 0;
  int tree_exact = 0;
  bool finite_girth = true;
};
DegreeGates degree_gates(int girth);

/// Thrown when a panel exceeds the girth gate and the override is off.
class GateError : public std::invalid_argument {
 public:
  GateError(const std::string& message, int required_girth)
      : std::invalid_argument(message), required_girth(required_girth) {}
  int required_girth = 0;
};

struct FunctionStats {
  std::string name;
  int degree = 0;            // degree of the expanded series
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;    // of the mean
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double ks_stat = 0.0;
  double ks_p = 0.0;
  bool degenerate = false;
  double max_abs = 0.0;
  double bound = 0.0;        // a priori c1^2 sqrt(n) ||f||_*
};

struct PairReference {
  int fi = 0;
  int fj = 0;
  std::string source;        // "h_form" or "tree"
  double empirical = 0.0;
  double reference = 0.0;
  double std_error = 0.0;    // jackknife
  double z = 0.0;
  bool gated = true;         // within the exactness gate for this source
  std::string note;
};

struct CriterionCheck {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct EpsSweep {
  std::string function;
  std::vector<double> eps;
  std::vector<double> mean_abs_gap;  // mean over samples of |m_eps - T|
  double slope = 0.0;                // log-log least squares
};

struct CampaignResult {
  std::string graph_id;
  std::string sampler_id;
  std::int64_t n_vertices = 0;
  int degree = 0;
  int girth = 0;
  DegreeGates gates;
  bool ungated = false;
  std::int64_t samples = 0;
  std::uint64_t master_seed = 0;

  std::vector<FunctionStats> stats;
  std::vector<std::vector<double>> covariance;     // across functions
  std::vector<std::vector<double>> covariance_se;  // jackknife
  std::vector<PairReference> references;
  std::vector<CriterionCheck> checks;              // zero-mean and reference matches
  std::vector<EpsSweep> eps_sweeps;
  std::vector<std::vector<double>> raw;            // per function, if kept
};

/// Runs N independent perturbation samples (seeds derived from (master, i)),
/// evaluates every panel function on each, and assembles statistics,
/// deterministic references and pass/fail checks. Deterministic bit-for-bit
/// for a fixed config, independent of the worker count.
CampaignResult run_campaign(const ExperimentConfig& cfg);

/// Standalone table form of the reference comparison, for externally
/// computed references: z = (empirical - reference)/jackknife SE.
PairReference compare_covariance(std::span<const double> xs, std::span<const double> ys,
                                 double reference, std::string source);

}  // namespace girthlab
