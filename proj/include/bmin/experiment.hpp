#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bmin/dyadic.hpp"
#include "bmin/minimizer.hpp"
#include "bmin/rng.hpp"
#include "bmin/skeleton.hpp"

namespace bmin {

enum class Algorithm { adaptive, equidistant };

std::string_view to_string(Algorithm algorithm);

struct ExperimentPlan {
    std::vector<double> lambdas{1.0};
    std::vector<std::size_t> n_grid;
    double p = 2.0;
    std::size_t replications = 1000;
    std::uint64_t master_seed = 0;
    Algorithm algorithm = Algorithm::adaptive;
    unsigned level_cap = kDefaultLevelCap;

    /// Rejects empty or unsorted grids, p < 1, zero replications, lambda < 1,
    /// and adaptive grids containing n < 2.
    void validate() const;
};

/// Errors Delta_n = M_n - M of one replication, aligned with the plan's n_grid
/// (adaptive) or holding the single requested n (equidistant).
struct ErrorSample {
    std::size_t replication = 0;
    std::vector<double> deltas;
};

struct ErrorEstimate {
    Algorithm algorithm = Algorithm::adaptive;
    std::optional<double> lambda;  ///< unset for the equidistant baseline
    double p = 1.0;
    std::size_t n = 0;
    std::size_t replications = 0;  ///< samples that entered the estimate
    double lp_error = 0.0;         ///< (mean |Delta|^p)^(1/p)
    double std_pth_power = 0.0;    ///< sample std of |Delta|^p (0 for one sample)
    std::size_t dropped = 0;       ///< replications lost to the level cap
};

/// Delta-method standard error of lp_error.
double lp_standard_error(const ErrorEstimate& estimate);

/// Exact conditional draw of min_{[0,1]} f given the skeleton, from the
/// supplied per-gap uniforms in (0, 1] (one per interval, left to right).
double true_min_given_uniforms(const Skeleton& skeleton, std::span<const double> uniforms);

/// Same for values observed on the uniform grid {i * gap}.
double true_min_given_uniforms(std::span<const double> grid_values, double gap,
                               std::span<const double> uniforms);

/// Draws one uniform per gap from `stream` and returns the sampled minimum (<= M_n).
double sample_true_min(const Skeleton& skeleton, RngStream& stream);
double sample_true_min(std::span<const double> grid_values, double gap, RngStream& stream);

/// Adaptive run to max(n_grid) on a fresh Brownian path for replication r.
/// Propagates DepthExceeded.
ErrorSample run_replication(const ExperimentPlan& plan, double lambda, std::size_t replication);

/// Equidistant baseline with n evaluations at i/n for replication r.
ErrorSample run_equidistant(const ExperimentPlan& plan, std::size_t n, std::size_t replication);

/// L_p statistics of a set of errors. Throws on an empty sample or p < 1.
ErrorEstimate estimate_lp_error(std::span<const double> deltas, double p);

struct RatePoint {
    double n;
    double error;
};

/// Least-squares slope of ln(error) against ln(n).
double fit_rate(std::span<const RatePoint> points);

/// Sufficient lambda for L_p convergence order r: 144 (1 + p r).
double lambda_suggestion(double r, double p);

/// One row per (lambda, n) for adaptive plans, one per n for equidistant plans.
/// Output does not depend on `threads`.
std::vector<ErrorEstimate> run_experiment(const ExperimentPlan& plan, unsigned threads = 1);

/// Adaptive rows followed by equidistant rows for the same plan.
std::vector<ErrorEstimate> run_comparison(const ExperimentPlan& plan, unsigned threads = 1);

/// A single traced path, with M sampled once from the final skeleton.
struct PathTrace {
    std::vector<StepTrace> steps;
    double final_min = 0.0;   ///< M_n at the last step
    double undershoot = 0.0;  ///< final_min - true_min, >= 0
    double true_min = 0.0;

    /// Delta_n for every step, sharing the single sampled M.
    std::vector<double> deltas() const;
};

PathTrace trace_replication(const MinimizerConfig& config, std::uint64_t master_seed,
                            std::size_t replication = 0);

}  // namespace bmin
