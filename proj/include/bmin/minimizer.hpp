#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "bmin/dyadic.hpp"
#include "bmin/oracle.hpp"
#include "bmin/skeleton.hpp"

namespace bmin {

struct MinimizerConfig {
    double lambda = 1.0;  ///< offset scale, must be >= 1
    std::size_t max_steps = 2;  ///< evaluations after t0, must be >= 2
    unsigned level_cap = kDefaultLevelCap;

    /// Throws std::invalid_argument for lambda < 1 (or NaN), max_steps < 2, or level_cap == 0.
    void validate() const;
};

/**
 * Observation state after n evaluations.
 *
 * `rho` holds the split statistic of every interval for the current skeleton
 * (empty while n < 2). `fav_stat` is the running maximum of
 * |f(t_i) - f(t_{i-1})| / sqrt(t_i - t_{i-1}) over every interval the
 * algorithm has ever held, including [0, 1].
 */
struct MinimizerState {
    Skeleton skeleton;
    std::vector<double> rho;
    double fav_stat = 0.0;

    std::size_t n() const noexcept { return skeleton.evaluations(); }
    double min_value() const noexcept { return skeleton.min_value(); }
    unsigned tau_level() const noexcept { return skeleton.tau_level(); }
    double rho_max() const;
};

/// One record per evaluation, describing the state right after it.
struct StepTrace {
    std::size_t n = 0;
    std::size_t split_index = 0;  ///< 0-based interval that was bisected
    DyadicPoint new_site;
    double new_value = 0.0;
    double min_value = 0.0;
    unsigned tau_level = 0;
    double rho_max = 0.0;
    double undershoot_max = 0.0;
};

/// sqrt(lambda x ln(1/x)) for x in (0, 1].
double offset(double x, double lambda);

/// Split statistic of every interval; needs n >= 2 so that tau < 1.
std::vector<double> compute_rho(const Skeleton& skeleton, double lambda);

/// First index of the maximum (exact comparison, so ties go to the left).
std::size_t select_split(std::span<const double> rho);

/// exp(-2 / rho_i): conditional probability that interval i dips below M_n - g(tau_n).
std::vector<double> undershoot_probabilities(std::span<const double> rho);

/// Evaluates t1 = 1 and t2 = 1/2 and prepares rho.
MinimizerState start(PathOracle& oracle, const MinimizerConfig& config,
                     std::vector<StepTrace>* traces = nullptr);

/// One adaptive bisection. Needs state.n() >= 2.
StepTrace step(MinimizerState& state, PathOracle& oracle, const MinimizerConfig& config);

struct RunResult {
    MinimizerState state;
    std::vector<StepTrace> traces;  ///< steps 2..max_steps
};

using StepObserver = std::function<void(const MinimizerState&, const StepTrace&)>;

/// Runs the full algorithm for config.max_steps evaluations on a fresh oracle.
/// `observer`, if set, sees the state after every evaluation from n = 2 on.
RunResult run(PathOracle& oracle, const MinimizerConfig& config,
              const StepObserver& observer = {});

struct LemmaCheck {
    std::size_t n = 0;
    double fav_stat = 0.0;
    double fav_threshold = 0.0;   ///< sqrt(lambda ln(n) / 4)
    bool applicable = false;      ///< fav_stat <= fav_threshold
    double rho_max = 0.0;
    double rho_bound = 0.0;       ///< 2 / (lambda ln(1/tau_n))
    bool holds = true;            ///< rho_max <= rho_bound, or not applicable
};

/// Evaluates the favorable-path rho bound for the current state.
LemmaCheck check_lemma_rho(const MinimizerState& state, const MinimizerConfig& config);

/// Like check_lemma_rho but throws std::logic_error when the bound fails under its hypothesis.
LemmaCheck assert_lemma_rho(const MinimizerState& state, const MinimizerConfig& config);

}  // namespace bmin
