#include "bmin/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bmin/bridge.hpp"
#include "bmin/oracle.hpp"
#include "parallel.hpp"

namespace bmin {

std::string_view to_string(Algorithm algorithm) {
    return algorithm == Algorithm::adaptive ? "adaptive" : "equidistant";
}

void ExperimentPlan::validate() const {
    if (n_grid.empty()) throw std::invalid_argument("n_grid must not be empty");
    if (!std::is_sorted(n_grid.begin(), n_grid.end()) ||
        std::adjacent_find(n_grid.begin(), n_grid.end()) != n_grid.end()) {
        throw std::invalid_argument("n_grid must be strictly ascending");
    }
    const std::size_t smallest = algorithm == Algorithm::adaptive ? 2 : 1;
    if (n_grid.front() < smallest) {
        throw std::invalid_argument("n_grid entries must be at least " + std::to_string(smallest));
    }
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("p must be >= 1");
    if (replications == 0) throw std::invalid_argument("replications must be at least 1");
    if (algorithm == Algorithm::adaptive) {
        if (lambdas.empty()) throw std::invalid_argument("at least one lambda is required");
        for (double lambda : lambdas) {
            if (!(lambda >= 1.0) || !std::isfinite(lambda)) {
                throw std::invalid_argument("lambda must be >= 1, got " + std::to_string(lambda));
            }
        }
    }
    if (level_cap == 0) throw std::invalid_argument("level_cap must be positive");
}

double lp_standard_error(const ErrorEstimate& e) {
    if (e.replications == 0 || e.lp_error == 0.0) return 0.0;
    const double moment = std::pow(e.lp_error, e.p);
    const double se_moment = e.std_pth_power / std::sqrt(static_cast<double>(e.replications));
    return std::pow(moment, 1.0 / e.p - 1.0) * se_moment / e.p;
}

namespace {

// D = M_n - M for per-gap uniforms, computed without subtracting nearby
// absolute values: each gap contributes its undershoot below its own lower
// endpoint minus that endpoint's height above M_n.
template <typename ValueAt, typename GapAt, typename UniformAt>
double min_undershoot(std::size_t intervals, ValueAt value_at, GapAt gap_at, UniformAt uniform_at) {
    if (intervals == 0) throw std::invalid_argument("the skeleton has no intervals");
    double m_n = value_at(0);
    for (std::size_t i = 1; i <= intervals; ++i) m_n = std::min(m_n, value_at(i));
    double undershoot = 0.0;
    for (std::size_t i = 0; i < intervals; ++i) {
        const BridgeSegment seg{value_at(i), value_at(i + 1), gap_at(i)};
        const double below = bridge_min_undershoot(seg, uniform_at(i));
        undershoot = std::max(undershoot, below - (std::min(seg.a, seg.b) - m_n));
    }
    return undershoot;
}

double skeleton_undershoot(const Skeleton& sk, RngStream& stream) {
    return min_undershoot(
        sk.intervals(), [&](std::size_t i) { return sk[i].value; },
        [&](std::size_t i) { return sk.gap(i); },
        [&](std::size_t) { return stream.uniform_open_closed(); });
}

double grid_undershoot(std::span<const double> values, double gap, RngStream& stream) {
    if (values.size() < 2) throw std::invalid_argument("the grid needs at least two values");
    return min_undershoot(
        values.size() - 1, [&](std::size_t i) { return values[i]; },
        [&](std::size_t) { return gap; },
        [&](std::size_t) { return stream.uniform_open_closed(); });
}

void check_uniform_count(std::size_t intervals, std::span<const double> uniforms) {
    if (uniforms.size() != intervals) {
        throw std::invalid_argument("expected one uniform per interval (" +
                                    std::to_string(intervals) + "), got " +
                                    std::to_string(uniforms.size()));
    }
}

BrownianOracle adaptive_path(std::uint64_t seed, std::size_t replication) {
    return BrownianOracle(RngStream(seed, stream_index(StreamPurpose::adaptive_path, replication)));
}

RngStream adaptive_min_stream(std::uint64_t seed, std::size_t replication) {
    return RngStream(seed, stream_index(StreamPurpose::adaptive_min, replication));
}

}  // namespace

double true_min_given_uniforms(const Skeleton& sk, std::span<const double> uniforms) {
    check_uniform_count(sk.intervals(), uniforms);
    const double d = min_undershoot(
        sk.intervals(), [&](std::size_t i) { return sk[i].value; },
        [&](std::size_t i) { return sk.gap(i); }, [&](std::size_t i) { return uniforms[i]; });
    return sk.min_value() - d;
}

double true_min_given_uniforms(std::span<const double> grid_values, double gap,
                               std::span<const double> uniforms) {
    if (grid_values.size() < 2) throw std::invalid_argument("the grid needs at least two values");
    check_uniform_count(grid_values.size() - 1, uniforms);
    const double d = min_undershoot(
        grid_values.size() - 1, [&](std::size_t i) { return grid_values[i]; },
        [&](std::size_t) { return gap; }, [&](std::size_t i) { return uniforms[i]; });
    return *std::min_element(grid_values.begin(), grid_values.end()) - d;
}

double sample_true_min(const Skeleton& sk, RngStream& stream) {
    return sk.min_value() - skeleton_undershoot(sk, stream);
}

double sample_true_min(std::span<const double> grid_values, double gap, RngStream& stream) {
    const double d = grid_undershoot(grid_values, gap, stream);
    return *std::min_element(grid_values.begin(), grid_values.end()) - d;
}

ErrorSample run_replication(const ExperimentPlan& plan, double lambda, std::size_t replication) {
    plan.validate();
    MinimizerConfig config{lambda, plan.n_grid.back(), plan.level_cap};
    config.validate();

    std::vector<double> minima;
    minima.reserve(plan.n_grid.size());
    auto next = plan.n_grid.begin();
    BrownianOracle oracle = adaptive_path(plan.master_seed, replication);
    const RunResult result =
        run(oracle, config, [&](const MinimizerState& state, const StepTrace&) {
            if (next != plan.n_grid.end() && state.n() == *next) {
                minima.push_back(state.min_value());
                ++next;
            }
        });

    RngStream min_stream = adaptive_min_stream(plan.master_seed, replication);
    const double final_min = result.state.min_value();
    const double undershoot = skeleton_undershoot(result.state.skeleton, min_stream);

    ErrorSample sample{replication, {}};
    sample.deltas.reserve(minima.size());
    for (double m : minima) sample.deltas.push_back((m - final_min) + undershoot);
    return sample;
}

ErrorSample run_equidistant(const ExperimentPlan& plan, std::size_t n, std::size_t replication) {
    if (n < 1) throw std::invalid_argument("the equidistant baseline needs n >= 1");
    RngStream path(plan.master_seed, stream_index(StreamPurpose::equidistant_path, replication));
    RngStream min_stream(plan.master_seed,
                         stream_index(StreamPurpose::equidistant_min, replication));
    const double gap = 1.0 / static_cast<double>(n);
    const double scale = std::sqrt(gap);
    std::vector<double> values(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) values[i] = values[i - 1] + scale * path.gaussian();
    return ErrorSample{replication, {grid_undershoot(values, gap, min_stream)}};
}

ErrorEstimate estimate_lp_error(std::span<const double> deltas, double p) {
    if (deltas.empty()) throw std::invalid_argument("estimate_lp_error needs at least one sample");
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("p must be >= 1");
    const double count = static_cast<double>(deltas.size());
    double mean = 0.0;
    for (double d : deltas) mean += std::pow(std::abs(d), p);
    mean /= count;
    double ss = 0.0;
    for (double d : deltas) {
        const double dev = std::pow(std::abs(d), p) - mean;
        ss += dev * dev;
    }
    ErrorEstimate e;
    e.p = p;
    e.replications = deltas.size();
    e.lp_error = std::pow(mean, 1.0 / p);
    e.std_pth_power = deltas.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
    return e;
}

double fit_rate(std::span<const RatePoint> points) {
    if (points.size() < 2) throw std::invalid_argument("fit_rate needs at least two points");
    double sx = 0.0, sy = 0.0;
    for (const auto& pt : points) {
        if (!(pt.n > 0.0) || !(pt.error > 0.0)) {
            throw std::invalid_argument("fit_rate needs positive n and error values");
        }
        sx += std::log(pt.n);
        sy += std::log(pt.error);
    }
    const double k = static_cast<double>(points.size());
    const double mx = sx / k, my = sy / k;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& pt : points) {
        const double dx = std::log(pt.n) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(pt.error) - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_rate needs at least two distinct n");
    return sxy / sxx;
}

double lambda_suggestion(double r, double p) {
    if (!(r >= 1.0) || !(p >= 1.0)) throw std::invalid_argument("r and p must be >= 1");
    return 144.0 * (1.0 + p * r);
}

namespace {

ErrorEstimate summarize(std::span<const double> deltas, double p) {
    if (deltas.empty()) {
        ErrorEstimate e;
        e.p = p;
        e.lp_error = std::numeric_limits<double>::quiet_NaN();
        e.std_pth_power = std::numeric_limits<double>::quiet_NaN();
        return e;
    }
    return estimate_lp_error(deltas, p);
}

void append_adaptive(const ExperimentPlan& plan, unsigned threads,
                     std::vector<ErrorEstimate>& rows) {
    for (double lambda : plan.lambdas) {
        std::vector<std::optional<ErrorSample>> samples(plan.replications);
        detail::parallel_for(plan.replications, threads, [&](std::size_t r) {
            try {
                samples[r] = run_replication(plan, lambda, r);
            } catch (const DepthExceeded&) {
                samples[r].reset();
            }
        });
        const auto dropped = static_cast<std::size_t>(
            std::count(samples.begin(), samples.end(), std::nullopt));
        for (std::size_t k = 0; k < plan.n_grid.size(); ++k) {
            std::vector<double> deltas;
            deltas.reserve(plan.replications);
            for (const auto& s : samples) {
                if (s) deltas.push_back(s->deltas[k]);
            }
            ErrorEstimate e = summarize(deltas, plan.p);
            e.algorithm = Algorithm::adaptive;
            e.lambda = lambda;
            e.n = plan.n_grid[k];
            e.dropped = dropped;
            rows.push_back(e);
        }
    }
}

void append_equidistant(const ExperimentPlan& plan, unsigned threads,
                        std::vector<ErrorEstimate>& rows) {
    for (std::size_t n : plan.n_grid) {
        std::vector<double> deltas(plan.replications);
        detail::parallel_for(plan.replications, threads, [&](std::size_t r) {
            deltas[r] = run_equidistant(plan, n, r).deltas.front();
        });
        ErrorEstimate e = estimate_lp_error(deltas, plan.p);
        e.algorithm = Algorithm::equidistant;
        e.n = n;
        rows.push_back(e);
    }
}

}  // namespace

std::vector<ErrorEstimate> run_experiment(const ExperimentPlan& plan, unsigned threads) {
    plan.validate();
    std::vector<ErrorEstimate> rows;
    if (plan.algorithm == Algorithm::adaptive) {
        append_adaptive(plan, threads, rows);
    } else {
        append_equidistant(plan, threads, rows);
    }
    return rows;
}

std::vector<ErrorEstimate> run_comparison(const ExperimentPlan& plan, unsigned threads) {
    ExperimentPlan adaptive = plan;
    adaptive.algorithm = Algorithm::adaptive;
    ExperimentPlan equidistant = plan;
    equidistant.algorithm = Algorithm::equidistant;
    auto rows = run_experiment(adaptive, threads);
    auto baseline = run_experiment(equidistant, threads);
    rows.insert(rows.end(), baseline.begin(), baseline.end());
    return rows;
}

PathTrace trace_replication(const MinimizerConfig& config, std::uint64_t master_seed,
                            std::size_t replication) {
    config.validate();
    BrownianOracle oracle = adaptive_path(master_seed, replication);
    RunResult result = run(oracle, config);
    RngStream min_stream = adaptive_min_stream(master_seed, replication);
    PathTrace trace;
    trace.final_min = result.state.min_value();
    trace.undershoot = skeleton_undershoot(result.state.skeleton, min_stream);
    trace.true_min = trace.final_min - trace.undershoot;
    trace.steps = std::move(result.traces);
    return trace;
}

std::vector<double> PathTrace::deltas() const {
    std::vector<double> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back((s.min_value - final_min) + undershoot);
    return out;
}

}  // namespace bmin
