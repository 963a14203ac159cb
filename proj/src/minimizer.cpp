#include "bmin/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bmin {

void MinimizerConfig::validate() const {
    if (!(lambda >= 1.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be a finite value >= 1, got " +
                                    std::to_string(lambda));
    }
    if (max_steps < 2) throw std::invalid_argument("max_steps must be at least 2");
    if (level_cap == 0) throw std::invalid_argument("level_cap must be positive");
}

double MinimizerState::rho_max() const {
    if (rho.empty()) throw std::logic_error("rho is undefined before two evaluations");
    return *std::max_element(rho.begin(), rho.end());
}

double offset(double x, double lambda) {
    if (!(x > 0.0 && x <= 1.0)) {
        throw std::invalid_argument("offset needs x in (0, 1], got " + std::to_string(x));
    }
    return std::sqrt(lambda * x * std::log(1.0 / x));
}

std::vector<double> compute_rho(const Skeleton& skeleton, double lambda) {
    if (skeleton.evaluations() < 2) {
        throw std::invalid_argument("compute_rho needs at least two evaluations");
    }
    const double g = offset(skeleton.tau(), lambda);
    const double m = skeleton.min_value();
    const auto& sites = skeleton.sites();
    std::vector<double> rho(skeleton.intervals());
    // f - M rounds to a value >= 0, so each factor is at least g even when g << |M|.
    double left = (sites[0].value - m) + g;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double right = (sites[i + 1].value - m) + g;
        rho[i] = skeleton.gap(i) / (left * right);
        left = right;
    }
    return rho;
}

std::size_t select_split(std::span<const double> rho) {
    if (rho.empty()) throw std::invalid_argument("select_split needs a non-empty array");
    std::size_t best = 0;
    for (std::size_t i = 1; i < rho.size(); ++i) {
        if (rho[i] > rho[best]) best = i;
    }
    return best;
}

std::vector<double> undershoot_probabilities(std::span<const double> rho) {
    std::vector<double> out(rho.size());
    std::transform(rho.begin(), rho.end(), out.begin(),
                   [](double r) { return std::exp(-2.0 / r); });
    return out;
}

namespace {

double normalized_increment(const Skeleton& sk, std::size_t interval) {
    return std::abs(sk[interval + 1].value - sk[interval].value) / std::sqrt(sk.gap(interval));
}

StepTrace make_trace(const MinimizerState& state, std::size_t split, std::size_t index) {
    StepTrace tr;
    tr.n = state.n();
    tr.split_index = split;
    tr.new_site = state.skeleton[index].t;
    tr.new_value = state.skeleton[index].value;
    tr.min_value = state.min_value();
    tr.tau_level = state.tau_level();
    tr.rho_max = state.rho_max();
    tr.undershoot_max = std::exp(-2.0 / tr.rho_max);
    return tr;
}

}  // namespace

MinimizerState start(PathOracle& oracle, const MinimizerConfig& config,
                     std::vector<StepTrace>* traces) {
    config.validate();
    if (oracle.skeleton().evaluations() != 0) {
        throw std::invalid_argument("the minimizer needs a fresh oracle");
    }
    MinimizerState state;
    const DyadicPoint one = DyadicPoint::one();
    state.skeleton.insert(one, oracle.evaluate(one));
    state.fav_stat = normalized_increment(state.skeleton, 0);

    const DyadicPoint half = midpoint(DyadicPoint::zero(), one, config.level_cap);
    const std::size_t index = state.skeleton.insert(half, oracle.evaluate(half));
    state.fav_stat = std::max({state.fav_stat, normalized_increment(state.skeleton, 0),
                               normalized_increment(state.skeleton, 1)});
    state.rho = compute_rho(state.skeleton, config.lambda);
    if (traces) traces->push_back(make_trace(state, 0, index));
    return state;
}

StepTrace step(MinimizerState& state, PathOracle& oracle, const MinimizerConfig& config) {
    if (state.n() < 2) throw std::invalid_argument("step needs at least two evaluations");
    const std::size_t j = select_split(state.rho);
    const Skeleton& sk = state.skeleton;
    const DyadicPoint site = midpoint(sk[j].t, sk[j + 1].t, config.level_cap);
    const double value = oracle.evaluate(site);
    const std::size_t index = state.skeleton.insert(site, value);
    state.fav_stat = std::max({state.fav_stat, normalized_increment(state.skeleton, j),
                               normalized_increment(state.skeleton, j + 1)});
    state.rho = compute_rho(state.skeleton, config.lambda);
    return make_trace(state, j, index);
}

RunResult run(PathOracle& oracle, const MinimizerConfig& config, const StepObserver& observer) {
    RunResult result;
    result.traces.reserve(config.max_steps > 1 ? config.max_steps - 1 : 0);
    result.state = start(oracle, config, &result.traces);
    if (observer) observer(result.state, result.traces.back());
    while (result.state.n() < config.max_steps) {
        result.traces.push_back(step(result.state, oracle, config));
        if (observer) observer(result.state, result.traces.back());
    }
    return result;
}

LemmaCheck check_lemma_rho(const MinimizerState& state, const MinimizerConfig& config) {
    if (state.n() < 2) throw std::invalid_argument("the rho bound needs n >= 2");
    LemmaCheck check;
    check.n = state.n();
    check.fav_stat = state.fav_stat;
    check.fav_threshold =
        std::sqrt(config.lambda * std::log(static_cast<double>(check.n)) / 4.0);
    check.applicable = check.fav_stat <= check.fav_threshold;
    check.rho_max = state.rho_max();
    check.rho_bound =
        2.0 / (config.lambda * static_cast<double>(state.tau_level()) * std::log(2.0));
    check.holds = !check.applicable || check.rho_max <= check.rho_bound;
    return check;
}

LemmaCheck assert_lemma_rho(const MinimizerState& state, const MinimizerConfig& config) {
    LemmaCheck check = check_lemma_rho(state, config);
    if (!check.holds) {
        throw std::logic_error("rho bound violated on a favorable path at n = " +
                               std::to_string(check.n) + ": rho = " +
                               std::to_string(check.rho_max) +
                               " > " + std::to_string(check.rho_bound));
    }
    return check;
}

}  // namespace bmin
