// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <array>
#include <chrono>
#include <cstdint>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bmin/bridge.hpp"
#include "bmin/csv.hpp"
#include "bmin/experiment.hpp"
#include "bmin/minimizer.hpp"
#include "bmin/oracle.hpp"
#include "stat_oracles.hpp"

using namespace bmin;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::vector<RatePoint> rate_points(const std::vector<ErrorEstimate>& rows) {
    std::vector<RatePoint> pts;
    for (const auto& r : rows) pts.push_back({static_cast<double>(r.n), r.lp_error});
    return pts;
}

// 1. Equidistant baseline decays like n^-1/2.
Outcome nonadaptive_rate() {
    ExperimentPlan plan;
    plan.algorithm = Algorithm::equidistant;
    plan.n_grid = {16, 64, 256, 1024, 4096};
    plan.p = 1.0;
    plan.replications = 2000;
    plan.master_seed = 1001;
    const auto rows = run_experiment(plan, workers());
    const double slope = fit_rate(rate_points(rows));
    return {slope >= -0.65 && slope <= -0.35, fmt("slope = %.4f, required in [-0.65, -0.35]", slope)};
}

// 2. Adaptive beats the nonadaptive barrier.
Outcome adaptive_superiority() {
    ExperimentPlan plan;
    plan.lambdas = {1.0};
    plan.n_grid = {32, 64, 128, 256, 512};
    plan.p = 2.0;
    plan.replications = 1000;
    plan.master_seed = 2002;
    const auto adaptive = run_experiment(plan, workers());
    const double slope = fit_rate(rate_points(adaptive));
    double at128 = 0.0;
    for (const auto& r : adaptive) {
        if (r.n == 128) at128 = r.lp_error;
    }

    ExperimentPlan baseline = plan;
    baseline.algorithm = Algorithm::equidistant;
    baseline.n_grid = {8192};
    const double eq8192 = run_experiment(baseline, workers()).front().lp_error;

    const bool pass = slope <= -1.0 && at128 < eq8192;
    std::string d = fmt("(a) slope = %.3f (<= -1.0)", slope);
    d += fmt("; (b) adaptive L2(n=128) = %.3e", at128);
    d += fmt(" < equidistant L2(n=8192) = %.3e", eq8192);
    return {pass, d};
}

// 3. Error at fixed n grows with lambda.
Outcome lambda_monotonicity() {
    ExperimentPlan plan;
    plan.lambdas = {1.0, 4.0, 8.0};
    plan.n_grid = {256};
    plan.p = 2.0;
    plan.replications = 1000;
    plan.master_seed = 3003;
    const auto rows = run_experiment(plan, workers());
    bool pass = true;
    std::string d;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        d += fmt("L2(lambda=%g)", *rows[i].lambda) + fmt(" = %.3e", rows[i].lp_error) +
             fmt(" +- %.1e", lp_standard_error(rows[i]));
        if (i + 1 < rows.size()) {
            const double slack = 2.0 * std::hypot(lp_standard_error(rows[i]),
                                                  lp_standard_error(rows[i + 1]));
            pass &= rows[i].lp_error <= rows[i + 1].lp_error + slack;
            d += " <= ";
        }
    }
    return {pass, d};
}

// 4. Bridge-minimum sampler against its analytic law.
Outcome bridge_minimum_law() {
    bool pass = true;
    std::string d;
    std::uint64_t item = 0;
    for (const BridgeSegment seg : {BridgeSegment{0.0, 0.0, 1.0}, BridgeSegment{0.3, 0.7, 0.25}}) {
        RngStream s(4004, stream_index(StreamPurpose::test, item++));
        std::vector<double> ys(10000);
        for (auto& y : ys) y = bridge_min_sample(seg, s.uniform_open_closed());
        const double ks = testing::ks_distance(ys, [&](double y) { return bridge_min_cdf(seg, y); });
        pass &= ks < 0.02;
        d += fmt("KS = %.4f; ", ks);
    }
    double worst = 0.0;
    RngStream s(4005, stream_index(StreamPurpose::test, 0));
    for (int trial = 0; trial < 500; ++trial) {
        const BridgeSegment seg =
            trial < 2 ? (trial == 0 ? BridgeSegment{0.0, 0.0, 1.0} : BridgeSegment{0.3, 0.7, 0.25})
                      : BridgeSegment{s.gaussian(), s.gaussian(), std::ldexp(1.0, -(trial % 7))};
        for (double u = 1e-12; u <= 1.0; u *= 1.3) {
            const double back = bridge_min_cdf(seg, bridge_min_sample(seg, u));
            worst = std::max(worst, std::abs(back - u) / u);
        }
        worst = std::max(worst, std::abs(bridge_min_cdf(seg, bridge_min_sample(seg, 1.0)) - 1.0));
    }
    pass &= worst <= 1e-12;
    d += fmt("max round-trip relative error = %.2e (<= 1e-12)", worst);
    return {pass, d};
}

// 5. Midpoint conditional variance is T/4.
Outcome midpoint_variance() {
    bool pass = true;
    std::string d;
    std::uint64_t item = 0;
    for (double T : {0.5, 1.0 / 64}) {
        RngStream s(5005, stream_index(StreamPurpose::test, item++));
        const BridgeSegment seg{-0.3, 0.4, T};
        constexpr int kDraws = 100000;
        double sum = 0.0, sum2 = 0.0;
        for (int i = 0; i < kDraws; ++i) {
            const double x = interior_sample(seg, T / 2, s.gaussian());
            sum += x;
            sum2 += x * x;
        }
        const double mean = sum / kDraws;
        const double ratio = (sum2 - kDraws * mean * mean) / (kDraws - 1) / (T / 4);
        pass &= std::abs(ratio - 1.0) <= 0.05;
        d += fmt("T = %g: ", T) + fmt("var/(T/4) = %.4f; ", ratio);
    }
    return {pass, d};
}

// 6. Deterministic function with known minimum.
Outcome deterministic_convergence() {
    auto f = [](double t) { return (t - 1.0 / 3.0) * (t - 1.0 / 3.0) - 1.0 / 9.0; };
    const double grid_min = grid_reference_min(DeterministicOracle(f), 1000000);
    DeterministicOracle oracle(f);
    const RunResult r = run(oracle, MinimizerConfig{1.0, 200, kDefaultLevelCap});
    const double gap = std::abs(r.state.min_value() - grid_min);
    const bool pass = gap <= 1e-3 && std::abs(grid_min + 1.0 / 9.0) < 1e-12;
    return {pass, fmt("|M_200 - min| = %.3e (<= 1e-3)", gap) +
                      fmt(", grid oracle min = %.15f", grid_min)};
}

// 7. Conditional rho bound on favorable paths.
Outcome lemma_rho_bound() {
    std::size_t applicable = 0, checked = 0, violations = 0;
    for (double lambda : {1.0, 8.0}) {
        const MinimizerConfig config{lambda, 1000, kDefaultLevelCap};
        std::vector<std::array<std::size_t, 3>> counts(1000);
        std::vector<std::size_t> index(1000);
        for (std::size_t r = 0; r < 1000; ++r) index[r] = r;
        // Replications are independent; run them in parallel with private counters.
        std::vector<std::thread> pool;
        const unsigned w = workers();
        for (unsigned t = 0; t < w; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t r = t; r < 1000; r += w) {
                    BrownianOracle oracle(RngStream(7007, stream_index(StreamPurpose::adaptive_path, r)));
                    run(oracle, config, [&](const MinimizerState& s, const StepTrace&) {
                        const LemmaCheck c = check_lemma_rho(s, config);
                        ++counts[r][0];
                        if (c.applicable) ++counts[r][1];
                        if (!c.holds) ++counts[r][2];
                    });
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& c : counts) {
            checked += c[0];
            applicable += c[1];
            violations += c[2];
        }
    }
    return {violations == 0, "steps checked = " + std::to_string(checked) +
                                 ", favorable = " + std::to_string(applicable) +
                                 ", violations = " + std::to_string(violations)};
}

// 8. Closed-form rho against quadrature of the interpolant.
Outcome rho_quadrature() {
    std::mt19937_64 gen(8008);
    double worst = 0.0;
    std::size_t intervals = 0;
    for (int config_no = 0; config_no < 100; ++config_no) {
        const double lambda = std::uniform_real_distribution<double>(1.0, 10.0)(gen);
        const std::size_t steps = std::uniform_int_distribution<std::size_t>(2, 80)(gen);
        Skeleton sk;
        if (config_no % 2 == 0) {
            // Algorithm-generated skeleton on a Brownian path.
            BrownianOracle oracle(RngStream(8008, stream_index(StreamPurpose::test, config_no)));
            sk = run(oracle, MinimizerConfig{lambda, steps, kDefaultLevelCap}).state.skeleton;
        } else {
            // Random bisections with arbitrary Gaussian values.
            std::normal_distribution<double> normal;
            sk.insert(DyadicPoint::one(), normal(gen));
            while (sk.evaluations() < steps) {
                const std::size_t i =
                    std::uniform_int_distribution<std::size_t>(0, sk.intervals() - 1)(gen);
                sk.insert(midpoint(sk[i].t, sk[i + 1].t), normal(gen));
            }
        }
        const auto rho = compute_rho(sk, lambda);
        const double tau = std::ldexp(1.0, -static_cast<int>(sk.tau_level()));
        const double g = std::sqrt(lambda * tau * std::log(1.0 / tau));
        double m = sk[0].value;
        for (const auto& s : sk.sites()) m = std::min(m, s.value);
        for (std::size_t i = 0; i < sk.intervals(); ++i) {
            const double length = sk[i + 1].t.to_double() - sk[i].t.to_double();
            const double q = testing::inverse_square_integral(sk[i].value - m + g,
                                                              sk[i + 1].value - m + g, length);
            worst = std::max(worst, std::abs(q - rho[i]) / q);
            ++intervals;
        }
    }
    return {worst <= 1e-9, fmt("max relative deviation = %.2e (<= 1e-9) over ", worst) +
                               std::to_string(intervals) + " intervals"};
}

// 9. Byte-identical CSV for 1, 4 and 8 workers.
Outcome determinism() {
    ExperimentPlan plan;
    plan.lambdas = {1.0, 4.0};
    plan.n_grid = {16, 32, 64, 128};
    plan.p = 2.0;
    plan.replications = 200;
    plan.master_seed = 9009;
    auto csv = [&](unsigned threads) {
        std::ostringstream os;
        write_errors_csv(os, run_comparison(plan, threads));
        return os.str();
    };
    const std::string one = csv(1);
    const bool pass = one == csv(4) && one == csv(8);
    return {pass, std::to_string(one.size()) + " bytes compared across 1/4/8 workers"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {"nonadaptive rate", nonadaptive_rate},
        {"adaptive superiority", adaptive_superiority},
        {"monotonicity in lambda", lambda_monotonicity},
        {"bridge-minimum sampler", bridge_minimum_law},
        {"midpoint bridge law", midpoint_variance},
        {"deterministic-oracle convergence", deterministic_convergence},
        {"conditional rho bound", lemma_rho_bound},
        {"rho closed form vs quadrature", rho_quadrature},
        {"determinism across workers", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %zu. %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
