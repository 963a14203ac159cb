#include "bmin/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "bmin/csv.hpp"
#include "bmin/experiment.hpp"
#include "bmin/minimizer.hpp"

namespace bmin {

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PlanFlags {
    std::vector<double> lambdas{1.0};
    std::vector<std::size_t> n_grid{16, 32, 64, 128, 256};
    double p = 2.0;
    std::size_t reps = 1000;
    std::uint64_t seed = 0;
    std::string algorithm = "adaptive";
    unsigned level_cap = kDefaultLevelCap;
    unsigned threads = 0;
    std::string out;
};

void add_plan_flags(CLI::App* cmd, PlanFlags& f) {
    cmd->add_option("--lambdas", f.lambdas, "Comma-separated lambda values (>= 1)")
        ->delimiter(',');
    cmd->add_option("--n-grid", f.n_grid, "Comma-separated ascending evaluation counts")
        ->delimiter(',');
    cmd->add_option("--p", f.p, "Order of the L_p error (>= 1)");
    cmd->add_option("--reps", f.reps, "Monte Carlo replications");
    cmd->add_option("--seed", f.seed, "Master seed");
    cmd->add_option("--level-cap", f.level_cap, "Maximum dyadic level");
    cmd->add_option("--threads", f.threads, "Worker threads (0 = hardware concurrency)");
    cmd->add_option("--out", f.out, "Output CSV path (default: stdout)");
}

ExperimentPlan to_plan(const PlanFlags& f, Algorithm algorithm) {
    ExperimentPlan plan;
    plan.lambdas = f.lambdas;
    plan.n_grid = f.n_grid;
    plan.p = f.p;
    plan.replications = f.reps;
    plan.master_seed = f.seed;
    plan.algorithm = algorithm;
    plan.level_cap = f.level_cap;
    try {
        plan.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return plan;
}

unsigned worker_count(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    file << text;
    if (!file.flush()) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Adaptive approximation of the minimum of Brownian motion", "bmin"};
    app.require_subcommand(1);

    MinimizerConfig sim;
    sim.max_steps = 1000;
    std::uint64_t sim_seed = 0;
    std::string sim_out;
    auto* simulate = app.add_subcommand("simulate", "Trace one adaptive run on a Brownian path");
    simulate->add_option("--lambda", sim.lambda, "Offset parameter (>= 1)");
    simulate->add_option("--steps", sim.max_steps, "Number of evaluations (>= 2)");
    simulate->add_option("--seed", sim_seed, "Master seed");
    simulate->add_option("--level-cap", sim.level_cap, "Maximum dyadic level");
    simulate->add_option("--out", sim_out, "Output CSV path (default: stdout)");

    PlanFlags exp_flags;
    auto* experiment = app.add_subcommand("experiment", "Monte Carlo L_p error curves");
    add_plan_flags(experiment, exp_flags);
    experiment->add_option("--algorithm", exp_flags.algorithm, "adaptive or equidistant")
        ->check(CLI::IsMember({"adaptive", "equidistant"}));

    PlanFlags cmp_flags;
    auto* compare = app.add_subcommand("compare", "Adaptive and equidistant error curves");
    add_plan_flags(compare, cmp_flags);

    double order = 1.0;
    double moment = 1.0;
    auto* suggest = app.add_subcommand("suggest-lambda",
                                       "Sufficient lambda for convergence order r in L_p");
    suggest->add_option("--r", order, "Target convergence order (>= 1)");
    suggest->add_option("--p", moment, "Order of the L_p norm (>= 1)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        std::ostringstream csv;
        if (*simulate) {
            try {
                sim.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const PathTrace trace = trace_replication(sim, sim_seed);
            const auto deltas = trace.deltas();
            write_trace_csv(csv, trace.steps, deltas);
            emit(csv.str(), sim_out, out);
        } else if (*experiment) {
            const Algorithm algorithm = exp_flags.algorithm == "equidistant"
                                            ? Algorithm::equidistant
                                            : Algorithm::adaptive;
            const ExperimentPlan plan = to_plan(exp_flags, algorithm);
            const auto rows = run_experiment(plan, worker_count(exp_flags.threads));
            write_errors_csv(csv, rows);
            emit(csv.str(), exp_flags.out, out);
        } else if (*compare) {
            const ExperimentPlan plan = to_plan(cmp_flags, Algorithm::adaptive);
            const auto rows = run_comparison(plan, worker_count(cmp_flags.threads));
            write_errors_csv(csv, rows);
            emit(csv.str(), cmp_flags.out, out);
        } else if (*suggest) {
            double lambda = 0.0;
            try {
                lambda = lambda_suggestion(order, moment);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            out << "r,p,lambda\n"
                << format_real(order) << ',' << format_real(moment) << ','
                << format_real(lambda) << '\n';
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace bmin
