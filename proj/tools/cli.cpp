#include "cli.hpp"

#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "prophet/cases.hpp"
#include "prophet/io.hpp"
#include "prophet/mc.hpp"
#include "prophet/signaling.hpp"
#include "prophet/stackelberg.hpp"
#include "prophet/strategic.hpp"
#include "prophet/suites.hpp"

namespace prophet::cli {

namespace {

struct Options {
    std::string format = "table";
    std::string file;
    double threshold = 0.0;
    bool has_threshold = false;
    std::string mode = "strategic";
    std::string policy = "fixed";
    bool frozen = false;
    std::string target;  // case id / suite id
    std::int64_t samples = 100000;
    std::uint64_t seed = 0;
    bool has_seed = false;
    int streams = 1;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("PROPHET_SEED")) {
        return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
    }
    return 1;
}

Policy make_policy(const std::string& name, bool frozen, std::optional<double> threshold) {
    if (name == "fixed") {
        if (!threshold) throw std::invalid_argument("fixed policy needs --threshold");
        return Policy::fixed(*threshold);
    }
    if (name == "dp") return frozen ? Policy::dp_h() : Policy::dp();
    if (name == "hem") return frozen ? Policy::hem_h() : Policy::hem();
    if (name == "median") return frozen ? Policy::median_h() : Policy::median();
    throw std::invalid_argument("unknown policy '" + name + "'");
}

std::vector<ReportRow> outcome_rows(const std::string& id, const EquilibriumOutcome& out) {
    std::vector<ReportRow> rows;
    rows.push_back({id, "payoff", out.searcher_payoff, "", ""});
    rows.push_back({id, "threshold", out.threshold_used, "", ""});
    rows.push_back({id, "ratio vs opt/2", out.ratio_vs_half_opt, "", ""});
    for (std::size_t i = 0; i < out.win_probs.size(); ++i)
        rows.push_back({id, "win prob box " + std::to_string(i + 1), out.win_probs[i], "", ""});
    return rows;
}

int run_impl(const Options& opt, const std::string& command, std::ostream& out) {
    const ReportFormat format = parse_format(opt.format);
    std::vector<ReportRow> rows;
    int exit_code = 0;

    if (command == "opt") {
        const Instance inst = instance_from_file(opt.file);
        rows.push_back({"opt", "expected max", expected_max(inst), "", ""});
        const std::vector<double> means = inst.means();
        for (std::size_t i = 0; i < means.size(); ++i)
            rows.push_back({"opt", "mean box " + std::to_string(i + 1), means[i], "", ""});
    } else if (command == "spectrum") {
        const Instance inst = instance_from_file(opt.file);
        const ThresholdSpectrum sp = spectrum(inst);
        rows.push_back({"spectrum", "t_kw", sp.t_kw, "", ""});
        rows.push_back({"spectrum", "t_sc", sp.t_sc, "", ""});
        rows.push_back({"spectrum", "median_lower", sp.median_lower, "", ""});
        rows.push_back({"spectrum", "t_star", sp.t_star, "", ""});
    } else if (command == "best-response") {
        const Instance inst = instance_from_file(opt.file);
        for (std::size_t i = 0; i < inst.boxes.size(); ++i) {
            const PoolingStrategy s = best_response(inst.boxes[i], opt.threshold);
            const std::string id = "box " + std::to_string(i + 1);
            const char* kind = s.kind == PoolingStrategy::Kind::NoInformation
                                   ? "no-information"
                                   : (s.kind == PoolingStrategy::Kind::AlwaysRejected
                                          ? "always-rejected"
                                          : "threshold-signaling");
            rows.push_back({id, "accept prob", s.accept_prob, "", kind});
            if (s.cutoff) rows.push_back({id, "cutoff", *s.cutoff, "", kind});
            if (s.partial_mass > 0.0)
                rows.push_back({id, "partial atom mass", s.partial_mass, "", kind});
            if (s.low_posterior)
                rows.push_back({id, "low posterior", *s.low_posterior, "", kind});
        }
    } else if (command == "payoff") {
        const Instance inst = instance_from_file(opt.file);
        const double u = opt.mode == "classic" ? nonstrategic_payoff(inst, opt.threshold)
                                               : strategic_payoff(inst, opt.threshold);
        const double opt_value = expected_max(inst);
        rows.push_back({"payoff", opt.mode, u, "", ""});
        rows.push_back({"payoff", "expected max", opt_value, "", ""});
        rows.push_back(
            {"payoff", "ratio", opt_value > 0.0 ? u / opt_value : 1.0, "", ""});
    } else if (command == "equilibrium") {
        const Instance inst = instance_from_file(opt.file);
        if (opt.policy == "fixed")
            throw std::invalid_argument("equilibrium expects --policy dp|hem|median");
        if (opt.frozen) {
            const Policy policy = make_policy(opt.policy, true, std::nullopt);
            const Profile profile = best_response_to_fixed(
                inst.boxes, policy_thresholds(policy, Profile::full_information(inst.boxes)));
            rows = outcome_rows(opt.policy + "-h", eval_profile(policy, profile));
        } else {
            if (inst.size() != 2)
                throw std::invalid_argument(
                    "prior-free equilibria are solved for two boxes; use --frozen otherwise");
            EquilibriumOutcome out;
            if (opt.policy == "dp") out = solve_dp_two_box(inst.boxes[0], inst.boxes[1]);
            if (opt.policy == "hem") out = solve_hem_two_box(inst.boxes[0], inst.boxes[1]);
            if (opt.policy == "median") out = solve_median_two_box(inst.boxes[0], inst.boxes[1]);
            rows = outcome_rows(opt.policy, out);
        }
    } else if (command == "simulate") {
        const Instance inst = instance_from_file(opt.file);
        std::optional<double> threshold;
        if (opt.has_threshold) threshold = opt.threshold;
        const Policy policy = make_policy(opt.policy, opt.frozen, threshold);
        Profile profile;
        if (opt.mode == "classic") {
            profile = Profile::full_information(inst.boxes);
        } else if (policy.frozen()) {
            profile = best_response_to_fixed(
                inst.boxes, policy_thresholds(policy, Profile::full_information(inst.boxes)));
        } else {
            if (inst.size() != 2)
                throw std::invalid_argument(
                    "strategic simulation of prior-free policies needs two boxes or --frozen");
            EquilibriumOutcome eq;
            if (opt.policy == "dp") eq = solve_dp_two_box(inst.boxes[0], inst.boxes[1]);
            if (opt.policy == "hem") eq = solve_hem_two_box(inst.boxes[0], inst.boxes[1]);
            if (opt.policy == "median")
                eq = solve_median_two_box(inst.boxes[0], inst.boxes[1]);
            profile = eq.profile;
        }
        SimConfig cfg;
        cfg.samples = opt.samples;
        cfg.seed = opt.has_seed ? opt.seed : default_seed();
        cfg.parallel_streams = opt.streams;
        const SimResult res = simulate(policy, profile, cfg);
        rows.push_back({"simulate", "payoff mean", res.payoff_mean, "", ""});
        rows.push_back({"simulate", "payoff stderr", res.payoff_stderr, "", ""});
        for (std::size_t i = 0; i < res.win_freqs.size(); ++i)
            rows.push_back(
                {"simulate", "win freq box " + std::to_string(i + 1), res.win_freqs[i], "", ""});
    } else if (command == "reproduce") {
        std::vector<std::string> ids;
        if (opt.target == "all")
            ids = reproduce_case_ids();
        else
            ids.push_back(opt.target);
        for (const std::string& id : ids) {
            const CaseReport rep = reproduce_counterexample(id);
            const std::vector<ReportRow> case_rows = rows_from_case(rep);
            rows.insert(rows.end(), case_rows.begin(), case_rows.end());
            if (!rep.ok) exit_code = 1;
        }
    } else if (command == "check") {
        std::vector<std::string> ids;
        if (opt.target == "all")
            ids = suite_ids();
        else
            ids.push_back(opt.target);
        for (const std::string& id : ids) {
            const SuiteResult s = run_suite(id);
            const std::vector<ReportRow> suite_rows = rows_from_suite(s);
            rows.insert(rows.end(), suite_rows.begin(), suite_rows.end());
            if (!s.ok()) exit_code = 1;
        }
    }

    emit_report(rows, format, out);
    return exit_code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"prophet: threshold stopping policies under strategic reward signaling"};
    app.require_subcommand(1);
    app.fallthrough();  // global --format may follow the subcommand
    Options opt;
    app.add_option("--format", opt.format, "output format: table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    auto add_file = [&](CLI::App* sub) {
        sub->add_option("file", opt.file, "instance JSON file")->required();
    };

    CLI::App* c_opt = app.add_subcommand("opt", "prophet value of an instance");
    add_file(c_opt);

    CLI::App* c_spec = app.add_subcommand("spectrum", "half-approximation thresholds");
    add_file(c_spec);

    CLI::App* c_br =
        app.add_subcommand("best-response", "per-box optimal signaling at a threshold");
    add_file(c_br);
    c_br->add_option("--threshold", opt.threshold, "searcher threshold")->required();

    CLI::App* c_pay = app.add_subcommand("payoff", "searcher payoff at a threshold");
    add_file(c_pay);
    c_pay->add_option("--threshold", opt.threshold, "searcher threshold")->required();
    c_pay->add_option("--mode", opt.mode, "strategic|classic")
        ->check(CLI::IsMember({"strategic", "classic"}));

    CLI::App* c_eq = app.add_subcommand("equilibrium", "two-box equilibria / frozen responses");
    add_file(c_eq);
    c_eq->add_option("--policy", opt.policy, "dp|hem|median")->required();
    c_eq->add_flag("--frozen", opt.frozen, "freeze thresholds from the priors (-H variants)");

    CLI::App* c_sim = app.add_subcommand("simulate", "seeded Monte Carlo of a policy");
    add_file(c_sim);
    c_sim->add_option("--policy", opt.policy, "fixed|dp|hem|median");
    auto* thr =
        c_sim->add_option("--threshold", opt.threshold, "threshold for --policy fixed");
    c_sim->add_flag("--frozen", opt.frozen, "freeze thresholds from the priors");
    c_sim->add_option("--mode", opt.mode, "strategic|classic")
        ->check(CLI::IsMember({"strategic", "classic"}));
    c_sim->add_option("--samples", opt.samples, "number of replicates");
    auto* seed = c_sim->add_option("--seed", opt.seed, "simulation seed (env PROPHET_SEED)");
    c_sim->add_option("--streams", opt.streams, "parallel streams (results unchanged)");

    CLI::App* c_rep = app.add_subcommand("reproduce", "registered counterexamples and bounds");
    c_rep->add_option("case", opt.target, "case id or 'all'")->required();

    CLI::App* c_chk = app.add_subcommand("check", "seeded property suites");
    c_chk->add_option("suite", opt.target, "suite id or 'all'")->required();

    std::vector<std::string> argv_copy(args.rbegin(), args.rend());
    try {
        app.parse(argv_copy);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    opt.has_threshold = thr->count() > 0;
    opt.has_seed = seed->count() > 0;

    try {
        return run_impl(opt, app.get_subcommands().front()->get_name(), out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace prophet::cli
