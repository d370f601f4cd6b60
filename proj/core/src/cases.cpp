#include "prophet/cases.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "prophet/mc.hpp"
#include "prophet/random_instances.hpp"
#include "prophet/signaling.hpp"
#include "prophet/stackelberg.hpp"
#include "prophet/strategic.hpp"
#include "prophet/suites.hpp"

namespace prophet {

namespace {

constexpr double kExact = 1e-9;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

CaseRow near(const std::string& quantity, double value, double expected, double tol) {
    return {quantity, value, fmt(expected) + " +/- " + fmt(tol),
            std::abs(value - expected) <= tol};
}

CaseRow at_most(const std::string& quantity, double value, double cap, double slack = kExact) {
    return {quantity, value, "<= " + fmt(cap), value <= cap + slack};
}

CaseRow at_least(const std::string& quantity, double value, double floor, double slack = kExact) {
    return {quantity, value, ">= " + fmt(floor), value >= floor - slack};
}

CaseRow in_range(const std::string& quantity, double value, double lo, double hi) {
    return {quantity, value, "in [" + fmt(lo) + ", " + fmt(hi) + "]",
            value >= lo && value <= hi};
}

void finish(CaseReport& rep) {
    rep.ok = true;
    for (const CaseRow& r : rep.rows) rep.ok = rep.ok && r.ok;
}

CaseRow suite_row(const SuiteResult& s) {
    return {s.id + " failures", static_cast<double>(s.failures),
            "<= " + std::to_string(s.allowed_failures) + " of " + std::to_string(s.total),
            s.ok()};
}

}  // namespace

Instance hem_counterexample_priors() {
    return Instance({Dist::uniform(0.0, 0.5), Dist::uniform(0.0, 0.92)});
}

Instance dp3_counterexample_priors() {
    const Dist b = Dist::discrete({{0.0, 0.75}, {1.0, 0.25}});
    return Instance({Dist::point(0.2), b, b});
}

Instance median3_counterexample_priors() {
    const Dist b = Dist::discrete({{0.0, 0.8}, {1.0, 0.2}});
    return Instance({Dist::point(0.39), b, b});
}

Instance medianh_counterexample_priors() {
    const Dist lo = Dist::uniform(0.0, 1.0 / 24.0);
    const Dist hi = Dist::uniform(23.0 / 24.0, 1.0);
    return Instance({Dist::mixture({5.0 / 6.0, 1.0 / 6.0}, {lo, hi}),
                     Dist::mixture({3.0 / 5.0, 2.0 / 5.0}, {lo, hi})});
}

Instance dph3_counterexample_priors() {
    const Dist b = Dist::discrete({{0.0, 0.8}, {1.0, 0.2}});
    return Instance({Dist::point(0.25), b, b});
}

Instance hemh3_counterexample_priors() {
    return Instance::iid(Dist::discrete({{0.0, 2.0 / 3.0}, {1.0, 1.0 / 3.0}}), 3);
}

namespace {

CaseReport case_hem_2box() {
    CaseReport rep{"hem-2box", "two-box half-expected-max equilibrium counterexample"};
    const Instance inst = hem_counterexample_priors();
    const Dist& h1 = inst.boxes[0];
    const Dist& h2 = inst.boxes[1];
    const EquilibriumOutcome out = solve_hem_two_box(h1, h2);
    const double opt = expected_max(inst);
    rep.rows.push_back(near("lambda1", h1.mean(), 0.25, kExact));
    rep.rows.push_back(near("lambda2", h2.mean(), 0.46, kExact));
    rep.rows.push_back(near("v1(lambda1)", v1(h1.mean(), h2), 0.4940, 1e-3));
    rep.rows.push_back(near("opt", opt, 0.5053, 1e-3));
    rep.rows.push_back(near("payoff", out.searcher_payoff, 0.25, kExact));
    rep.rows.push_back(
        {"box1 reveals nothing", out.profile.strategies[0].is_point_mass() ? 1.0 : 0.0,
         "1", out.profile.strategies[0].is_point_mass()});
    rep.rows.push_back(at_most("payoff vs opt/2", out.searcher_payoff, 0.5 * opt - 1e-6, 0.0));
    rep.verdict = "below-half";
    finish(rep);
    return rep;
}

CaseReport case_dp_3box() {
    CaseReport rep{"dp-3box", "three-box backward-induction counterexample"};
    const Instance inst = dp3_counterexample_priors();
    const EquilibriumOutcome two = solve_dp_two_box(inst.boxes[1], inst.boxes[2]);
    Profile profile;
    profile.priors = inst.boxes;
    profile.strategies = {inst.boxes[0], two.profile.strategies[0], two.profile.strategies[1]};
    const EquilibriumOutcome out = eval_profile(Policy::dp(), profile);
    const double opt = expected_max(inst);
    rep.rows.push_back(near("two-box reduction payoff", two.searcher_payoff, 0.25, kExact));
    rep.rows.push_back(near("payoff", out.searcher_payoff, 0.25, kExact));
    rep.rows.push_back(near("opt", opt, 0.55, kExact));
    rep.rows.push_back(at_most("payoff vs opt/2", out.searcher_payoff, 0.5 * opt - 1e-6, 0.0));
    rep.verdict = "below-half";
    finish(rep);
    return rep;
}

CaseReport case_median_3box() {
    CaseReport rep{"median-3box", "three-box median-of-max counterexample"};
    const Instance inst = median3_counterexample_priors();
    const Dist& c = inst.boxes[1];
    const double level = b_m(c);
    Profile profile;
    profile.priors = inst.boxes;
    const Dist pooled = binary_reduction(best_response(c, level), c);
    profile.strategies = {inst.boxes[0], pooled, pooled};
    const EquilibriumOutcome out = eval_profile(Policy::median(), profile);
    const EquilibriumOutcome two = solve_median_two_box(c, c);
    const double opt = expected_max(inst);
    rep.rows.push_back(near("pooling level", level, 0.4, kExact));
    rep.rows.push_back(near("threshold", out.threshold_used, 0.4, kExact));
    rep.rows.push_back(near("payoff", out.searcher_payoff, 0.3, kExact));
    rep.rows.push_back(near("box1 win prob", out.win_probs[0], 0.0, 1e-12));
    rep.rows.push_back(near("two-box restricted payoff", two.searcher_payoff, 0.3, kExact));
    rep.rows.push_back(near("opt", opt, 0.6096, kExact));
    rep.rows.push_back(at_most("payoff vs opt/2", out.searcher_payoff, 0.5 * opt - 1e-6, 0.0));
    rep.verdict = "below-half";
    finish(rep);
    return rep;
}

CaseReport case_medianh_2box() {
    CaseReport rep{"medianh-2box", "two-box frozen-median counterexample"};
    const Instance inst = medianh_counterexample_priors();
    const double threshold = median_of_max(inst);
    const Profile profile =
        best_response_to_fixed(inst.boxes, {threshold, threshold});
    const EquilibriumOutcome out = eval_profile(Policy::median_h(), profile);
    const double opt = expected_max(inst);
    rep.rows.push_back(near("threshold", threshold, 1.0 / 24.0, kExact));
    rep.rows.push_back(near("lambda1", inst.boxes[0].mean(), 13.0 / 72.0, kExact));
    rep.rows.push_back(near("lambda2", inst.boxes[1].mean(), 97.0 / 240.0, kExact));
    rep.rows.push_back(near("payoff", out.searcher_payoff, 13.0 / 72.0, kExact));
    rep.rows.push_back(in_range("opt/2", 0.5 * opt, 0.250, 0.254));
    rep.rows.push_back(at_most("payoff vs opt/2", out.searcher_payoff, 0.5 * opt - 1e-6, 0.0));
    rep.verdict = "below-half";
    finish(rep);
    return rep;
}

CaseReport case_dph_3box() {
    CaseReport rep{"dph-3box", "three-box frozen backward-induction counterexample"};
    const Instance inst = dph3_counterexample_priors();
    const std::vector<double> ts = dp_thresholds(inst);
    const Profile profile = best_response_to_fixed(inst.boxes, ts);
    const EquilibriumOutcome out = eval_profile(Policy::dp_h(), profile);
    const double opt = expected_max(inst);
    rep.rows.push_back(near("box1 threshold", ts[0], 0.36, kExact));
    rep.rows.push_back(near("box2 threshold", ts[1], 0.2, kExact));
    rep.rows.push_back(near("payoff", out.searcher_payoff, 0.2, kExact));
    rep.rows.push_back(near("opt", opt, 0.52, kExact));
    rep.rows.push_back(at_most("payoff vs opt/2", out.searcher_payoff, 0.5 * opt - 1e-6, 0.0));
    rep.verdict = "below-half";
    finish(rep);
    return rep;
}

CaseReport case_hemh_3box() {
    CaseReport rep{"hemh-3box", "three-box frozen half-expected-max counterexample"};
    const Instance inst = hemh3_counterexample_priors();
    const ThresholdSpectrum sp = spectrum(inst);
    const Profile profile =
        best_response_to_fixed(inst.boxes, std::vector<double>(3, sp.t_kw));
    const EquilibriumOutcome out = eval_profile(Policy::hem_h(), profile);
    const double expected_payoff = (19.0 / 54.0) * (1.0 - std::pow(1.0 / 19.0, 3));
    rep.rows.push_back(near("t_kw", sp.t_kw, 19.0 / 54.0, kExact));
    rep.rows.push_back(near("opt", 2.0 * sp.t_kw, 19.0 / 27.0, kExact));
    rep.rows.push_back(near("payoff", out.searcher_payoff, expected_payoff, kExact));
    rep.rows.push_back(at_most("payoff vs t_kw", out.searcher_payoff, 19.0 / 54.0 - 1e-6, 0.0));
    rep.verdict = "below-half";
    finish(rep);
    return rep;
}

CaseReport case_positive_two_box(bool hem) {
    CaseReport rep{hem ? "hemh-2box-positive" : "dph-2box-positive",
                   hem ? "two-box frozen half-expected-max keeps half-optimality"
                       : "two-box frozen backward induction keeps half-optimality"};
    const SuiteResult s = suite_positive_two_box(hem, 500);
    rep.rows.push_back(suite_row(s));
    rep.rows.push_back(at_least("worst payoff margin", s.worst_margin, 0.0));
    rep.verdict = "holds";
    finish(rep);
    return rep;
}

CaseReport case_general_tightness() {
    CaseReport rep{"general-tightness",
                   "spectrum thresholds cannot beat the general strategic cap"};
    const double eps = 1e-3, s = 1e6;
    for (int n : {3, 5, 10}) {
        const Instance inst = make_general_tightness_instance(n, eps, s);
        const double d = n - 1 - eps;
        const ThresholdSpectrum sp = spectrum(inst);
        const double opt = expected_max(inst);
        const double opt_closed =
            d * std::pow(1.0 - 1.0 / s, n - 1) + s * (1.0 - std::pow(1.0 - 1.0 / s, n - 1));
        const double tstar_closed = (n - 1.0) / (1.0 + (n - 1.0) / s);
        double best_ratio = 0.0;
        const double hi = sp.hi();
        for (int j = 0; j < 100; ++j) {
            const double T = sp.t_kw + (hi - sp.t_kw) * j / 99.0;
            best_ratio = std::max(best_ratio, strategic_payoff(inst, T) / opt);
        }
        const double cap = 0.5 * (1.0 - std::pow(1.0 - 1.0 / (n - 1.0), n - 1.0));
        const std::string tag = "(N=" + std::to_string(n) + ") ";
        rep.rows.push_back(near(tag + "opt", opt, opt_closed, 1e-9 * opt_closed));
        rep.rows.push_back(near(tag + "t_sc", sp.t_sc, d, kExact));
        rep.rows.push_back(near(tag + "t_star", sp.t_star, tstar_closed, 1e-8));
        rep.rows.push_back(at_most(tag + "best spectrum ratio", best_ratio, cap + 0.02, 0.0));
    }
    rep.verdict = "tight";
    finish(rep);
    return rep;
}

CaseReport case_iid_tightness() {
    CaseReport rep{"iid-tightness", "IID trade-off between the two worlds"};
    const double a1 = 0.5;
    for (auto [n, a2] : {std::pair<int, double>{50, 500.0}, {200, 2000.0}}) {
        const Instance inst = make_iid_tightness_instance(n, a1, a2);
        const double opt = expected_max(inst);
        const double u_ns = nonstrategic_payoff(inst, static_cast<double>(n));
        const double u_ns_closed =
            (n + a2) * (1.0 - std::pow(a2 / (a1 + a2), n));
        const double u_s = strategic_payoff(inst, n - a1);
        const std::string tag = "(N=" + std::to_string(n) + ") ";
        rep.rows.push_back(near(tag + "mean", inst.boxes[0].mean(), n, 1e-12 * n));
        rep.rows.push_back(near(tag + "u_ns closed form", u_ns, u_ns_closed, 1e-9 * u_ns_closed));
        rep.rows.push_back(near(tag + "classic ratio above the low value", u_ns / opt,
                                a1 / (a1 + 1.0), 0.05));
        rep.rows.push_back(near(tag + "strategic payoff at low threshold", u_s,
                                static_cast<double>(n), 1e-9 * n));
        rep.rows.push_back(near(tag + "strategic ratio at low threshold", u_s / opt,
                                1.0 / (1.0 + a1), 0.05));
    }
    rep.verdict = "tight";
    finish(rep);
    return rep;
}

CaseReport case_iid_percentage() {
    CaseReport rep{"iid-percentage", "IID deviation cap instance at n = 30"};
    const int n = 30;
    const double e = std::exp(1.0);
    const Instance inst = make_percentage_instance(n);
    const double opt = expected_max(inst);
    const double t_paper = (e - 1.0) * n / ((e - 2.0) * (n + 1.0));
    const PoolingStrategy br = best_response(inst.boxes[0], t_paper);
    const double u = strategic_payoff(inst, t_paper);
    const double ratio = u / opt;

    SimConfig cfg;
    cfg.samples = 200000;
    cfg.seed = suite_seed(0x69706354ULL);
    const Profile profile = best_response_to_fixed(
        inst.boxes, std::vector<double>(inst.boxes.size(), t_paper));
    const SimResult sim = simulate(Policy::fixed(t_paper), profile, cfg);

    rep.rows.push_back(near("opt", opt, (e - 1.0) / (e - 2.0), 0.06));
    rep.rows.push_back(near("accept mass per box", br.accept_prob,
                            (n + 1.0) / (static_cast<double>(n) * n * n), 1e-12));
    rep.rows.push_back(near("mc payoff agreement", sim.payoff_mean, u,
                            4.0 * sim.payoff_stderr));
    rep.rows.push_back(near("strategic ratio", ratio,
                            (1.0 + 1.0 / e) * (e - 2.0) / (e - 1.0), 0.05));
    rep.rows.push_back(at_most("ratio vs deviation cap", ratio, 1.0 - 1.0 / e, 1e-6));
    rep.verdict = "deviation-cap";
    finish(rep);
    return rep;
}

CaseReport case_kw_robustness() {
    CaseReport rep{"kw-robustness", "half-expected-max threshold robustness"};
    rep.rows.push_back(suite_row(suite_kw_threshold(1000)));
    const Instance inst = make_general_tightness_instance(10, 1e-3, 1e6);
    const RobustnessReport r = check_kw_robustness(inst);
    const double cap = 0.5 * (1.0 - std::pow(1.0 - 1.0 / 9.0, 9.0));
    rep.rows.push_back(near("tightness instance ratio", r.ratio_strategic, cap, 0.02));
    rep.verdict = "holds";
    finish(rep);
    return rep;
}

CaseReport case_iid_robustness() {
    CaseReport rep{"iid-robustness", "IID fixed-point threshold robustness"};
    rep.rows.push_back(suite_row(suite_iid_fixed_point(500)));
    const Instance inst = hemh3_counterexample_priors();
    const RobustnessReport r = check_iid_robustness(inst.boxes[0], 3);
    rep.rows.push_back(near("three-box binary opt", r.opt, 19.0 / 27.0, kExact));
    rep.rows.push_back(at_least("three-box binary strategic ratio", r.ratio_strategic, 0.5));
    rep.verdict = "holds";
    finish(rep);
    return rep;
}

CaseReport case_logconcave() {
    CaseReport rep{"logconcave", "log-concave family half-robustness window"};
    for (int n : {2, 5, 10}) {
        std::vector<TabulatedDensity> densities(
            static_cast<std::size_t>(n),
            TabulatedDensity::from_function(+[](double) { return 1.0; }, 1024));
        const LogConcaveReport lc = logconcave_robustness_check(densities, 1.0, 0.0);
        const std::string tag = "(N=" + std::to_string(n) + ") ";
        rep.rows.push_back({tag + "family membership",
                            lc.log_concave_ok && lc.endpoint_value_ok && lc.endpoint_slope_ok &&
                                    lc.n_condition_ok
                                ? 1.0
                                : 0.0,
                            "1",
                            lc.log_concave_ok && lc.endpoint_value_ok && lc.endpoint_slope_ok &&
                                lc.n_condition_ok});
        rep.rows.push_back({tag + "product cdf convex", lc.product_convex_ok ? 1.0 : 0.0, "1",
                            lc.product_convex_ok});
        rep.rows.push_back({tag + "mass below expected max <= 1/2", lc.jensen_ok ? 1.0 : 0.0,
                            "1", lc.jensen_ok});
        rep.rows.push_back(near(tag + "t_kw", lc.t_kw, n / (2.0 * (n + 1.0)), kExact));
        rep.rows.push_back(near(tag + "t_sc", lc.t_sc, std::pow(0.5, 1.0 / n), kExact));
        rep.rows.push_back(at_most(tag + "2 t_kw vs t_sc", 2.0 * lc.t_kw, lc.t_sc));
        for (const auto& ev : lc.evals) {
            rep.rows.push_back(at_least(tag + "strategic ratio @" + fmt(ev.threshold),
                                        ev.ratio_strategic, 0.5));
            rep.rows.push_back(at_least(tag + "classic ratio @" + fmt(ev.threshold),
                                        ev.ratio_nonstrategic, 0.5));
        }
    }
    rep.verdict = "holds";
    finish(rep);
    return rep;
}

}  // namespace

std::vector<std::string> reproduce_case_ids() {
    return {"hem-2box",           "dp-3box",
            "median-3box",        "medianh-2box",
            "dph-3box",           "hemh-3box",
            "hemh-2box-positive", "dph-2box-positive",
            "general-tightness",  "iid-tightness",
            "iid-percentage",     "kw-robustness",
            "iid-robustness",     "logconcave"};
}

CaseReport reproduce_counterexample(const std::string& id) {
    if (id == "hem-2box") return case_hem_2box();
    if (id == "dp-3box") return case_dp_3box();
    if (id == "median-3box") return case_median_3box();
    if (id == "medianh-2box") return case_medianh_2box();
    if (id == "dph-3box") return case_dph_3box();
    if (id == "hemh-3box") return case_hemh_3box();
    if (id == "hemh-2box-positive") return case_positive_two_box(true);
    if (id == "dph-2box-positive") return case_positive_two_box(false);
    if (id == "general-tightness") return case_general_tightness();
    if (id == "iid-tightness") return case_iid_tightness();
    if (id == "iid-percentage") return case_iid_percentage();
    if (id == "kw-robustness") return case_kw_robustness();
    if (id == "iid-robustness") return case_iid_robustness();
    if (id == "logconcave") return case_logconcave();
    throw std::invalid_argument("unknown case id: " + id);
}

}  // namespace prophet
