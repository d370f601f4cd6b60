#pragma once

#include <vector>

#include "prophet/classic.hpp"
#include "prophet/dist.hpp"
#include "prophet/signaling.hpp"

namespace prophet {

/// Searcher payoffs at one threshold in both worlds, against the prophet
/// value. The `*_ok` flags record whether asserted robustness bounds
/// held (populated by the check_* routines; a failed bound is reported,
/// never thrown).
struct RobustnessReport {
    double threshold = 0.0;
    double u_strategic = 0.0;
    double u_nonstrategic = 0.0;
    double opt = 0.0;
    double ratio_strategic = 1.0;
    double ratio_nonstrategic = 1.0;
    double bound_strategic = 0.0;
    double bound_nonstrategic = 0.0;
    bool strategic_ok = true;
    bool nonstrategic_ok = true;

    bool ok() const { return strategic_ok && nonstrategic_ok; }
};

/// Searcher's expected payoff under a threshold policy when every box
/// plays its optimal signaling response: a no-information box (mean >= T)
/// is accepted outright, a pooling box contributes T with its acceptance
/// probability, a conceding box contributes nothing.
double strategic_payoff(const Instance& inst, double T);

RobustnessReport robustness_report(const Instance& inst, double T);

/// Evaluates the half-expected-max threshold; asserts the strategic
/// ratio >= (1 - 1/e)/2 and the non-strategic ratio >= 1/2.
RobustnessReport check_kw_robustness(const Instance& inst);

/// Upper bound on the prophet value from the pooling cutoffs at
/// threshold T: p_I t_I + sum_i T (1 - p_i), I the box with the largest
/// cutoff. Requires T above every prior mean.
double opt_upper_bound_cutoffs(const Instance& inst, double T);

/// IID instance evaluated at the fixed-point threshold; asserts both
/// ratios >= 1/2.
RobustnessReport check_iid_robustness(const Dist& d, int n);

/// IID instance at the threshold induced by the rejection product
/// (1 - 1/N)^N; asserts the strategic ratio >= 1 - 1/e.
RobustnessReport check_iid_deviation_guarantee(const Dist& d, int n);

/// Point mass at N-1-eps followed by N-1 binary {0, s} boxes of mean 1.
Instance make_general_tightness_instance(int n, double eps, double s);

/// N IID two-point boxes on {N - a1, N + a2} with mean exactly N.
Instance make_iid_tightness_instance(int n, double a1, double a2);

/// n^2 IID three-atom boxes: n/(e-2) w.p. n^-3, 1 w.p. n^-1, else 0.
Instance make_percentage_instance(int n);

/// Density tabulated on a uniform grid over [0, 1]; trapezoid mass must
/// be 1 within 1e-6.
struct TabulatedDensity {
    std::vector<double> grid;
    std::vector<double> values;

    static TabulatedDensity from_function(double (*f)(double), int points);
    double step() const { return grid.size() > 1 ? grid[1] - grid[0] : 0.0; }
    void validate() const;
    /// Exact piecewise-linear-density distribution through the nodes
    /// (rescaled to unit mass).
    Dist to_dist() const;
};

struct LogConcaveReport {
    bool log_concave_ok = true;     // second differences of log f <= slack
    bool endpoint_value_ok = true;  // f(1) >= alpha
    bool endpoint_slope_ok = true;  // f'(1) >= -beta
    bool n_condition_ok = true;     // N >= 1 + beta / alpha^2
    bool product_convex_ok = true;  // product CDF has nonnegative second differences
    bool jensen_ok = true;          // product CDF at the expected max is at most 1/2
    bool spectrum_order_ok = true;  // 2 t_kw <= t_sc

    double t_kw = 0.0;
    double t_sc = 0.0;
    double opt = 0.0;

    struct Eval {
        double threshold = 0.0;
        double ratio_strategic = 0.0;
        double ratio_nonstrategic = 0.0;
        bool ok = false;  // both ratios >= 1/2
    };
    std::vector<Eval> evals;  // at 2 t_kw, the midpoint, and t_sc

    bool ok() const;
};

/// Verifies the family membership and regularity conditions for a list
/// of tabulated densities on [0, 1], then checks half-robustness of
/// every threshold between twice the half-expected-max and the median
/// threshold. Throws on a grid coarser than 1024 points or an
/// unnormalized density.
LogConcaveReport logconcave_robustness_check(const std::vector<TabulatedDensity>& densities,
                                             double alpha, double beta);

}  // namespace prophet
