#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace prophet {

/// Absolute tolerance for probability-mass checks.
inline constexpr double kMassTol = 1e-12;
/// Absolute tolerance for reward comparisons.
inline constexpr double kRewardTol = 1e-10;

/// Point mass at `value`.
struct Atom {
    double value = 0.0;
    double mass = 0.0;
};

/// Linear density on [lo, hi]: f(x) = f_lo + (f_hi - f_lo) * (x - lo) / (hi - lo).
struct Segment {
    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;

    double width() const { return hi - lo; }
    double slope() const { return (f_hi - f_lo) / (hi - lo); }
    double density_at(double x) const { return f_lo + slope() * (x - lo); }
    double mass() const { return 0.5 * (f_lo + f_hi) * (hi - lo); }
    /// Probability mass on [u, v] subseteq [lo, hi].
    double mass_between(double u, double v) const;
    /// First moment (integral of x f(x) dx) on [u, v] subseteq [lo, hi].
    double moment_between(double u, double v) const;
    /// Largest z in [lo, hi] such that the mass of [z, hi] equals `tail`.
    double cut_from_top(double tail) const;
    /// Smallest z in [lo, hi] such that the mass of [lo, z] equals `head`.
    double cut_from_bottom(double head) const;
};

struct ConditionalSplit {
    double below_mean = 0.0;  // E[X | X < t]
    double above_mean = 0.0;  // E[X | X >= t]
    double mass_below = 0.0;  // P(X < t)
};

/// A player's optimal response to a threshold stopping policy: either
/// reveal nothing, pool the top of the distribution into a posterior
/// that exactly meets the threshold, or (threshold above the support)
/// concede.
struct PoolingStrategy {
    enum class Kind { NoInformation, ThresholdSignaling, AlwaysRejected };

    Kind kind = Kind::NoInformation;
    double threshold = 0.0;                // searcher threshold responded to
    std::optional<double> cutoff;          // pooling cutoff, ThresholdSignaling only
    double partial_mass = 0.0;             // atom mass at the cutoff pooled upward
    double accept_prob = 1.0;              // probability of emitting the high signal
    std::optional<double> low_posterior;   // mean of the low signal, if any

    double reject_prob() const { return 1.0 - accept_prob; }
};

/// A finite reward distribution on [0, upper]: point masses plus
/// piecewise-linear density pieces. Immutable after construction; every
/// operation is a pure const member, so instances can be shared freely
/// across threads.
///
/// Construction normalizes the representation: atoms are merged and
/// sorted, segments are sorted and split at interior atom positions,
/// zero-mass pieces are dropped. Total mass must be 1 within kMassTol
/// (or pass normalize = true to rescale).
class Dist {
  public:
    Dist(std::vector<Atom> atoms, std::vector<Segment> segments, bool normalize = false);

    static Dist point(double v);
    static Dist uniform(double a, double b);
    static Dist discrete(std::vector<std::pair<double, double>> value_mass);
    /// Two-point distribution with the given mean: mass is placed on
    /// {lo, hi} so that the expectation equals `mean`.
    static Dist two_point(double lo, double hi, double mean);
    static Dist linear(double lo, double hi, double f_lo, double f_hi);
    static Dist mixture(const std::vector<double>& weights, const std::vector<Dist>& components);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<Segment>& segments() const { return segments_; }

    double upper() const { return upper_; }
    double lower() const { return lower_; }
    double mean() const { return mean_; }
    bool is_continuous() const { return atoms_.empty(); }
    bool is_point_mass() const { return segments_.empty() && atoms_.size() == 1; }

    /// Right-continuous CDF, P(X <= x).
    double cdf(double x) const;
    /// Left limit of the CDF, P(X < x).
    double cdf_left(double x) const;
    /// Mass of the atom exactly at x (0 if none).
    double atom_mass_at(double x) const;
    /// Segment whose interior contains x, or nullptr.
    const Segment* segment_at(double x) const;
    bool has_density_at(double x) const { return segment_at(x) != nullptr; }

    /// Integral of x dH over (t, upper] (include_atom = false) or
    /// [t, upper] (include_atom = true).
    double upper_tail_value(double t, bool include_atom) const;
    /// P(X > t) or P(X >= t).
    double upper_tail_mass(double t, bool include_atom) const;
    /// E[(X - t)^+].
    double excess(double t) const;

    /// Mean of the top-w probability mass, splitting an atom
    /// proportionally when w falls inside it. Nonincreasing in w;
    /// superquantile(1) == mean(). Requires 0 < w <= 1.
    double superquantile(double w) const;

    /// Generalized inverse CDF, inf{x : H(x) >= u}.
    double quantile(double u) const;
    /// inf{c : P(X >= c) <= 1/2}.
    double lower_median() const;

    /// (E[X | X < t], E[X | X >= t], P(X < t)); t must lie strictly
    /// inside the support so that both conditional means exist.
    ConditionalSplit conditional_split(double t) const;

    /// Inverse-CDF sample from a uniform draw u in [0, 1).
    double sample(double u) const;

    /// Top-of-distribution pooling: the largest mass w whose mean equals
    /// `target_mean`, i.e. sup{w : superquantile(w) >= target_mean},
    /// together with the cut location. When the cut lands exactly
    /// between pieces the cutoff reported is the lowest value inside the
    /// pooled region (with the full atom mass there when it is an atom).
    /// Requires mean() < target_mean <= upper().
    struct TopPool {
        double mass = 0.0;          // accepted (pooled) probability mass
        double cutoff = 0.0;        // pooling cutoff t
        double partial_mass = 0.0;  // atom mass at the cutoff pooled upward
    };
    TopPool pool_top(double target_mean) const;
    /// Smallest mass w with superquantile(w) == target_mean (the other
    /// end of a pooling plateau; equals pool_top().mass generically).
    double pool_top_min(double target_mean) const;

    std::string describe() const;

  private:
    struct Piece {
        double lo = 0.0, hi = 0.0;  // atom: lo == hi == value
        double mass = 0.0;
        double moment = 0.0;
        bool atom = false;
        int segment_index = -1;
        double cum_mass = 0.0;    // inclusive ascending prefix
        double cum_moment = 0.0;
    };

    void build_pieces();
    void validate() const;

    // Index of first piece whose inclusive prefix mass reaches u.
    std::size_t piece_for_cum(double u) const;
    // Index of first piece with lo > x (strict: lo >= x).
    std::size_t first_piece_above(double x, bool strict) const;

    TopPool pool_top_impl(double target_mean, bool maximal) const;

    std::vector<Atom> atoms_;
    std::vector<Segment> segments_;
    std::vector<Piece> pieces_;
    double lower_ = 0.0;
    double upper_ = 0.0;
    double mean_ = 0.0;
    double total_mass_ = 0.0;
};

/// Breakpoints (atom positions and segment endpoints) of one or more
/// distributions, merged, sorted, deduplicated, with 0 and `top`
/// included.
std::vector<double> merged_breakpoints(const std::vector<const Dist*>& dists, double top);

}  // namespace prophet
