#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxenergy/bodies.hpp"

namespace maxenergy {

/// Ordinary least-squares fit of log y against log x.
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;   ///< 95% confidence interval (Student t)
    double ci_high = 0.0;
};

SlopeFit fit_loglog_slope(std::span<const double> xs, std::span<const double> ys);

/// Resources for one sweep.
struct SweepBudget {
    std::size_t samples = 200000;     ///< Monte-Carlo draws per dimension
    std::size_t resolution = 600;     ///< points in the discrete lower-bound run
    std::uint64_t seed = 0;
    std::optional<double> mp;         ///< m_p; exact 1 for p = 1, otherwise grid-estimated
};

/// Lower bound for M_p(K, d_2) that follows from the Euclidean-ball formula.
///
/// For l_q balls with q <= 2 this uses n^{(q-2)/2q} B_2^n inside B_q^n; for q > 2 it
/// uses B_2^n inside B_q^n. Ellipsoids and intervals have no such reduction here.
std::optional<double> inclusion_lower_bound(const BodySpec& body, double p, double mp);

struct SweepRow {
    int n = 0;
    double lower = 0.0;
    std::string lower_method;   ///< "discrete", "inclusion" or "rotation-invariant"
    double lower_std_error = 0.0; ///< nonzero only for the Monte-Carlo rotation-invariant value
    double discrete = 0.0;      ///< linear-system value on body_point_set
    double upper = 0.0;
    double upper_std_error = 0.0;
    std::string upper_method;   ///< "closed-form" when the average is exact, else "monte-carlo"
};

struct SweepReport {
    std::string family;         ///< "q" (M_p(B_q^n, d_2)) or "r" (M_p(B_2^n, d_r))
    double parameter = 0.0;     ///< q or r
    double p = 0.0;
    double mp = 0.0;
    double expected_slope = 0.0;
    std::vector<SweepRow> rows;
    SlopeFit lower_fit;
    SlopeFit upper_fit;
};

/// m_p used for bounds: 1 for p = 1, otherwise estimate_mp on the default grids.
double resolve_mp(double p, const std::optional<double>& supplied);

/// M_p(B_q^n, d_2): upper m_p b_p^(n) E||t||_{q'}^p; lower is the larger of the
/// discrete value and the inclusion bound.
SweepReport sweep_lq_balls(double q, double p, std::span<const int> dims, const SweepBudget& budget);

/// M_p(B_2^n, d_r): upper is the stable-measure bound; lower is the larger of the
/// discrete value and an independent estimate of m_p c_{r,p}^{-p} E||W||_2^p, which
/// rotation-invariant measures attain on the Euclidean ball.
SweepReport sweep_lr_distances(double r, double p, std::span<const int> dims, const SweepBudget& budget);

} // namespace maxenergy
