#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "maxenergy/bodies.hpp"
#include "maxenergy/montecarlo.hpp"
#include "maxenergy/rng.hpp"

namespace maxenergy {

/// Symmetric r-stable law with characteristic function exp(-|t|^r), 1 <= r <= 2.
/// r = 1 is the standard Cauchy law; r = 2 is the centred Gaussian of variance 2.
struct StableConfig {
    double r = 2.0;
    int n = 1;
    RngStream rng;
};

/// Chambers-Mallows-Stuck draw.
double sample_stable_scalar(double r, Engine& eng);

/// One draw from the config's stream.
double sample_stable_scalar(const StableConfig& cfg);

/// Median-of-batches aggregation is used once p / r reaches this ratio (r < 2).
inline constexpr double kHeavyTailRatio = 0.75;

/// c_{r,p} = (E|W|^p)^{1/p}. Needs p < r when r < 2 (the moment diverges otherwise).
McEstimate c_rp(double r, double p, std::size_t samples, const RngStream& rng);

struct StabilityCheck {
    double relative_error;  ///< |c_{r,p}^{-p} E|<x,W>|^p - ||x||_r^p| / ||x||_r^p
    double estimate;        ///< c_{r,p}^{-p} E|<x,W>|^p
    double exact;           ///< ||x||_r^p
    double std_error;       ///< standard error of `estimate`
};

/// Checks ||x||_r^p = c_{r,p}^{-p} E|<x,W>|^p with W of i.i.d. r-stable coordinates.
///
/// Both moments are estimated from the same draws of W; c_{r,p}^p is the average of
/// |W_i|^p over the coordinates, weighted by |x_i|^p / ||x||_p^p.
StabilityCheck verify_stability_identity(const Eigen::VectorXd& x, double r, double p,
                                         std::size_t samples, const RngStream& rng);

/// Upper bound m_p c_{r,p}^{-p} E ||W||_{E'}^p for M_p(B_E, d_r), 0 < p < r <= 2.
McEstimate gub_upper_bound(const BodySpec& body, double r, double p, double mp, std::size_t samples,
                           const RngStream& rng);

} // namespace maxenergy
