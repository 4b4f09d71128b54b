#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "maxenergy/asymptotics.hpp"
#include "maxenergy/discrete_energy.hpp"

namespace maxenergy {

/// Isometric image of (X, d_2^alpha) on the sphere of radius R in R^m.
struct SphericalEmbedding {
    double radius = 0.0;
    double alpha = 0.0;
    Eigen::MatrixXd coordinates;  ///< row i is the image of point i; m x m
    Eigen::VectorXd gram_spectrum; ///< ascending eigenvalues of the Gram matrix
    double gram_min_eigenvalue = 0.0;
    double max_distance_residual = 0.0;
    double max_norm_residual = 0.0;
};

struct SchoenbergRadius {
    double radius = 0.0;
    double energy = 0.0;            ///< maximal 2 alpha energy of the point set
    SignedAtomicMeasure measure;    ///< maximizing measure
};

/// Gram eigenvalues below -kPsdTolerance R^2 mean the radius is too small.
inline constexpr double kPsdTolerance = 1e-8;

/// Smallest radius of a Hilbert sphere carrying (X, d_2^alpha) isometrically,
/// sqrt(M_{2 alpha}(X, d_2) / 2), for 0 < alpha < 1.
SchoenbergRadius schoenberg_radius_points(const PointSet& points, double alpha);

/// Embeds (X, d_2^alpha) on the sphere of radius `radius` from the Gram matrix
/// G_ij = R^2 - d(x_i, x_j)^{2 alpha} / 2. Throws RadiusError when G is not PSD.
SphericalEmbedding embed_snowflake(const PointSet& points, double alpha, double radius);

/// sqrt(m_{2 alpha} b_{2 alpha}^(n) / 2): the Schoenberg radius of (B_2^n, d_2^alpha).
double radius_closed_form_ball(int n, double alpha, double mp);

struct RadiusRow {
    int n = 0;
    double r_lower = 0.0;
    double r_upper = 0.0;
    double r_upper_std_error = 0.0;
    double r_discrete = 0.0;
    std::string lower_method;
};

struct RadiusGrowthReport {
    double q = 2.0;
    double alpha = 0.5;
    double mp = 1.0;
    double expected_slope = 0.0;   ///< alpha / q'
    std::vector<RadiusRow> rows;
    SlopeFit lower_fit;
    SlopeFit upper_fit;
};

/// Schoenberg radius bounds for (B_q^n, d_2^alpha), 1 < q <= 2, from the energy
/// bounds of sweep_lq_balls with p = 2 alpha.
RadiusGrowthReport radius_growth_report(double q, double alpha, std::span<const int> dims,
                                        const SweepBudget& budget);

} // namespace maxenergy
