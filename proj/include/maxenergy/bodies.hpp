#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "maxenergy/montecarlo.hpp"
#include "maxenergy/rng.hpp"

namespace maxenergy {

/// Point sets are stored one point per row.
using PointSet = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// ||v||_r for r in [1, inf].
double lr_norm(const Eigen::Ref<const Eigen::VectorXd>& v, double r);

/// Conjugate exponent q' with 1/q + 1/q' = 1; q = 1 maps to inf and inf to 1.
double dual_exponent(double q);

struct Interval {};

struct LqBall {
    int n;
    double q;
};

struct Ellipsoid {
    Eigen::MatrixXd map;                     ///< T, so that the body is T(B_2^n)
    Eigen::MatrixXd inverse;                 ///< T^{-1}
    std::optional<std::vector<double>> semi_axes;
};

/// A centrally symmetric convex body: [-1,1], the unit ball of l_q^n, or T(B_2^n).
class BodySpec {
public:
    enum class Kind { Interval, LqBall, Ellipsoid };

    static BodySpec interval();
    static BodySpec lq_ball(int n, double q);
    static BodySpec euclidean_ball(int n) { return lq_ball(n, 2.0); }
    static BodySpec ellipsoid(const std::vector<double>& semi_axes);
    static BodySpec ellipsoid(std::initializer_list<double> semi_axes)
    {
        return ellipsoid(std::vector<double>(semi_axes));
    }
    static BodySpec ellipsoid(const Eigen::MatrixXd& map);

    Kind kind() const;
    int dimension() const;

    const Interval* as_interval() const { return std::get_if<Interval>(&shape_); }
    const LqBall* as_lq_ball() const { return std::get_if<LqBall>(&shape_); }
    const Ellipsoid* as_ellipsoid() const { return std::get_if<Ellipsoid>(&shape_); }

    /// True for l_2 balls and interval: bodies where d_2 energies have an exact Gamma-ratio form.
    bool is_euclidean_ball() const;

    /// Minkowski functional ||x||_K; K = {x : gauge(x) <= 1}.
    double gauge(const Eigen::Ref<const Eigen::VectorXd>& x) const;

    /// Support function h_K(t) = ||t||_{E'}.
    double dual_norm(const Eigen::Ref<const Eigen::VectorXd>& t) const;

private:
    explicit BodySpec(std::variant<Interval, LqBall, Ellipsoid> shape) : shape_(std::move(shape)) {}

    std::variant<Interval, LqBall, Ellipsoid> shape_;
};

double dual_norm(const Eigen::Ref<const Eigen::VectorXd>& t, const BodySpec& body);

/// Width of the body in unit direction t, 2 ||t||_{E'}; rejects |t| != 1 beyond 1e-9.
double width(const Eigen::Ref<const Eigen::VectorXd>& t, const BodySpec& body);

/// Uniform point on S^{n-1} (normalised Gaussian vector).
Eigen::VectorXd sample_sphere(int n, Engine& eng);
Eigen::VectorXd sample_sphere(int n, const RngStream& rng);

/// int_{S^{n-1}} ||t||_{E'}^p dlambda(t).
McEstimate mean_width_power(const BodySpec& body, double p, std::size_t samples, const RngStream& rng);

/// int_{S^{n-1}} ||t||_r^p dlambda(t), r in [1, inf). Exact (1, 0) for r = 2 or n = 1.
McEstimate sphere_lr_moment(int n, double r, double p, std::size_t samples, const RngStream& rng);

/// pi_p(T)^p = (c_p^(n))^{-p} int_{S^{n-1}} ||T t||_2^p dlambda(t), for 0 < p < 2.
McEstimate pi_p_ellipsoid(const Eigen::MatrixXd& map, double p, std::size_t samples, const RngStream& rng);

enum class GridFamily { Chebyshev, Uniform };

/// Symmetric grid p_1 < ... < p_N on [-1, 1] with p_j = -p_{N+1-j} bit for bit.
///
/// Chebyshev-Lobatto nodes cluster toward the endpoints. Odd N includes 0.
Eigen::VectorXd symmetric_grid(std::size_t count, GridFamily family = GridFamily::Chebyshev);

enum class PointDesign {
    /// Scaled copies of the boundary (radii 1, 0.95, 0.9) sharing one direction set.
    Layered,
    /// Low-discrepancy fill of the bounding box, filtered to the body.
    Filtered,
};

inline constexpr double kLayerRadii[] = {1.0, 0.95, 0.9};

/// Deterministic point set of `count` points inside the body.
///
/// Starts with the boundary points on the coordinate axes, then adds points built
/// from a digitally shifted Sobol sequence. The set for a smaller count is a prefix
/// of the set for a larger count. One-dimensional bodies use a symmetric
/// Chebyshev-Lobatto grid instead.
PointSet body_point_set(const BodySpec& body, std::size_t count, std::uint64_t seed,
                        PointDesign design = PointDesign::Layered);

} // namespace maxenergy
