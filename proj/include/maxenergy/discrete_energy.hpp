#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "maxenergy/bodies.hpp"

namespace maxenergy {

/// Finitely supported signed measure of total mass one.
struct SignedAtomicMeasure {
    PointSet points;          ///< one atom per row
    Eigen::VectorXd weights;  ///< same length as points.rows()

    int dimension() const { return static_cast<int>(points.cols()); }
    std::size_t size() const { return static_cast<std::size_t>(points.rows()); }

    /// Throws DomainError unless weights sum to 1 within 1e-10 and atoms are distinct.
    void validate() const;
};

enum class Method { ClosedForm, LinearSystem, MonteCarlo };

std::string_view to_string(Method method);

struct TracePoint {
    std::size_t resolution;
    double value;
};

struct EnergyReport {
    double value = 0.0;
    Method method = Method::LinearSystem;
    std::optional<double> std_error;
    std::vector<TracePoint> trace;
};

/// Maximizing measure on a finite point set together with solver diagnostics.
struct OptimalMeasure {
    SignedAtomicMeasure measure;
    EnergyReport report;
    double condition = 1.0;  ///< estimated 1-norm condition number of the distance matrix
    double double_sum = 0.0; ///< sum_ij w_i w_j D_ij recomputed from the returned weights
};

inline constexpr double kConditionLimit = 1e12;
inline constexpr double kMinSeparation = 1e-9;
inline constexpr double kMassTolerance = 1e-10;
/// Relative jitter applied once when a body point set yields a singular system.
inline constexpr double kJitter = 1e-6;

/// Checks 1 <= r <= 2, 0 < p < 2, and p < r when r < 2.
void validate_exponents(double r, double p);

/// D_ij = ||x_i - x_j||_r^p. Throws SolverError(DuplicatePoints) naming the first
/// pair closer than kMinSeparation.
Eigen::MatrixXd distance_power_matrix(const PointSet& points, double r, double p);

/// Stationary point of sum_ij w_i w_j D_ij on the hyperplane sum w = 1.
///
/// Solves D x = 1 by LU with partial pivoting (plus two rounds of refinement with
/// extended-precision residuals) and returns w = x / (1'x) with energy 1 / (1'x).
/// For 1 <= r <= 2 and p in range the kernel is conditionally negative definite,
/// so the stationary point is the unique maximum.
OptimalMeasure max_energy_on_points(const PointSet& points, double r, double p);

/// sum_ij w_i w_j ||x_i - x_j||_r^p.
double energy_of_measure(const SignedAtomicMeasure& mu, double r, double p);

/// max_j |w_j - w_{N+1-j}| for a measure on a sorted symmetric 1-D grid.
double balance_defect(const SignedAtomicMeasure& mu);

inline constexpr std::size_t kDefaultMpGrids[] = {41, 101, 401};

/// Grid estimate of m_p = M_p([-1,1], d_2). Each grid size must be odd and >= 3.
/// The report's trace lists one value per grid; the measure is the one for the last grid.
OptimalMeasure estimate_mp(double p, std::span<const std::size_t> grid_sizes,
                           GridFamily family = GridFamily::Chebyshev);

/// Certified lower bounds for M_p(K, d_r) from point sets of increasing size.
///
/// Each resolution uses body_point_set(body, resolution, seed). On a singular
/// system the points are jittered by kJitter (and pulled back into K) and the
/// solve is retried once. The report value is the best value over the trace and
/// the measure is the one attaining it.
OptimalMeasure max_energy_in_body(const BodySpec& body, double r, double p,
                                  std::span<const std::size_t> resolutions, std::uint64_t seed,
                                  PointDesign design = PointDesign::Layered);

} // namespace maxenergy
