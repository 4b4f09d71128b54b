#include "maxenergy/embedding.hpp"

#include <cmath>
#include <sstream>

#include "maxenergy/error.hpp"
#include "maxenergy/specfun.hpp"

namespace maxenergy {

namespace {

void require_alpha(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream os;
        os << "snowflake exponent alpha must lie in (0, 1), got " << alpha;
        throw DomainError(os.str());
    }
}

} // namespace

SchoenbergRadius schoenberg_radius_points(const PointSet& points, double alpha)
{
    require_alpha(alpha);
    OptimalMeasure opt = max_energy_on_points(points, 2.0, 2.0 * alpha);
    return {std::sqrt(opt.report.value / 2.0), opt.report.value, std::move(opt.measure)};
}

SphericalEmbedding embed_snowflake(const PointSet& points, double alpha, double radius)
{
    require_alpha(alpha);
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw DomainError("embedding radius must be positive and finite");
    const Eigen::Index m = points.rows();
    if (m == 0)
        throw DomainError("point set is empty");

    // Squared snowflake distances d^{2 alpha}; duplicate points are rejected here.
    const Eigen::MatrixXd snow_sq = m > 1 ? distance_power_matrix(points, 2.0, 2.0 * alpha)
                                          : Eigen::MatrixXd::Zero(1, 1);
    const double r2 = radius * radius;
    const Eigen::MatrixXd gram = Eigen::MatrixXd::Constant(m, m, r2) - 0.5 * snow_sq;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    if (eig.info() != Eigen::Success)
        throw SolverError(SolverError::Kind::Singular, "Gram eigendecomposition failed");

    SphericalEmbedding out;
    out.radius = radius;
    out.alpha = alpha;
    out.gram_spectrum = eig.eigenvalues();
    out.gram_min_eigenvalue = out.gram_spectrum.minCoeff();
    if (out.gram_min_eigenvalue < -kPsdTolerance * r2) {
        std::ostringstream os;
        os << "radius " << radius << " is below the Schoenberg radius: Gram matrix has eigenvalue "
           << out.gram_min_eigenvalue << " < -" << kPsdTolerance << " R^2";
        throw RadiusError(out.gram_min_eigenvalue, radius, os.str());
    }

    const Eigen::VectorXd roots = out.gram_spectrum.cwiseMax(0.0).cwiseSqrt();
    out.coordinates = eig.eigenvectors() * roots.asDiagonal();

    for (Eigen::Index i = 0; i < m; ++i) {
        out.max_norm_residual = std::max(out.max_norm_residual, std::abs(out.coordinates.row(i).norm() - radius));
        for (Eigen::Index j = i + 1; j < m; ++j) {
            const double target = std::sqrt(snow_sq(i, j));
            const double got = (out.coordinates.row(i) - out.coordinates.row(j)).norm();
            out.max_distance_residual = std::max(out.max_distance_residual, std::abs(got - target));
        }
    }
    return out;
}

double radius_closed_form_ball(int n, double alpha, double mp)
{
    require_alpha(alpha);
    return std::sqrt(specfun::closed_form_m_ball(n, 2.0 * alpha, mp) / 2.0);
}

RadiusGrowthReport radius_growth_report(double q, double alpha, std::span<const int> dims,
                                        const SweepBudget& budget)
{
    require_alpha(alpha);
    if (!(q > 1.0 && q <= 2.0))
        throw DomainError("radius growth is reported for 1 < q <= 2");
    const SweepReport energy = sweep_lq_balls(q, 2.0 * alpha, dims, budget);

    RadiusGrowthReport report;
    report.q = q;
    report.alpha = alpha;
    report.mp = energy.mp;
    report.expected_slope = alpha / dual_exponent(q);
    for (const auto& row : energy.rows) {
        const double upper = std::sqrt(row.upper / 2.0);
        report.rows.push_back({row.n, std::sqrt(row.lower / 2.0), upper,
                               row.upper_std_error / (4.0 * upper), std::sqrt(row.discrete / 2.0),
                               row.lower_method});
    }
    // R = sqrt(M / 2) halves log-log slopes and shifts intercepts by -ln(2)/2.
    auto halve = [](SlopeFit f) {
        f.slope *= 0.5;
        f.std_error *= 0.5;
        f.ci_low *= 0.5;
        f.ci_high *= 0.5;
        f.intercept = 0.5 * f.intercept - 0.5 * std::log(2.0);
        return f;
    };
    report.lower_fit = halve(energy.lower_fit);
    report.upper_fit = halve(energy.upper_fit);
    return report;
}

} // namespace maxenergy
