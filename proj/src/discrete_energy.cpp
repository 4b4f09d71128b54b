#include "maxenergy/discrete_energy.hpp"

#include <cmath>
#include <sstream>

#include "maxenergy/error.hpp"

namespace maxenergy {

std::string_view to_string(Method method)
{
    switch (method) {
    case Method::ClosedForm:
        return "closed-form";
    case Method::LinearSystem:
        return "linear-system";
    case Method::MonteCarlo:
        return "monte-carlo";
    }
    return "unknown";
}

void SignedAtomicMeasure::validate() const
{
    if (points.rows() == 0)
        throw DomainError("measure has no atoms");
    if (points.rows() != weights.size())
        throw DomainError("measure has different numbers of atoms and weights");
    const double mass = weights.sum();
    if (std::abs(mass - 1.0) > kMassTolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "measure must have total mass one, got " << mass;
        throw DomainError(os.str());
    }
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        for (Eigen::Index j = i + 1; j < points.rows(); ++j)
            if ((points.row(i) - points.row(j)).norm() <= kMinSeparation) {
                std::ostringstream os;
                os << "measure atoms " << i << " and " << j << " coincide";
                throw DomainError(os.str());
            }
}

void validate_exponents(double r, double p)
{
    std::ostringstream os;
    if (!(r >= 1.0 && r <= 2.0)) {
        os << "distance exponent r must lie in [1, 2] (d_r is not quasihypermetric for r > 2), got " << r;
        throw DomainError(os.str());
    }
    if (!(p > 0.0 && p < 2.0)) {
        os << "energy exponent p must satisfy 0 < p < 2 (m_p = +infinity for p >= 2), got " << p;
        throw DomainError(os.str());
    }
    if (r < 2.0 && !(p < r)) {
        os << "for r < 2 the energy exponent must satisfy p < r, got p = " << p << ", r = " << r;
        throw DomainError(os.str());
    }
}

namespace {

double lr_distance(const PointSet& points, Eigen::Index i, Eigen::Index j, double r)
{
    const Eigen::VectorXd diff = (points.row(i) - points.row(j)).transpose();
    return lr_norm(diff, r);
}

Eigen::VectorXd residual_extended(const Eigen::MatrixXd& D, const Eigen::VectorXd& x)
{
    const Eigen::Index n = D.rows();
    Eigen::VectorXd res(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        long double acc = 1.0L;
        for (Eigen::Index j = 0; j < n; ++j)
            acc -= static_cast<long double>(D(i, j)) * static_cast<long double>(x[j]);
        res[i] = static_cast<double>(acc);
    }
    return res;
}

long double quadratic_form_extended(const Eigen::MatrixXd& D, const Eigen::VectorXd& w)
{
    long double total = 0.0L;
    for (Eigen::Index i = 0; i < D.rows(); ++i) {
        long double row = 0.0L;
        for (Eigen::Index j = 0; j < D.cols(); ++j)
            row += static_cast<long double>(D(i, j)) * static_cast<long double>(w[j]);
        total += static_cast<long double>(w[i]) * row;
    }
    return total;
}

} // namespace

Eigen::MatrixXd distance_power_matrix(const PointSet& points, double r, double p)
{
    validate_exponents(r, p);
    const Eigen::Index m = points.rows();
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i + 1; j < m; ++j) {
            const double d = lr_distance(points, i, j, r);
            if (!(d > kMinSeparation)) {
                std::ostringstream os;
                os << "points " << i << " and " << j << " are closer than " << kMinSeparation
                   << " (distance " << d << ")";
                throw SolverError(SolverError::Kind::DuplicatePoints, os.str());
            }
            D(i, j) = D(j, i) = std::pow(d, p);
        }
    }
    return D;
}

OptimalMeasure max_energy_on_points(const PointSet& points, double r, double p)
{
    const Eigen::Index m = points.rows();
    if (m == 0)
        throw DomainError("point set is empty");
    const Eigen::MatrixXd D = distance_power_matrix(points, r, p);

    OptimalMeasure result;
    result.measure.points = points;
    if (m == 1) {
        result.measure.weights = Eigen::VectorXd::Ones(1);
        result.report = {0.0, Method::LinearSystem, std::nullopt, {{1, 0.0}}};
        return result;
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(D);
    const double rcond = lu.rcond();
    result.condition = rcond > 0.0 ? 1.0 / rcond : kInf;
    if (!(result.condition <= kConditionLimit)) {
        std::ostringstream os;
        os << "distance matrix is numerically singular (condition estimate " << result.condition
           << " > " << kConditionLimit << "); perturb or thin the point set";
        throw SolverError(SolverError::Kind::Singular, os.str());
    }

    Eigen::VectorXd x = lu.solve(Eigen::VectorXd::Ones(m));
    for (int round = 0; round < 2; ++round)
        x += lu.solve(residual_extended(D, x));

    long double mass = 0.0L;
    for (Eigen::Index i = 0; i < m; ++i)
        mass += static_cast<long double>(x[i]);
    if (!(mass > 0.0L))
        throw SolverError(SolverError::Kind::NotMaximum,
                          "stationary point is not a mass-one maximum (1' D^{-1} 1 <= 0)");

    result.measure.weights = (x.cast<long double>() / mass).cast<double>();
    const double value = static_cast<double>(1.0L / mass);
    result.double_sum = static_cast<double>(quadratic_form_extended(D, result.measure.weights));
    result.report = {value, Method::LinearSystem, std::nullopt, {{static_cast<std::size_t>(m), value}}};
    return result;
}

double energy_of_measure(const SignedAtomicMeasure& mu, double r, double p)
{
    mu.validate();
    if (mu.size() == 1) {
        validate_exponents(r, p);
        return 0.0;
    }
    return static_cast<double>(quadratic_form_extended(distance_power_matrix(mu.points, r, p), mu.weights));
}

double balance_defect(const SignedAtomicMeasure& mu)
{
    const Eigen::Index m = mu.weights.size();
    double worst = 0.0;
    for (Eigen::Index j = 0; j < m / 2; ++j)
        worst = std::max(worst, std::abs(mu.weights[j] - mu.weights[m - 1 - j]));
    return worst;
}

OptimalMeasure estimate_mp(double p, std::span<const std::size_t> grid_sizes, GridFamily family)
{
    if (!(p > 0.0 && p < 2.0)) {
        std::ostringstream os;
        os << "m_p is finite only for 0 < p < 2 (m_p = +infinity for p >= 2), got p = " << p;
        throw DomainError(os.str());
    }
    if (grid_sizes.empty())
        throw DomainError("estimate_mp needs at least one grid size");
    std::size_t previous = 0;
    for (std::size_t N : grid_sizes) {
        if (N < 3 || N % 2 == 0)
            throw DomainError("grid sizes must be odd and >= 3, got " + std::to_string(N));
        if (N <= previous)
            throw DomainError("grid sizes must be strictly increasing");
        previous = N;
    }

    OptimalMeasure best;
    std::vector<TracePoint> trace;
    for (std::size_t N : grid_sizes) {
        const PointSet grid = symmetric_grid(N, family);
        best = max_energy_on_points(grid, 2.0, p);
        trace.push_back({N, best.report.value});
    }
    best.report.trace = std::move(trace);
    return best;
}

namespace {

PointSet jittered(const BodySpec& body, const PointSet& points, std::uint64_t seed)
{
    Engine eng = RngStream{seed, 0x717e5ULL}.engine();
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    PointSet out = points;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        for (Eigen::Index d = 0; d < out.cols(); ++d)
            out(i, d) += kJitter * unit(eng);
        const double g = body.gauge(out.row(i).transpose());
        if (g > 1.0)
            out.row(i) /= g;
    }
    return out;
}

} // namespace

OptimalMeasure max_energy_in_body(const BodySpec& body, double r, double p,
                                  std::span<const std::size_t> resolutions, std::uint64_t seed,
                                  PointDesign design)
{
    validate_exponents(r, p);
    if (resolutions.empty())
        throw DomainError("max_energy_in_body needs at least one resolution");

    OptimalMeasure best;
    bool have_best = false;
    std::vector<TracePoint> trace;
    for (std::size_t N : resolutions) {
        const PointSet points = body_point_set(body, N, seed, design);
        OptimalMeasure run;
        try {
            run = max_energy_on_points(points, r, p);
        } catch (const SolverError& e) {
            if (e.kind() == SolverError::Kind::NotMaximum)
                throw;
            run = max_energy_on_points(jittered(body, points, seed ^ N), r, p);
        }
        trace.push_back({N, run.report.value});
        if (!have_best || run.report.value > best.report.value) {
            best = std::move(run);
            have_best = true;
        }
    }
    best.report.trace = std::move(trace);
    return best;
}

} // namespace maxenergy
