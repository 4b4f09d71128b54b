#include "maxenergy/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>
#include <boost/random/sobol.hpp>

#include "maxenergy/error.hpp"
#include "maxenergy/specfun.hpp"

namespace maxenergy {

double lr_norm(const Eigen::Ref<const Eigen::VectorXd>& v, double r)
{
    if (!(r >= 1.0))
        throw DomainError("l_r norm needs r >= 1");
    if (std::isinf(r))
        return v.cwiseAbs().maxCoeff();
    if (r == 1.0)
        return v.cwiseAbs().sum();
    if (r == 2.0)
        return v.norm();
    // Scale by the largest entry so that |v_i|^r neither overflows nor underflows.
    const double big = v.cwiseAbs().maxCoeff();
    if (big == 0.0)
        return 0.0;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        sum += std::pow(std::abs(v[i]) / big, r);
    return big * std::pow(sum, 1.0 / r);
}

double dual_exponent(double q)
{
    if (!(q >= 1.0))
        throw DomainError("exponent q must be >= 1");
    if (q == 1.0)
        return kInf;
    if (std::isinf(q))
        return 1.0;
    return q / (q - 1.0);
}

BodySpec BodySpec::interval() { return BodySpec(Interval{}); }

BodySpec BodySpec::lq_ball(int n, double q)
{
    if (n < 1)
        throw DomainError("l_q ball dimension must be >= 1");
    if (!(q >= 1.0))
        throw DomainError("l_q ball exponent must satisfy q >= 1");
    return BodySpec(LqBall{n, q});
}

BodySpec BodySpec::ellipsoid(const std::vector<double>& semi_axes)
{
    if (semi_axes.empty())
        throw DomainError("ellipsoid needs at least one semi-axis");
    const auto n = static_cast<Eigen::Index>(semi_axes.size());
    Eigen::MatrixXd map = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd inverse = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double a = semi_axes[static_cast<std::size_t>(i)];
        if (!(a > 0.0) || !std::isfinite(a))
            throw DomainError("ellipsoid semi-axes must be positive and finite");
        map(i, i) = a;
        inverse(i, i) = 1.0 / a;
    }
    return BodySpec(Ellipsoid{std::move(map), std::move(inverse), semi_axes});
}

BodySpec BodySpec::ellipsoid(const Eigen::MatrixXd& map)
{
    if (map.rows() == 0 || map.rows() != map.cols())
        throw DomainError("ellipsoid operator must be a non-empty square matrix");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(map);
    const auto& sv = svd.singularValues();
    if (!(sv.minCoeff() > 1e-12 * sv.maxCoeff()))
        throw DomainError("ellipsoid operator is degenerate (not full rank)");
    return BodySpec(Ellipsoid{map, map.inverse(), std::nullopt});
}

BodySpec::Kind BodySpec::kind() const
{
    return std::visit(
        [](const auto& s) -> Kind {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Interval>)
                return Kind::Interval;
            else if constexpr (std::is_same_v<S, LqBall>)
                return Kind::LqBall;
            else
                return Kind::Ellipsoid;
        },
        shape_);
}

int BodySpec::dimension() const
{
    if (as_interval())
        return 1;
    if (const auto* b = as_lq_ball())
        return b->n;
    return static_cast<int>(as_ellipsoid()->map.rows());
}

bool BodySpec::is_euclidean_ball() const
{
    if (as_interval())
        return true;
    const auto* b = as_lq_ball();
    return b && (b->q == 2.0 || b->n == 1);
}

namespace {

void require_dimension(const Eigen::Ref<const Eigen::VectorXd>& x, const BodySpec& body)
{
    if (x.size() != body.dimension()) {
        std::ostringstream os;
        os << "vector of dimension " << x.size() << " does not match body dimension " << body.dimension();
        throw DomainError(os.str());
    }
}

} // namespace

double BodySpec::gauge(const Eigen::Ref<const Eigen::VectorXd>& x) const
{
    require_dimension(x, *this);
    if (as_interval())
        return std::abs(x[0]);
    if (const auto* b = as_lq_ball())
        return lr_norm(x, b->q);
    return (as_ellipsoid()->inverse * x).norm();
}

double BodySpec::dual_norm(const Eigen::Ref<const Eigen::VectorXd>& t) const
{
    require_dimension(t, *this);
    if (as_interval())
        return std::abs(t[0]);
    if (const auto* b = as_lq_ball())
        return lr_norm(t, dual_exponent(b->q));
    return (as_ellipsoid()->map.transpose() * t).norm();
}

double dual_norm(const Eigen::Ref<const Eigen::VectorXd>& t, const BodySpec& body)
{
    return body.dual_norm(t);
}

double width(const Eigen::Ref<const Eigen::VectorXd>& t, const BodySpec& body)
{
    if (std::abs(t.norm() - 1.0) > 1e-9)
        throw DomainError("width needs a unit direction vector");
    return 2.0 * body.dual_norm(t);
}

Eigen::VectorXd sample_sphere(int n, Engine& eng)
{
    if (n < 1)
        throw DomainError("sphere dimension must be >= 1");
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd g(n);
    double norm = 0.0;
    do {
        for (int i = 0; i < n; ++i)
            g[i] = normal(eng);
        norm = g.norm();
    } while (norm == 0.0);
    return g / norm;
}

Eigen::VectorXd sample_sphere(int n, const RngStream& rng)
{
    Engine eng = rng.engine();
    return sample_sphere(n, eng);
}

McEstimate mean_width_power(const BodySpec& body, double p, std::size_t samples, const RngStream& rng)
{
    if (!(p > 0.0))
        throw DomainError("mean_width_power needs p > 0");
    const int n = body.dimension();
    Eigen::VectorXd t(n);
    return batch_estimate(samples, rng, [&](Engine& eng) {
        t = sample_sphere(n, eng);
        return std::pow(body.dual_norm(t), p);
    });
}

McEstimate sphere_lr_moment(int n, double r, double p, std::size_t samples, const RngStream& rng)
{
    if (n < 1)
        throw DomainError("sphere dimension must be >= 1");
    if (!(r >= 1.0) || std::isinf(r))
        throw DomainError("sphere_lr_moment needs 1 <= r < inf");
    if (!(p > 0.0))
        throw DomainError("sphere_lr_moment needs p > 0");
    if (samples < kMinSamples)
        throw DomainError("Monte-Carlo estimates need at least 100 samples");
    if (r == 2.0 || n == 1)
        return {1.0, 0.0, samples};
    return batch_estimate(samples, rng, [&](Engine& eng) {
        return std::pow(lr_norm(sample_sphere(n, eng), r), p);
    });
}

McEstimate pi_p_ellipsoid(const Eigen::MatrixXd& map, double p, std::size_t samples, const RngStream& rng)
{
    const BodySpec body = BodySpec::ellipsoid(map); // validates shape and rank
    const int n = body.dimension();
    const double moment = specfun::sphere_abs_moment(n, p);
    if (!(p < 2.0))
        throw DomainError("pi_p_ellipsoid needs 0 < p < 2");
    McEstimate avg = batch_estimate(samples, rng, [&](Engine& eng) {
        return std::pow((map * sample_sphere(n, eng)).norm(), p);
    });
    return {avg.estimate / moment, avg.std_error / moment, avg.samples};
}

Eigen::VectorXd symmetric_grid(std::size_t count, GridFamily family)
{
    if (count < 2)
        throw DomainError("symmetric grid needs at least 2 points");
    const auto N = static_cast<Eigen::Index>(count);
    Eigen::VectorXd x(N);
    const double denom = static_cast<double>(count - 1);
    for (Eigen::Index j = 0; j < N / 2; ++j) {
        const double s = static_cast<double>(j) / denom;
        x[j] = family == GridFamily::Chebyshev ? -std::cos(std::numbers::pi * s) : -1.0 + 2.0 * s;
        x[N - 1 - j] = -x[j];
    }
    if (N % 2 == 1)
        x[N / 2] = 0.0;
    return x;
}

namespace {

class ShiftedSobol {
public:
    ShiftedSobol(int dim, std::uint64_t seed) : dim_(dim), engine_(static_cast<std::size_t>(dim)), shift_(dim)
    {
        Engine eng = RngStream{seed, 0x50b01ULL}.engine();
        for (auto& s : shift_)
            s = eng();
    }

    /// Next point of the sequence in the open unit cube.
    Eigen::VectorXd next()
    {
        Eigen::VectorXd u(dim_);
        for (int d = 0; d < dim_; ++d) {
            const std::uint64_t v = static_cast<std::uint64_t>(engine_()) ^ shift_[static_cast<std::size_t>(d)];
            u[d] = (static_cast<double>(v >> 11) + 0.5) * 0x1.0p-53;
        }
        return u;
    }

private:
    int dim_;
    boost::random::sobol engine_;
    std::vector<std::uint64_t> shift_;
};

class SphereDirections {
public:
    SphereDirections(int n, std::uint64_t seed) : n_(n), sobol_(n == 2 ? 1 : n, seed) {}

    Eigen::VectorXd next()
    {
        const Eigen::VectorXd u = sobol_.next();
        if (n_ == 2) {
            const double angle = 2.0 * std::numbers::pi * u[0];
            return Eigen::Vector2d(std::cos(angle), std::sin(angle));
        }
        Eigen::VectorXd g(n_);
        for (int d = 0; d < n_; ++d)
            g[d] = std::numbers::sqrt2 * boost::math::erf_inv(2.0 * u[d] - 1.0);
        return g.normalized();
    }

private:
    int n_;
    ShiftedSobol sobol_;
};

double half_extent_1d(const BodySpec& body)
{
    if (const auto* e = body.as_ellipsoid())
        return std::abs(e->map(0, 0));
    return 1.0;
}

} // namespace

PointSet body_point_set(const BodySpec& body, std::size_t count, std::uint64_t seed, PointDesign design)
{
    if (count < 2)
        throw DomainError("a point set for an energy problem needs at least 2 points");
    const int n = body.dimension();
    if (n == 1)
        return half_extent_1d(body) * symmetric_grid(count, GridFamily::Chebyshev);

    PointSet points(static_cast<Eigen::Index>(count), n);
    Eigen::Index row = 0;
    auto push = [&](const Eigen::VectorXd& x) {
        if (row < points.rows())
            points.row(row++) = x.transpose();
    };

    for (int i = 0; i < n && row < points.rows(); ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Unit(n, i);
        e /= body.gauge(e);
        push(e);
        push(-e);
    }

    if (design == PointDesign::Layered) {
        SphereDirections dirs(n, seed);
        while (row < points.rows()) {
            const Eigen::VectorXd u = dirs.next();
            const Eigen::VectorXd boundary = u / body.gauge(u);
            for (double radius : kLayerRadii)
                push(radius * boundary);
        }
        return points;
    }

    // Filtered fill of the bounding box [-h_K(e_i), h_K(e_i)].
    Eigen::VectorXd half_box(n);
    for (int i = 0; i < n; ++i)
        half_box[i] = body.dual_norm(Eigen::VectorXd::Unit(n, i));
    ShiftedSobol sobol(n, seed);
    std::size_t attempts = 0;
    const std::size_t max_attempts = 10000 * count;
    while (row < points.rows()) {
        if (++attempts > max_attempts)
            throw DomainError("filtered point design rejects too many samples in this dimension; use the layered design");
        const Eigen::VectorXd x = (2.0 * sobol.next().array() - 1.0).matrix().cwiseProduct(half_box);
        if (body.gauge(x) <= 1.0)
            push(x);
    }
    return points;
}

} // namespace maxenergy
