#include "maxenergy/stable.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "maxenergy/error.hpp"
#include "maxenergy/specfun.hpp"

namespace maxenergy {

namespace {

void require_index(double r)
{
    if (!(r >= 1.0 && r <= 2.0)) {
        std::ostringstream os;
        os << "stability index r must lie in [1, 2], got " << r;
        throw DomainError(os.str());
    }
}

void require_finite_moment(double r, double p)
{
    require_index(r);
    if (!(p > 0.0))
        throw DomainError("moment exponent p must be > 0");
    if (r < 2.0 && !(p < r)) {
        std::ostringstream os;
        os << "E|W|^p diverges for an r-stable law when p >= r (p = " << p << ", r = " << r << ")";
        throw DomainError(os.str());
    }
}

BatchAggregate aggregate_for(double r, double p)
{
    return (r < 2.0 && p / r >= kHeavyTailRatio) ? BatchAggregate::Median : BatchAggregate::Mean;
}

double ratio_std_error(const McEstimate& num, const McEstimate& den, double ratio)
{
    const double a = num.estimate != 0.0 ? num.std_error / num.estimate : 0.0;
    const double b = den.estimate != 0.0 ? den.std_error / den.estimate : 0.0;
    return std::abs(ratio) * std::sqrt(a * a + b * b);
}

} // namespace

double sample_stable_scalar(double r, Engine& eng)
{
    require_index(r);
    const double v = std::numbers::pi * (uniform_open(eng) - 0.5);
    if (r == 1.0)
        return std::tan(v);
    const double w = -std::log(uniform_open(eng));
    const double lead = std::sin(r * v) / std::pow(std::cos(v), 1.0 / r);
    return lead * std::pow(std::cos((1.0 - r) * v) / w, (1.0 - r) / r);
}

double sample_stable_scalar(const StableConfig& cfg)
{
    Engine eng = cfg.rng.engine();
    return sample_stable_scalar(cfg.r, eng);
}

McEstimate c_rp(double r, double p, std::size_t samples, const RngStream& rng)
{
    require_finite_moment(r, p);
    const McEstimate m = batch_estimate(
        samples, rng, [&](Engine& eng) { return std::pow(std::abs(sample_stable_scalar(r, eng)), p); },
        aggregate_for(r, p));
    const double c = std::pow(m.estimate, 1.0 / p);
    return {c, c / (p * m.estimate) * m.std_error, m.samples};
}

StabilityCheck verify_stability_identity(const Eigen::VectorXd& x, double r, double p,
                                         std::size_t samples, const RngStream& rng)
{
    require_finite_moment(r, p);
    if (x.size() == 0 || x.norm() == 0.0)
        throw DomainError("stability identity needs a non-zero vector");
    const Eigen::Index n = x.size();
    // Coordinates are weighted by |x_i|^p: a single large W_i then moves both
    // averages together, which tames the heavy tail of the ratio.
    Eigen::VectorXd weight = x.array().abs().pow(p);
    weight /= weight.sum();
    Eigen::VectorXd w(n);
    const McPair pair = batch_estimate_pair(
        samples, rng,
        [&](Engine& eng, double& projected, double& coordinate) {
            double moment = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                w[i] = sample_stable_scalar(r, eng);
                moment += weight[i] * std::pow(std::abs(w[i]), p);
            }
            projected = std::pow(std::abs(x.dot(w)), p);
            coordinate = moment;
        },
        aggregate_for(r, p));
    const double estimate = pair.first.estimate / pair.second.estimate;
    const double exact = std::pow(lr_norm(x, r), p);
    return {std::abs(estimate - exact) / exact, estimate, exact,
            ratio_std_error(pair.first, pair.second, estimate)};
}

McEstimate gub_upper_bound(const BodySpec& body, double r, double p, double mp, std::size_t samples,
                           const RngStream& rng)
{
    require_index(r);
    if (!(p > 0.0 && p < r)) {
        std::ostringstream os;
        os << "the stable-measure upper bound needs 0 < p < r, got p = " << p << ", r = " << r;
        throw DomainError(os.str());
    }
    if (!(mp > 0.0))
        throw DomainError("m_p estimate must be positive");
    const int n = body.dimension();
    Eigen::VectorXd w(n);

    if (r == 2.0) {
        const double cp = std::pow(specfun::gaussian_moment(p), p);
        const McEstimate e = batch_estimate(samples, rng, [&](Engine& eng) {
            for (int i = 0; i < n; ++i)
                w[i] = sample_stable_scalar(2.0, eng);
            return std::pow(body.dual_norm(w), p);
        });
        return {mp * e.estimate / cp, mp * e.std_error / cp, e.samples};
    }

    const McPair pair = batch_estimate_pair(
        samples, rng,
        [&](Engine& eng, double& dual, double& coordinate) {
            double moment = 0.0;
            for (int i = 0; i < n; ++i) {
                w[i] = sample_stable_scalar(r, eng);
                moment += std::pow(std::abs(w[i]), p);
            }
            dual = std::pow(body.dual_norm(w), p);
            coordinate = moment / static_cast<double>(n);
        },
        aggregate_for(r, p));
    const double ratio = pair.first.estimate / pair.second.estimate;
    return {mp * ratio, mp * ratio_std_error(pair.first, pair.second, ratio), pair.first.samples};
}

} // namespace maxenergy
