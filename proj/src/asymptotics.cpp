#include "maxenergy/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "maxenergy/discrete_energy.hpp"
#include "maxenergy/error.hpp"
#include "maxenergy/specfun.hpp"
#include "maxenergy/stable.hpp"

namespace maxenergy {

SlopeFit fit_loglog_slope(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size() || xs.size() < 2)
        throw DomainError("slope fit needs at least two (x, y) pairs of equal length");
    const auto k = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0 && ys[i] > 0.0))
            throw DomainError("log-log fit needs positive data");
        mx += std::log(xs[i]);
        my += std::log(ys[i]);
    }
    mx /= k;
    my /= k;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = std::log(xs[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(ys[i]) - my);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (xs.size() > 2) {
        double sse = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double e = std::log(ys[i]) - fit.intercept - fit.slope * std::log(xs[i]);
            sse += e * e;
        }
        fit.std_error = std::sqrt(sse / (k - 2.0) / sxx);
        const boost::math::students_t dist(k - 2.0);
        const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
        fit.ci_low = fit.slope - t * fit.std_error;
        fit.ci_high = fit.slope + t * fit.std_error;
    } else {
        fit.ci_low = fit.ci_high = fit.slope;
    }
    return fit;
}

std::optional<double> inclusion_lower_bound(const BodySpec& body, double p, double mp)
{
    const auto* ball = body.as_lq_ball();
    if (!ball)
        return std::nullopt;
    const int n = ball->n;
    const double euclidean = specfun::closed_form_m_ball(n, p, mp);
    if (ball->q >= 2.0)
        return euclidean;
    const double q = ball->q;
    return std::pow(static_cast<double>(n), p * (q - 2.0) / (2.0 * q)) * euclidean;
}

double resolve_mp(double p, const std::optional<double>& supplied)
{
    if (supplied)
        return *supplied;
    if (p == 1.0)
        return 1.0;
    return estimate_mp(p, kDefaultMpGrids).report.value;
}

namespace {

void require_dims(std::span<const int> dims)
{
    if (dims.size() < 2)
        throw DomainError("a sweep needs at least two dimensions");
    for (int n : dims)
        if (n < 1)
            throw DomainError("sweep dimensions must be >= 1");
}

void fit_rows(SweepReport& report)
{
    std::vector<double> ns;
    std::vector<double> lo;
    std::vector<double> hi;
    for (const auto& row : report.rows) {
        ns.push_back(row.n);
        lo.push_back(row.lower);
        hi.push_back(row.upper);
    }
    report.lower_fit = fit_loglog_slope(ns, lo);
    report.upper_fit = fit_loglog_slope(ns, hi);
}

double discrete_value(const BodySpec& body, double r, double p, const SweepBudget& budget)
{
    const std::size_t res[] = {std::max<std::size_t>(budget.resolution, 2 * body.dimension() + 3)};
    return max_energy_in_body(body, r, p, res, budget.seed).report.value;
}

} // namespace

SweepReport sweep_lq_balls(double q, double p, std::span<const int> dims, const SweepBudget& budget)
{
    require_dims(dims);
    validate_exponents(2.0, p);
    SweepReport report;
    report.family = "q";
    report.parameter = q;
    report.p = p;
    report.mp = resolve_mp(p, budget.mp);
    report.expected_slope = q <= 2.0 ? p / dual_exponent(q) : std::nan("");

    for (std::size_t i = 0; i < dims.size(); ++i) {
        const int n = dims[i];
        const BodySpec body = BodySpec::lq_ball(n, q);
        SweepRow row;
        row.n = n;
        row.discrete = discrete_value(body, 2.0, p, budget);
        const double inclusion = inclusion_lower_bound(body, p, report.mp).value();
        if (row.discrete >= inclusion) {
            row.lower = row.discrete;
            row.lower_method = "discrete";
        } else {
            row.lower = inclusion;
            row.lower_method = "inclusion";
        }
        const McEstimate width = mean_width_power(body, p, budget.samples, RngStream{budget.seed, 100 + i});
        const double b = specfun::b_coeff(n, p);
        row.upper = report.mp * b * width.estimate;
        row.upper_std_error = report.mp * b * width.std_error;
        row.upper_method = width.std_error == 0.0 ? "closed-form" : "monte-carlo";
        report.rows.push_back(row);
    }
    fit_rows(report);
    return report;
}

SweepReport sweep_lr_distances(double r, double p, std::span<const int> dims, const SweepBudget& budget)
{
    require_dims(dims);
    validate_exponents(r, p);
    SweepReport report;
    report.family = "r";
    report.parameter = r;
    report.p = p;
    report.mp = resolve_mp(p, budget.mp);
    report.expected_slope = p / r;

    for (std::size_t i = 0; i < dims.size(); ++i) {
        const int n = dims[i];
        const BodySpec ball = BodySpec::euclidean_ball(n);
        SweepRow row;
        row.n = n;
        const McEstimate upper = gub_upper_bound(ball, r, p, report.mp, budget.samples, RngStream{budget.seed, 200 + i});
        row.upper = upper.estimate;
        row.upper_std_error = upper.std_error;
        row.upper_method = upper.std_error == 0.0 ? "closed-form" : "monte-carlo";
        row.discrete = discrete_value(ball, r, p, budget);
        const McEstimate invariant =
            gub_upper_bound(ball, r, p, report.mp, budget.samples, RngStream{budget.seed, 300 + i});
        if (row.discrete >= invariant.estimate) {
            row.lower = row.discrete;
            row.lower_method = "discrete";
        } else {
            row.lower = invariant.estimate;
            row.lower_std_error = invariant.std_error;
            row.lower_method = "rotation-invariant";
        }
        report.rows.push_back(row);
    }
    fit_rows(report);
    return report;
}

} // namespace maxenergy
