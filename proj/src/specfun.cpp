#include "maxenergy/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "maxenergy/error.hpp"

namespace maxenergy::specfun {

namespace {

// Lanczos approximation with g = 7 and nine terms (Godfrey's coefficients).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

double log_gamma_lanczos(double x)
{
    x -= 1.0;
    double a = kLanczosCoeffs[0];
    for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i)
        a += kLanczosCoeffs[i] / (x + static_cast<double>(i));
    const double t = x + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t + std::log(a);
}

void require_dimension(int n)
{
    if (n < 1)
        throw DomainError("dimension must be >= 1, got " + std::to_string(n));
}

void require_energy_exponent(double p)
{
    if (!(p > 0.0 && p < 2.0)) {
        std::ostringstream os;
        os << "energy exponent p must satisfy 0 < p < 2 (m_p = +infinity for p >= 2), got " << p;
        throw DomainError(os.str());
    }
}

void require_positive_exponent(double p)
{
    if (!(p > 0.0)) {
        std::ostringstream os;
        os << "moment exponent p must be > 0, got " << p;
        throw DomainError(os.str());
    }
}

// ln( sqrt(pi) Gamma((n+p)/2) / (Gamma((p+1)/2) Gamma(n/2)) )
double log_b(int n, double p)
{
    const double half_n = 0.5 * static_cast<double>(n);
    return 0.5 * std::log(std::numbers::pi) + log_gamma(half_n + 0.5 * p) -
           log_gamma(0.5 * (p + 1.0)) - log_gamma(half_n);
}

// Above this many recurrence steps the ratio is taken in log space instead.
constexpr int kMaxRecurrenceSteps = 512;

// b_p^(n) by the recurrence Gamma(x + 1) = x Gamma(x) down to n = 1 or n = 2, so
// that rational cases such as b_1^(3) = 2 come out exact.
double b_value(int n, double p)
{
    const int base = n % 2 == 1 ? 1 : 2;
    const int steps = (n - base) / 2;
    if (steps > kMaxRecurrenceSteps)
        return std::exp(log_b(n, p));
    double value = base == 1 ? 1.0 : std::exp(log_b(2, p));
    const double top = 0.5 * (base + p);
    const double bottom = 0.5 * base;
    for (int k = 0; k < steps; ++k)
        value *= (top + k) / (bottom + k);
    return value;
}

} // namespace

double log_gamma(double x)
{
    if (!(x > 0.0) || !std::isfinite(x)) {
        std::ostringstream os;
        os << "log_gamma requires x > 0, got " << x;
        throw DomainError(os.str());
    }
    if (x < 0.5) {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
               log_gamma_lanczos(1.0 - x);
    }
    return log_gamma_lanczos(x);
}

double b_coeff(int n, double p)
{
    require_dimension(n);
    require_energy_exponent(p);
    return b_value(n, p);
}

double sphere_abs_moment(int n, double p)
{
    require_dimension(n);
    require_positive_exponent(p);
    return 1.0 / b_value(n, p);
}

double gaussian_moment(double p)
{
    require_positive_exponent(p);
    const double log_ratio = log_gamma(0.5 * (1.0 + p)) - 0.5 * std::log(std::numbers::pi);
    return 2.0 * std::exp(log_ratio / p);
}

double closed_form_m_ball(int n, double p, double mp)
{
    if (!(mp > 0.0))
        throw DomainError("m_p estimate must be positive");
    return mp * b_coeff(n, p);
}

MomentConstants moment_constants(int n, double p)
{
    return {n, p, b_coeff(n, p), sphere_abs_moment(n, p), gaussian_moment(p)};
}

} // namespace maxenergy::specfun
