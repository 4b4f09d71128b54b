#pragma once

// Gamma-ratio constants behind the closed-form energies of Euclidean balls.

namespace maxenergy::specfun {

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, nine coefficients; reflection below 0.5).
double log_gamma(double x);

/// b_p^(n) = sqrt(pi) Gamma((n+p)/2) / (Gamma((p+1)/2) Gamma(n/2)), for n >= 1 and 0 < p < 2.
///
/// This is the constant in ||x||_2^p = b_p^(n) * int_{S^{n-1}} |<x,t>|^p dlambda(t),
/// and equals pi_p(I_n)^p for the identity on l_2^n.
double b_coeff(int n, double p);

/// int_{S^{n-1}} |t_1|^p dlambda(t) = Gamma((p+1)/2) Gamma(n/2) / (sqrt(pi) Gamma((n+p)/2)), any p > 0.
double sphere_abs_moment(int n, double p);

/// (E|W|^p)^{1/p} for W centred Gaussian with variance 2 (characteristic function exp(-t^2)).
double gaussian_moment(double p);

/// Maximal p-energy of the Euclidean unit ball of R^n under d_2, given m_p (the interval value).
double closed_form_m_ball(int n, double p, double mp);

struct MomentConstants {
    int n;
    double p;
    double b;
    double c_sphere_p;
    double c_gauss;
};

MomentConstants moment_constants(int n, double p);

} // namespace maxenergy::specfun
