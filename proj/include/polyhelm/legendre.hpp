#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "polyhelm/quadrature.hpp"

namespace polyhelm {

/// Shifted Legendre polynomial P~_m(tau) = P_m(2 tau - 1) on [0,1].
/// Orthogonality: int_0^1 P~_m P~_n = delta_mn / (2m+1).
inline double shifted_legendre(int m, double tau) {
    double x = 2.0 * tau - 1.0;
    double p0 = 1.0, p1 = x;
    if (m == 0) return p0;
    for (int k = 1; k < m; ++k) {
        double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// All P~_m(tau) for m < n.
inline void shifted_legendre_all(double tau, int n, double* out) {
    double x = 2.0 * tau - 1.0;
    if (n > 0) out[0] = 1.0;
    if (n > 1) out[1] = x;
    for (int m = 1; m + 1 < n; ++m)
        out[m + 1] = ((2 * m + 1) * x * out[m] - m * out[m - 1]) / (m + 1);
}

/// Scaled Legendre-exponential moments
///   Jt_m(mu) = int_0^1 P~_m(tau) exp(mu (tau - tau_hat)) dtau,
/// with tau_hat = 1 when Re mu > 0 else 0, so |Jt_m| <= 1.  The unscaled
/// moment is Jt_m * exp(mu * tau_hat).
///
/// Uses int_{-1}^{1} P_m(x) e^{z x} dx = 2 i_m(z) (modified spherical
/// Bessel), evaluated by Miller's downward recurrence which is stable for
/// all complex z; this stays accurate where fixed-size quadrature loses the
/// oscillation (|mu| in the thousands on collocation/evaluation tails).
inline std::vector<cplx> scaled_legendre_exp_moments(cplx mu, int n) {
    std::vector<cplx> out(n);
    if (n == 0) return out;
    const double tau_hat = (mu.real() > 0.0) ? 1.0 : 0.0;
    const cplx z = 0.5 * mu;
    const double az = std::abs(z);

    if (az < 1e-4) {
        // integrand is within O(1e-16) of a cubic in tau; a modest fixed
        // rule is exact at double precision for moderate mode counts
        for (int m = 0; m < n; ++m) {
            out[m] = gauss_integrate(
                [&](double t) {
                    return shifted_legendre(m, t) * std::exp(mu * (t - tau_hat));
                },
                0.0, 1.0, 32);
        }
        return out;
    }

    // downward recurrence b_{m-1} = b_{m+1} + ((2m+1)/z) b_m
    int mtop = n + static_cast<int>(az) + 32;
    cplx bp = 0.0;
    cplx b = 1e-280;
    std::vector<cplx> raw(n, 0.0);
    for (int m = mtop; m >= 1; --m) {
        cplx bm = bp + (double(2 * m + 1) / z) * b;
        bp = b;
        b = bm;
        if (m - 1 < n) raw[m - 1] = bm;
        if (std::abs(b.real()) > 1e250 || std::abs(b.imag()) > 1e250) {
            b *= 1e-250;
            bp *= 1e-250;
            for (auto& v : raw) v *= 1e-250;
        }
    }
    // normalise with scaled i_0(z) = e^{-|Re z|} sinh(z) / z
    const double rz = z.real();
    cplx i0s;
    if (rz >= 0.0)
        i0s = (std::exp(cplx(0.0, z.imag())) - std::exp(cplx(-2.0 * rz, -z.imag()))) / (2.0 * z);
    else
        i0s = (std::exp(cplx(2.0 * rz, z.imag())) - std::exp(cplx(0.0, -z.imag()))) / (2.0 * z);
    const cplx norm = i0s / b;
    // Jt_m = 2 i_m(z) e^{mu(1/2 - tau_hat)}; the real part of that exponent
    // cancels against the |Re z| scaling of i0s, a pure phase remains.
    const cplx phase = std::exp(cplx(0.0, mu.imag() * (0.5 - tau_hat)));
    for (int m = 0; m < n; ++m) out[m] = raw[m] * norm * phase;
    return out;
}

/// L2 projection of f onto shifted Legendre modes 0..n_modes-1 by
/// Gauss-Legendre quadrature with at least 2*n_modes nodes.
template <typename F>
std::vector<cplx> legendre_project(F&& f, int n_modes, double rel_tol = 1e-13) {
    int n0 = 64;
    while (n0 < 2 * (n_modes + 1)) n0 *= 2;
    std::vector<cplx> coef(n_modes);
    for (int m = 0; m < n_modes; ++m) {
        coef[m] = double(2 * m + 1) *
                  adaptive_gauss(
                      [&](double t) { return f(t) * shifted_legendre(m, t); },
                      rel_tol, n0, 1024);
    }
    return coef;
}

}  // namespace polyhelm
