#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "polyhelm/boundary_data.hpp"
#include "polyhelm/geometry.hpp"

namespace polyhelm {

/// PDE parameter of the kernel family e^{i lambda z - i beta^2 zbar/lambda},
/// which satisfies dz dzbar q = beta^2 q, i.e. Lap q = 4 beta^2 q.
struct SpectralParams {
    double beta;
};

/// Trace and normal-derivative data attached to one side.
struct SideData {
    BoundaryDatum trace;              // q_i
    BoundaryDatum normal_derivative;  // dn q_i
    Side side;
};

/// value = mantissa * exp(log_scale); keeps the exponential growth of the
/// spectral integrands out of double range.
struct ScaledComplex {
    cplx mantissa = 0.0;
    double log_scale = 0.0;

    cplx value() const { return mantissa * std::exp(log_scale); }
    double log_abs() const {
        return mantissa == cplx(0.0) ? -1e300 : std::log(std::abs(mantissa)) + log_scale;
    }
};

namespace detail {

/// Affine exponent of the pulled-back kernel on a side:
/// -i lambda psi(tau) + i beta^2 conj(psi(tau))/lambda = c0 + mu * tau.
struct KernelExponent {
    cplx c0;
    cplx mu;
    double log_max;  // max over tau in [0,1] of the real part

    static KernelExponent make(const Side& s, cplx lambda, double beta) {
        if (lambda == cplx(0.0)) throw ZeroLambda("kernel undefined at lambda = 0");
        const cplx i(0.0, 1.0);
        const cplx c0 = -i * lambda * s.origin + i * beta * beta * std::conj(s.origin) / lambda;
        const cplx g = s.chord();
        const cplx mu = -i * lambda * g + i * beta * beta * std::conj(g) / lambda;
        return {c0, mu, c0.real() + std::max(0.0, mu.real())};
    }

    cplx at(double tau) const { return c0 + mu * tau; }
};

/// Kernel value at an endpoint computed from the vertex coordinate itself.
/// Adjacent sides share the vertex bits, so the two evaluations of a shared
/// corner agree exactly; the vertex Dirac cancellation then holds to the
/// rounding of the charge coefficients alone.
inline cplx vertex_exponent(const cplx& v, cplx lambda, double beta) {
    const cplx i(0.0, 1.0);
    return -i * lambda * v + i * beta * beta * std::conj(v) / lambda;
}

/// Scaled pairing <u, K>/exp(log_max) for the side kernel.
inline cplx scaled_datum_pairing(const BoundaryDatum& u, const Side& s,
                                 const KernelExponent& ke, cplx lambda, double beta) {
    cplx acc = 0.0;
    if (!u.smooth.empty()) {
        const auto moments = scaled_legendre_exp_moments(ke.mu, u.smooth.modes());
        // moments carry exp(mu(tau - tau_hat)); restore c0 + mu tau - log_max
        const double tau_hat = (ke.mu.real() > 0.0) ? 1.0 : 0.0;
        const cplx rest = std::exp(ke.c0 + ke.mu * tau_hat - ke.log_max);
        cplx smooth = 0.0;
        for (int m = 0; m < u.smooth.modes(); ++m)
            smooth += u.smooth.coefficients()[m] * moments[m];
        acc += smooth * rest;
    }
    for (const auto& pm : u.masses.masses()) {
        // <delta^{(j)}_e, K> = (-1)^j mu^j K(e)
        const cplx& v = (pm.endpoint == 0) ? s.origin : s.end;
        const cplx ke_v = vertex_exponent(v, lambda, beta);
        const double sign = (pm.order % 2 == 0) ? 1.0 : -1.0;
        cplx mu_pow = 1.0;
        for (int k = 0; k < pm.order; ++k) mu_pow *= ke.mu;
        acc += sign * pm.weight * mu_pow * std::exp(ke_v - ke.log_max);
    }
    return acc;
}

}  // namespace detail

/// Pulled-back kernel psi*(e^{-i lambda z' + i beta^2 zbar'/lambda})(tau).
inline cplx kernel(const Side& s, cplx lambda, double beta, double tau) {
    return std::exp(detail::KernelExponent::make(s, lambda, beta).at(tau));
}

/// Slope of the affine kernel exponent in tau.
inline cplx kernel_slope(const Side& s, cplx lambda, double beta) {
    return detail::KernelExponent::make(s, lambda, beta).mu;
}

/// Spectral function of one side,
///   rho_i = i |Gamma_i| [ <dn q, K> + (lambda e^{i a} + beta^2/(lambda e^{i a})) <q, K> ],
/// in scaled form.
inline ScaledComplex rho_scaled(const SideData& d, cplx lambda, double beta) {
    const auto ke = detail::KernelExponent::make(d.side, lambda, beta);
    const cplx ea = std::exp(cplx(0.0, d.side.alpha));
    const cplx coef = lambda * ea + beta * beta / (lambda * ea);
    const cplx pair_dq = detail::scaled_datum_pairing(d.normal_derivative, d.side, ke, lambda, beta);
    const cplx pair_q = detail::scaled_datum_pairing(d.trace, d.side, ke, lambda, beta);
    return {cplx(0.0, 1.0) * d.side.length * (pair_dq + coef * pair_q), ke.log_max};
}

inline cplx rho(const SideData& d, cplx lambda, double beta) {
    return rho_scaled(d, lambda, beta).value();
}

/// log of the decay envelope (1 + (|l| + b^2/|l|))^order * max_side |K|.
inline double rho_log_envelope(const Side& s, cplx lambda, double beta, int order) {
    const auto ke = detail::KernelExponent::make(s, lambda, beta);
    const double omega = std::abs(lambda) + beta * beta / std::abs(lambda);
    return order * std::log1p(omega) + ke.log_max;
}

inline double rho_envelope(const Side& s, cplx lambda, double beta, int order) {
    return std::exp(rho_log_envelope(s, lambda, beta, order));
}

/// Traces of the exact solution q = e^{i mu z - i beta^2 zbar/mu} on a side,
/// projected onto n_modes Legendre modes. The underlying field satisfies
/// dz dzbar q = beta^2 q for every mu != 0.
inline SideData exact_solution_traces(cplx mu, const Side& s, double beta, int n_modes) {
    if (mu == cplx(0.0)) throw ZeroMu("exact solution undefined at mu = 0");
    const cplx i(0.0, 1.0);
    const cplx nu = outward_normal(s);
    const cplx dn_factor = i * mu * nu - i * beta * beta * std::conj(nu) / mu;
    auto field = [&](double tau) {
        const cplx z = s.point(tau);
        return std::exp(i * mu * z - i * beta * beta * std::conj(z) / mu);
    };
    SideData out;
    out.side = s;
    out.trace.smooth = project_function(field, n_modes);
    out.normal_derivative.smooth =
        project_function([&](double t) { return dn_factor * field(t); }, n_modes);
    return out;
}

/// Exact-solution field and its normal derivative (oracle helpers).
inline cplx exact_solution_field(cplx mu, double beta, cplx z) {
    const cplx i(0.0, 1.0);
    return std::exp(i * mu * z - i * beta * beta * std::conj(z) / mu);
}

inline cplx exact_solution_directional(cplx mu, double beta, cplx z, cplx direction) {
    const cplx i(0.0, 1.0);
    return (i * mu * direction - i * beta * beta * std::conj(direction) / mu) *
           exact_solution_field(mu, beta, z);
}

}  // namespace polyhelm
