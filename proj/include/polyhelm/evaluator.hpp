#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "polyhelm/boundary_data.hpp"
#include "polyhelm/geometry.hpp"
#include "polyhelm/global_relation.hpp"
#include "polyhelm/spectral.hpp"

namespace polyhelm {

/// Ray lambda(s) = direction * beta * e^s of side i, arg = -alpha_i,
/// with dlambda/lambda = ds under the log substitution.
struct RaySpec {
    int side;
    cplx direction;
    double s_min;
    double s_max;

    cplx lambda(double s) const { return direction * std::exp(s); }  // direction carries beta
};

struct EvalReport {
    double achieved_tol = 0.0;  // worst relative trapezoid change across sides
    double s_star = 0.0;        // largest |s| used
    long integrand_evals = 0;
};

struct GridField {
    struct Sample {
        cplx z;
        cplx value;
    };
    std::vector<Sample> samples;
    double beta = 0.0;
    double tol = 0.0;
};

namespace detail {

inline int max_datum_order(const std::vector<SideData>& data) {
    int mo = 0;
    for (const auto& d : data) {
        mo = std::max(mo, d.trace.masses.max_order());
        mo = std::max(mo, d.normal_derivative.masses.max_order());
    }
    return mo;
}

/// Exponent of the forward kernel e^{i lambda z - i beta^2 zbar / lambda}.
inline cplx forward_exponent(cplx z, cplx lambda, double beta) {
    const cplx i(0.0, 1.0);
    return i * lambda * z - i * beta * beta * std::conj(z) / lambda;
}

struct RayWindow {
    double lo = 0.0, hi = 0.0;
    bool empty = true;
    bool truncated_at_cap = false;
};

/// Locate the s-window where the (envelope x forward kernel) bound of one
/// side's ray integrand stays above tol relative to its own peak.
template <typename LogBound>
RayWindow ray_window(LogBound&& log_bound, double tol, double scan_cap = 18.0,
                     double step = 0.25) {
    double peak = -1e300;
    const int m = static_cast<int>(scan_cap / step);
    std::vector<double> vals(2 * m + 1);
    for (int k = -m; k <= m; ++k) {
        vals[k + m] = log_bound(k * step);
        peak = std::max(peak, vals[k + m]);
    }
    RayWindow w;
    if (peak <= -1e299) return w;
    const double floor_log = peak + std::log(tol) - 5.0;
    int klo = -m, khi = m;
    while (klo < m && vals[klo + m] < floor_log) ++klo;
    while (khi > -m && vals[khi + m] < floor_log) --khi;
    if (klo > khi) return w;
    w.empty = false;
    w.truncated_at_cap = (klo == -m) || (khi == m);
    w.lo = (klo - 1) * step;
    w.hi = (khi + 1) * step;
    return w;
}

}  // namespace detail

/// Interior evaluation of the representation
///   Q(z) = (1/4 pi i) sum_i int_{l_i} e^{i lambda z - i beta^2 zbar/lambda}
///          rho_i(lambda) dlambda/lambda
/// by the log substitution and trapezoid refinement per ray. `weight` is an
/// optional spectral multiplier g(lambda) (1 for the field itself).
inline cplx evaluate_weighted(const Polygon& poly, double beta,
                              const std::vector<SideData>& data, cplx z, double tol,
                              const std::function<cplx(cplx)>& weight,
                              int weight_order, EvalReport* report) {
    const double dist = poly.signed_boundary_distance(z);
    if (dist <= 0.0) throw PointNotInterior("evaluation point is not interior");
    const bool near_boundary = dist < 1e-2 * poly.diameter();
    const int env_order = detail::max_datum_order(data) + 1 + weight_order;

    cplx total = 0.0;
    EvalReport rep;
    for (size_t j = 0; j < data.size(); ++j) {
        if (data[j].trace.empty() && data[j].normal_derivative.empty()) continue;
        const Side& sj = poly.side(static_cast<int>(j));
        const cplx dir = beta * std::exp(cplx(0.0, -sj.alpha));
        auto log_bound = [&](double s) {
            const cplx lam = dir * std::exp(s);
            return rho_log_envelope(sj, lam, beta, env_order) +
                   detail::forward_exponent(z, lam, beta).real();
        };
        const auto win = detail::ray_window(log_bound, tol);
        if (win.empty) continue;
        if (win.truncated_at_cap && !near_boundary)
            throw TruncationFailure("ray envelope does not decay below tolerance");
        auto f = [&](double s) {
            ++rep.integrand_evals;
            const cplx lam = dir * std::exp(s);
            const ScaledComplex r = rho_scaled(data[j], lam, beta);
            const cplx expo = detail::forward_exponent(z, lam, beta);
            const double re = expo.real() + r.log_scale;
            if (re < -700.0) return cplx(0.0);
            return r.mantissa * weight(lam) * std::exp(cplx(re, expo.imag()));
        };
        const auto [val, change] = trapezoid_refine(f, win.lo, win.hi, 0.25, tol * 0.25, 14);
        total += val;
        rep.achieved_tol =
            std::max(rep.achieved_tol, change / std::max(std::abs(val), 1e-300));
        rep.s_star = std::max({rep.s_star, std::abs(win.lo), std::abs(win.hi)});
    }
    if (report) *report = rep;
    return total / (cplx(0.0, 4.0 * M_PI));
}

inline cplx evaluate(const Polygon& poly, double beta, const std::vector<SideData>& data,
                     cplx z, double tol = 1e-8, EvalReport* report = nullptr) {
    return evaluate_weighted(poly, beta, data, z, tol, [](cplx) { return cplx(1.0); }, 0,
                             report);
}

/// Outward-normal derivative of Q at the inset point psi_i(tau) - eps nu,
/// differentiating under the integral sign (factor i lambda nu - i beta^2
/// nubar / lambda).
inline cplx evaluate_normal_derivative_near(const Polygon& poly, double beta,
                                            const std::vector<SideData>& data, int i,
                                            double tau, double eps, double tol = 1e-8,
                                            EvalReport* report = nullptr) {
    const Side& s = poly.side(i);
    const cplx nu = outward_normal(s);
    const cplx z = s.point(tau) - eps * nu;
    const cplx i_(0.0, 1.0);
    return evaluate_weighted(
        poly, beta, data, z, tol,
        [=](cplx lam) { return i_ * lam * nu - i_ * beta * beta * std::conj(nu) / lam; }, 1,
        report);
}

namespace detail {

/// Scaled transform of a test function along the eps-inset of side i:
///   I(lambda) = int_0^1 phi(tau) e^{i lambda psi^eps(tau) - i b^2 conj/lambda} dtau.
/// Returns mantissa with |integrand| <= 1 and the log scale. Node count
/// follows the phase velocity |mu|; beyond the cap the integration-by-parts
/// bound guarantees the value is negligible, so 0 is returned.
inline ScaledComplex bump_side_transform(const Side& s, double eps, const TestFunction& phi,
                                         cplx lambda, double beta) {
    const cplx nu = outward_normal(s);
    const cplx z0 = s.origin - eps * nu;
    const cplx i(0.0, 1.0);
    const cplx c0 = i * lambda * z0 - i * beta * beta * std::conj(z0) / lambda;
    const cplx g = s.chord();
    const cplx mu = i * lambda * g - i * beta * beta * std::conj(g) / lambda;
    const double log_max = c0.real() + std::max(0.0, mu.real());
    const double amu = std::abs(mu);
    int nodes = 64;
    while (nodes < amu && nodes < 2048) nodes *= 2;
    if (nodes >= 2048 && amu > 1400.0) return {0.0, log_max};
    const GaussRule& rule = gauss_rule(nodes);
    cplx acc = 0.0;
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
        const double t = rule.nodes[q];
        const double ph = phi(t);
        if (ph == 0.0) continue;
        acc += rule.weights[q] * ph * std::exp(c0 + mu * t - log_max);
    }
    return {acc, log_max};
}

/// log of the integration-by-parts bound for the bump transform:
/// min_m sup|phi^{(m)}| / |mu|^m  times max |kernel|.
inline double bump_transform_log_bound(const Side& s, double eps, const TestFunction& phi,
                                       cplx lambda, double beta) {
    const cplx nu = outward_normal(s);
    const cplx z0 = s.origin - eps * nu;
    const cplx i(0.0, 1.0);
    const cplx c0 = i * lambda * z0 - i * beta * beta * std::conj(z0) / lambda;
    const cplx g = s.chord();
    const cplx mu = i * lambda * g - i * beta * beta * std::conj(g) / lambda;
    const double log_max = c0.real() + std::max(0.0, mu.real());
    const double lmu = std::log(std::max(std::abs(mu), 1e-300));
    double best = std::log(phi.derivative_sup(0) + 1e-300);
    for (int m = 1; m <= phi.max_order(); ++m)
        best = std::min(best, std::log(phi.derivative_sup(m) + 1e-300) - m * lmu);
    return best + log_max;
}

}  // namespace detail

/// One side's ray integral of rho_j against the inset bump transform of
/// side i, over the ray arg(lambda) = ray_arg:
///   int rho_j(lambda) [int phi psi_i^eps*(e^{i lambda z - ...}) dtau] dlambda/lambda.
/// This is the integrand family of the trace limit; the deformation
/// identity moves ray_arg from -alpha_j to pi - alpha_i without changing it.
inline cplx weighted_ray_integral(const Polygon& poly, double beta,
                                  const std::vector<SideData>& data, int j, double ray_arg,
                                  int i, const TestFunction& phi, double eps, double tol) {
    const Side& sj = poly.side(j);
    const Side& si = poly.side(i);
    const cplx dir = beta * std::exp(cplx(0.0, ray_arg));
    const int env_order = detail::max_datum_order(data) + 1;
    auto log_bound = [&](double s) {
        const cplx lam = dir * std::exp(s);
        return rho_log_envelope(sj, lam, beta, env_order) +
               detail::bump_transform_log_bound(si, eps, phi, lam, beta);
    };
    const auto win = detail::ray_window(log_bound, tol, 14.0);
    if (win.empty) return 0.0;
    auto f = [&](double s) {
        const cplx lam = dir * std::exp(s);
        const ScaledComplex r = rho_scaled(data[j], lam, beta);
        const ScaledComplex inner = detail::bump_side_transform(si, eps, phi, lam, beta);
        const double re = r.log_scale + inner.log_scale;
        if (re < -700.0) return cplx(0.0);
        return r.mantissa * inner.mantissa * std::exp(re);
    };
    return trapezoid_refine(f, win.lo, win.hi, 0.1, tol * 0.25, 12).first;
}

/// Distributional trace pairing <Q_i^eps, phi> =
/// int_0^1 Q(psi_i^eps(tau)) phi(tau) dtau, computed with the lambda and tau
/// integrals interchanged (the representation converges absolutely, which
/// is what justifies the trace limit in the first place).
inline cplx trace_pairing(const Polygon& poly, double beta, const std::vector<SideData>& data,
                          int i, const TestFunction& phi, double eps, double tol = 1e-8) {
    const Side& si = poly.side(i);
    const cplx nu = outward_normal(si);
    if (!poly.contains(si.point(0.5) - eps * nu))
        throw PointNotInterior("inset side is not interior");
    cplx total = 0.0;
    for (size_t j = 0; j < data.size(); ++j) {
        if (data[j].trace.empty() && data[j].normal_derivative.empty()) continue;
        total += weighted_ray_integral(poly, beta, data, static_cast<int>(j),
                                       -poly.side(static_cast<int>(j)).alpha, i, phi, eps, tol);
    }
    return total / cplx(0.0, 4.0 * M_PI);
}

/// Positive-branch roots of the two substitutions k = +-|Gamma|(lambda - beta^2/lambda):
/// 2 lambda = (1/|Gamma|)(+-k + sqrt(k^2 + 4 |Gamma|^2 beta^2)).
inline std::pair<double, double> change_of_variables_check(const Side& s, double beta,
                                                           double k) {
    const double L = s.length;
    const double root = std::sqrt(k * k + 4.0 * L * L * beta * beta);
    return {(k + root) / (2.0 * L), (-k + root) / (2.0 * L)};
}

/// Margin-clipped bounding-box grid evaluation (row-major, ny rows of nx).
inline GridField eval_grid(const Polygon& poly, double beta, const std::vector<SideData>& data,
                           int nx, int ny, double margin, double tol = 1e-8) {
    if (nx < 1 || ny < 1) throw Error("grid must have at least one point per axis");
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const cplx& v : poly.vertices()) {
        xmin = std::min(xmin, v.real());
        xmax = std::max(xmax, v.real());
        ymin = std::min(ymin, v.imag());
        ymax = std::max(ymax, v.imag());
    }
    GridField out;
    out.beta = beta;
    out.tol = tol;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const double x = (nx == 1) ? 0.5 * (xmin + xmax)
                                       : xmin + margin +
                                             (xmax - xmin - 2 * margin) * ix / (nx - 1);
            const double y = (ny == 1) ? 0.5 * (ymin + ymax)
                                       : ymin + margin +
                                             (ymax - ymin - 2 * margin) * iy / (ny - 1);
            const cplx z(x, y);
            if (poly.signed_boundary_distance(z) < margin * (1.0 - 1e-12)) continue;
            out.samples.push_back({z, evaluate(poly, beta, data, z, tol)});
        }
    }
    return out;
}

}  // namespace polyhelm
