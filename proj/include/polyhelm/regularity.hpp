#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "polyhelm/boundary_data.hpp"
#include "polyhelm/geometry.hpp"
#include "polyhelm/spectral.hpp"

namespace polyhelm {

/// Diffeomorphism k = lambda - beta^2/lambda between (0, inf) and the real
/// line, with dk = (1 + beta^2/lambda^2) dlambda.
inline double k_of_lambda(double lambda, double beta) {
    return lambda - beta * beta / lambda;
}

inline double lambda_of_k(double k, double beta) {
    return 0.5 * (k + std::sqrt(k * k + 4.0 * beta * beta));
}

/// Elliptic multiplier sqrt(k^2 + 4 beta^2) sampled against the Japanese
/// bracket <k> = (1 + k^2)^{1/2}; the ratio lies in [min(1,2b), max(1,2b)].
struct MultiplierProfile {
    std::vector<double> k;
    std::vector<double> p;        // sqrt(k^2 + 4 b^2)
    std::vector<double> bracket;  // <k>

    static MultiplierProfile sample(double beta, double k_max, int n) {
        MultiplierProfile m;
        m.k.reserve(n);
        for (int i = 0; i < n; ++i) {
            const double kk = -k_max + 2.0 * k_max * i / (n - 1);
            m.k.push_back(kk);
            m.p.push_back(std::sqrt(kk * kk + 4.0 * beta * beta));
            m.bracket.push_back(std::sqrt(1.0 + kk * kk));
        }
        return m;
    }

    std::pair<double, double> ellipticity_bounds() const {
        double lo = 1e300, hi = -1e300;
        for (size_t i = 0; i < k.size(); ++i) {
            const double r = p[i] / bracket[i];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        return {lo, hi};
    }
};

/// Stored constant of the gauge-aligned decomposition, re-derived from the
/// spectral-function definition rather than copied from the paper's
/// Fourier-form restatement (the two differ by this factor and a phase):
/// with side i on (0,1), alpha = pi, and k = lambda - beta^2/lambda,
///   rho_i(lambda) = i e^{-ik} [ Nhat(-k) - sqrt(k^2 + 4 beta^2) Dhat(-k) ].
inline constexpr cplx aligned_rho_constant() { return cplx(0.0, 1.0); }

struct AlignedRho {
    cplx rho;
    cplx nhat;  // fourier(dn q_i, -k)
    cplx dhat;  // fourier(q_i, -k)
    cplx derived_constant;  // rho e^{ik} / (nhat - sqrt(k^2+4b^2) dhat)
};

namespace detail {

inline void require_aligned(const Polygon& poly, int i) {
    const Side& s = poly.side(i);
    const double tol = 1e-10;
    if (std::abs(s.origin - cplx(1.0, 0.0)) > tol || std::abs(s.end) > tol)
        throw GaugeViolation("side must coincide with (0,1), origin at 1");
    for (int j = 0; j < poly.size(); ++j) {
        const cplx& v = poly.vertex(j);
        if (std::abs(v - s.origin) < tol || std::abs(v - s.end) < tol) continue;
        if (v.imag() >= -1e-12)
            throw GaugeViolation("all off-side vertices must lie strictly below the axis");
    }
}

}  // namespace detail

/// Evaluate rho_i at lambda(k) and, independently, the Fourier transforms
/// of its two data, in the gauge where side i coincides with (0,1).
inline AlignedRho aligned_rho_decomposition(const Polygon& poly, double beta,
                                            const std::vector<SideData>& data, int i,
                                            double k) {
    detail::require_aligned(poly, i);
    const double lambda = lambda_of_k(k, beta);
    AlignedRho out;
    out.rho = rho(data[i], cplx(lambda, 0.0), beta);
    out.nhat = fourier(data[i].normal_derivative, cplx(-k, 0.0));
    out.dhat = fourier(data[i].trace, cplx(-k, 0.0));
    const cplx denom = out.nhat - std::sqrt(k * k + 4.0 * beta * beta) * out.dhat;
    out.derived_constant = (denom == cplx(0.0))
                               ? aligned_rho_constant()
                               : out.rho * std::exp(cplx(0.0, k)) / denom;
    return out;
}

struct DecayFit {
    double C = 0.0;
    double eps = 0.0;
    double M = 0.0;
    double fit_residual = 0.0;
    bool degenerate = false;
};

/// Log-spaced default grid for the decay fit: omega = lambda + beta^2/lambda
/// in [10, 150] beta, on the positive real axis.
inline std::vector<double> decay_lambda_grid(double beta, double omega_lo = 10.0,
                                             double omega_hi = 150.0, int n = 80) {
    std::vector<double> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double om =
            beta * omega_lo * std::pow(omega_hi / omega_lo, double(i) / (n - 1));
        out.push_back(0.5 * (om + std::sqrt(om * om - 4.0 * beta * beta)));
    }
    return out;
}

/// Fit |rho_{i-1} + rho_i + rho_{i+1}| <= C (lambda + b^2/lambda)^M
/// e^{-eps (lambda + b^2/lambda)} over a real-lambda grid. The triple sum is
/// evaluated through the global relation as -sum of the far sides, which is
/// immune to the catastrophic cancellation of the direct sum.
inline DecayFit triple_decay_fit(const Polygon& poly, double beta,
                                 const std::vector<SideData>& data, int i,
                                 const std::vector<double>& lambdas) {
    detail::require_aligned(poly, i);
    const int n = poly.size();
    const int im1 = (i - 1 + n) % n, ip1 = (i + 1) % n;
    std::vector<double> logT, omega;
    bool any = false;
    for (double lam : lambdas) {
        double mx = -1e300;
        std::vector<ScaledComplex> vals;
        for (int j = 0; j < n; ++j) {
            if (j == i || j == im1 || j == ip1) continue;
            vals.push_back(rho_scaled(data[j], cplx(lam, 0.0), beta));
            mx = std::max(mx, vals.back().log_scale);
        }
        if (vals.empty()) continue;
        cplx acc = 0.0;
        for (const auto& v : vals) acc += v.mantissa * std::exp(v.log_scale - mx);
        if (acc == cplx(0.0)) continue;
        any = true;
        logT.push_back(std::log(std::abs(acc)) + mx);
        omega.push_back(lam + beta * beta / lam);
    }
    DecayFit fit;
    if (!any || logT.size() < 3) {
        fit.degenerate = true;
        return fit;
    }
    const int m = static_cast<int>(logT.size());
    Eigen::MatrixXd A(m, 3);
    Eigen::VectorXd y(m);
    for (int r = 0; r < m; ++r) {
        A(r, 0) = 1.0;
        A(r, 1) = std::log(omega[r]);
        A(r, 2) = -omega[r];
        y(r) = logT[r];
    }
    const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(y);
    fit.C = std::exp(sol(0));
    fit.M = sol(1);
    fit.eps = sol(2);
    fit.fit_residual = std::sqrt((A * sol - y).squaredNorm() / m);
    if (!(fit.eps > 0.0)) throw FitFailure("triple sum does not decay");
    return fit;
}

/// Truncated Sobolev norm ((1/2 pi) int_{|k|<=K} <k>^{2s} |u_hat(k)|^2 dk)^{1/2};
/// at s = 0 this converges to the L2 norm of the natural extension.
inline double sobolev_norm(const BoundaryDatum& u, double s, double K) {
    if (!(K > 0.0)) throw Error("sobolev_norm needs K > 0");
    const int panels = std::max(32, static_cast<int>(K / (M_PI / 2.0)));
    double acc = 0.0;
    for (int j = 0; j < panels; ++j) {
        const double lo = -K + 2.0 * K * j / panels;
        const double hi = -K + 2.0 * K * (j + 1) / panels;
        acc += gauss_integrate(
            [&](double k) {
                const double br = std::pow(1.0 + k * k, s);
                return br * std::norm(fourier(u, cplx(k, 0.0)));
            },
            lo, hi, 16);
    }
    return std::sqrt(acc / (2.0 * M_PI));
}

}  // namespace polyhelm
