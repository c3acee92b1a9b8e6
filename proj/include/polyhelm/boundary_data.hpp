#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "polyhelm/errors.hpp"
#include "polyhelm/legendre.hpp"
#include "polyhelm/quadrature.hpp"

namespace polyhelm {

constexpr int kMaxDiracOrder = 4;

/// Smooth part of a boundary datum: coefficients of shifted Legendre
/// polynomials on tau in [0,1].
class SmoothDatum {
  public:
    SmoothDatum() = default;
    explicit SmoothDatum(std::vector<cplx> coef) : coef_(std::move(coef)) {}

    int modes() const { return static_cast<int>(coef_.size()); }
    const std::vector<cplx>& coefficients() const { return coef_; }
    std::vector<cplx>& coefficients() { return coef_; }
    bool empty() const {
        for (const cplx& c : coef_)
            if (c != cplx(0.0)) return false;
        return true;
    }

    cplx operator()(double tau) const {
        cplx acc = 0.0;
        const double x = 2.0 * tau - 1.0;
        double p0 = 1.0, p1 = x;
        for (int m = 0; m < modes(); ++m) {
            if (m == 0)
                acc += coef_[0];
            else if (m == 1)
                acc += coef_[1] * p1;
            else {
                double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
                p0 = p1;
                p1 = p2;
                acc += coef_[m] * p1;
            }
        }
        return acc;
    }

    /// ||.||_{L2(0,1)} via the Legendre weight identity sum |a_m|^2/(2m+1).
    double l2_norm() const {
        double s = 0.0;
        for (int m = 0; m < modes(); ++m) s += std::norm(coef_[m]) / double(2 * m + 1);
        return std::sqrt(s);
    }

    SmoothDatum& operator+=(const SmoothDatum& o) {
        if (o.modes() > modes()) coef_.resize(o.modes(), 0.0);
        for (int m = 0; m < o.modes(); ++m) coef_[m] += o.coef_[m];
        return *this;
    }
    SmoothDatum& operator*=(const cplx& a) {
        for (cplx& c : coef_) c *= a;
        return *this;
    }

  private:
    std::vector<cplx> coef_;
};

/// A single endpoint charge w * delta^{(order)} at tau = endpoint.
struct PointMass {
    int endpoint;  // 0 or 1
    int order;     // >= 0, bounded by kMaxDiracOrder
    cplx weight;
};

/// Finite collection of endpoint Dirac charges.
class PointMassDatum {
  public:
    PointMassDatum() = default;
    explicit PointMassDatum(std::vector<PointMass> m) : masses_(std::move(m)) { validate(); }

    void add(int endpoint, int order, cplx weight) {
        masses_.push_back({endpoint, order, weight});
        validate();
    }
    const std::vector<PointMass>& masses() const { return masses_; }
    bool empty() const {
        for (const auto& m : masses_)
            if (m.weight != cplx(0.0)) return false;
        return true;
    }
    int max_order() const {
        int mo = -1;
        for (const auto& m : masses_) mo = std::max(mo, m.order);
        return mo;
    }

    /// <sum w delta^{(j)}_e, phi> = sum (-1)^j w phi^{(j)}(e)
    template <typename Phi>
    cplx pair_with(Phi&& phi_derivative) const {
        cplx acc = 0.0;
        for (const auto& m : masses_) {
            const double sign = (m.order % 2 == 0) ? 1.0 : -1.0;
            acc += sign * m.weight * phi_derivative(double(m.endpoint), m.order);
        }
        return acc;
    }

    PointMassDatum& operator+=(const PointMassDatum& o) {
        for (const auto& m : o.masses_) masses_.push_back(m);
        return *this;
    }
    PointMassDatum& operator*=(const cplx& a) {
        for (auto& m : masses_) m.weight *= a;
        return *this;
    }

  private:
    void validate() const {
        for (const auto& m : masses_) {
            if (m.endpoint != 0 && m.endpoint != 1)
                throw Error("point mass endpoint must be 0 or 1");
            if (m.order < 0 || m.order > kMaxDiracOrder)
                throw Error("point mass order outside [0, 4]");
        }
    }
    std::vector<PointMass> masses_;
};

/// Element of E'[0,1]: smooth Legendre part plus endpoint charges.
struct BoundaryDatum {
    SmoothDatum smooth;
    PointMassDatum masses;

    bool empty() const { return smooth.empty() && masses.empty(); }

    BoundaryDatum& operator+=(const BoundaryDatum& o) {
        smooth += o.smooth;
        masses += o.masses;
        return *this;
    }
    BoundaryDatum& operator*=(const cplx& a) {
        smooth *= a;
        masses *= a;
        return *this;
    }
    friend BoundaryDatum operator+(BoundaryDatum a, const BoundaryDatum& b) { return a += b; }
    friend BoundaryDatum operator*(const cplx& c, BoundaryDatum a) { return a *= c; }
};

/// Bump test function of S(0,1): phi(tau) = exp(-1/(s(1-s))) on the window
/// s = (tau-center)/width + 1/2 in (0,1), zero outside. All derivatives
/// vanish at the window edges, so endpoint charges cannot see it.
class TestFunction {
  public:
    TestFunction(double center = 0.5, double width = 1.0, int max_order = 8)
        : center_(center), width_(width), max_order_(max_order) {}

    double center() const { return center_; }
    double width() const { return width_; }

    double operator()(double tau) const { return derivative(tau, 0); }

    /// d^n/dtau^n phi. Uses g(s) = -1/s - 1/(1-s) whose derivatives are
    /// explicit, then the Leibniz recurrence for f = exp(g).
    double derivative(double tau, int n) const {
        const double s = (tau - center_) / width_ + 0.5;
        if (s < kEdge || s > 1.0 - kEdge) return 0.0;
        std::vector<double> g(n + 2), f(n + 1);
        double sp = s, qp = 1.0 - s;
        double fact = 1.0;
        for (int k = 1; k <= n + 1; ++k) {
            // g^{(k)}(s) = -[(-1)^k k!/s^{k+1} + k!/(1-s)^{k+1}]
            sp *= s;
            qp *= (1.0 - s);
            const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
            g[k] = -(sgn * fact * double(k) / sp + fact * double(k) / qp);
            fact *= double(k);
        }
        f[0] = std::exp(-1.0 / s - 1.0 / (1.0 - s));
        for (int m = 1; m <= n; ++m) {
            double acc = 0.0;
            double binom = 1.0;
            for (int k = 0; k < m; ++k) {
                acc += binom * g[k + 1] * f[m - 1 - k];
                binom = binom * double(m - 1 - k) / double(k + 1);
            }
            f[m] = acc;
        }
        return f[n] / std::pow(width_, n);
    }

    /// sup over tau of |phi^{(n)}|, cached (used for a-priori truncation
    /// bounds of oscillatory pairings).
    double derivative_sup(int n) const {
        if (sup_.empty()) {
            sup_.assign(max_order_ + 1, 0.0);
            const int samples = 4000;
            for (int i = 1; i < samples; ++i) {
                const double tau = center_ + width_ * (double(i) / samples - 0.5);
                for (int k = 0; k <= max_order_; ++k)
                    sup_[k] = std::max(sup_[k], std::abs(derivative(tau, k)));
            }
        }
        return sup_.at(n);
    }
    int max_order() const { return max_order_; }

  private:
    static constexpr double kEdge = 2e-3;  // exp(-500), below double noise
    double center_;
    double width_;
    int max_order_;
    mutable std::vector<double> sup_;
};

/// Pairing <u, phi> between E'[0,1] and E[0,1]: quadrature against the
/// smooth part plus the exact endpoint-charge sum. phi must provide
/// phi.derivative(tau, j) up to the highest charge order present.
template <typename Phi>
cplx pair(const BoundaryDatum& u, const Phi& phi, double rel_tol = 1e-12) {
    if constexpr (requires(const Phi& p) { p.max_order(); }) {
        if (u.masses.max_order() > phi.max_order())
            throw InsufficientDerivativeOrder("test function derivative order too low");
    }
    cplx smooth = 0.0;
    if (!u.smooth.empty()) {
        smooth = adaptive_gauss(
            [&](double t) { return u.smooth(t) * phi.derivative(t, 0); }, rel_tol, 64, 1024);
    }
    return smooth + u.masses.pair_with([&](double e, int j) { return phi.derivative(e, j); });
}

/// Fourier transform on E'[0,1]: u_hat(zeta) = <u_tau, e^{-i zeta tau}>,
/// entire in zeta. Smooth part in closed form through the Legendre
/// exponential moments, charges via <delta^{(j)}_e, e^{-i zeta tau}> =
/// (i zeta)^j e^{-i zeta e}.
inline cplx fourier(const BoundaryDatum& u, cplx zeta) {
    cplx acc = 0.0;
    if (!u.smooth.empty()) {
        const cplx mu = cplx(0.0, -1.0) * zeta;
        const double tau_hat = (mu.real() > 0.0) ? 1.0 : 0.0;
        const auto moments = scaled_legendre_exp_moments(mu, u.smooth.modes());
        const cplx unscale = std::exp(mu * tau_hat);
        for (int m = 0; m < u.smooth.modes(); ++m)
            acc += u.smooth.coefficients()[m] * moments[m] * unscale;
    }
    for (const auto& m : u.masses.masses()) {
        const cplx iz = cplx(0.0, 1.0) * zeta;
        acc += m.weight * std::pow(iz, double(m.order)) *
               std::exp(cplx(0.0, -1.0) * zeta * double(m.endpoint));
    }
    return acc;
}

/// L2 projection of a smooth function onto n_modes shifted Legendre modes.
template <typename F>
SmoothDatum project_function(F&& f, int n_modes) {
    return SmoothDatum(legendre_project(std::forward<F>(f), n_modes));
}

}  // namespace polyhelm
