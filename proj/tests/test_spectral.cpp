#include <catch2/catch_amalgamated.hpp>

#include "polyhelm/geometry.hpp"
#include "polyhelm/spectral.hpp"

using namespace polyhelm;
using Catch::Matchers::WithinAbs;

namespace {

Polygon unit_square() {
    return Polygon::build({cplx(0, 0), cplx(1, 0), cplx(1, 1), cplx(0, 1)});
}

/// Brute-force rho by fixed high-order quadrature of the defining pairing;
/// independent of the closed-form Legendre-moment path used by rho().
cplx rho_quadrature_oracle(const SideData& d, cplx lambda, double beta, int nodes = 256) {
    const cplx i(0.0, 1.0);
    const cplx ea = std::exp(cplx(0.0, d.side.alpha));
    const cplx coef = lambda * ea + beta * beta / (lambda * ea);
    auto K = [&](double tau) {
        const cplx z = d.side.point(tau);
        return std::exp(-i * lambda * z + i * beta * beta * std::conj(z) / lambda);
    };
    auto mu = kernel_slope(d.side, lambda, beta);
    cplx pair_q = gauss_integrate([&](double t) { return d.trace.smooth(t) * K(t); }, 0.0,
                                  1.0, nodes);
    cplx pair_dq = gauss_integrate(
        [&](double t) { return d.normal_derivative.smooth(t) * K(t); }, 0.0, 1.0, nodes);
    for (const auto& m : d.trace.masses.masses()) {
        const double sgn = m.order % 2 == 0 ? 1.0 : -1.0;
        pair_q += sgn * m.weight * std::pow(mu, double(m.order)) * K(double(m.endpoint));
    }
    for (const auto& m : d.normal_derivative.masses.masses()) {
        const double sgn = m.order % 2 == 0 ? 1.0 : -1.0;
        pair_dq += sgn * m.weight * std::pow(mu, double(m.order)) * K(double(m.endpoint));
    }
    return i * d.side.length * (pair_dq + coef * pair_q);
}

}  // namespace

TEST_CASE("kernel values", "[spectral]") {
    // exponent vanishes where psi(tau) = 0
    const Side s0{cplx(0, 0), cplx(1, 0), 0.0, 1.0};
    CHECK_THAT(std::abs(kernel(s0, cplx(1.3, 0.4), 1.0, 0.0) - cplx(1.0)),
               WithinAbs(0.0, 1e-15));
    // balanced point lambda = beta on a real side: slope vanishes
    for (double tau : {0.0, 0.3, 1.0})
        CHECK_THAT(std::abs(kernel(s0, cplx(2.0, 0.0), 2.0, tau) - cplx(1.0)),
                   WithinAbs(0.0, 1e-14));
    // vertical side, lambda=2, beta=1, tau=1: e^{2.5}
    const Side s1{cplx(0, 0), cplx(0, 1), M_PI / 2, 1.0};
    CHECK(std::abs(kernel(s1, cplx(2, 0), 1.0, 1.0) - std::exp(2.5)) <= 1e-12 * std::exp(2.5));
    CHECK_THROWS_AS(kernel(s0, cplx(0, 0), 1.0, 0.5), ZeroLambda);
}

TEST_CASE("exact solution traces satisfy the field equation", "[spectral]") {
    const double beta = 1.0;
    for (cplx mu : {cplx(1.3, 0.0), cplx(0.0, 1.0), cplx(1.7, 0.3)}) {
        // 4 dz dzbar q = Lap q = 4 beta^2 q by central differences
        const cplx z0(0.3, 0.4);
        const double h = 1e-4;
        auto f = [&](cplx z) { return exact_solution_field(mu, beta, z); };
        const cplx lap = (f(z0 + h) + f(z0 - h) + f(z0 + cplx(0, h)) + f(z0 - cplx(0, h)) -
                          4.0 * f(z0)) /
                         (h * h);
        const cplx target = 4.0 * beta * beta * f(z0);
        CHECK(std::abs(lap - target) <= 1e-6 * std::abs(target));
    }
}

TEST_CASE("exact traces: mu = beta gives dn q = 2 beta q on a real side", "[spectral]") {
    const double beta = 0.7;
    const Side s{cplx(0, 0), cplx(1, 0), 0.0, 1.0};
    const SideData d = exact_solution_traces(cplx(beta, 0.0), s, beta, 12);
    for (double tau : {0.1, 0.5, 0.9}) {
        const cplx q = d.trace.smooth(tau);
        const cplx dq = d.normal_derivative.smooth(tau);
        CHECK(std::abs(dq - 2.0 * beta * q) <= 1e-10 * std::abs(q));
    }
    CHECK_THROWS_AS(exact_solution_traces(cplx(0, 0), s, beta, 4), ZeroMu);
}

TEST_CASE("rho matches the quadrature oracle on collocation rays", "[spectral]") {
    const Polygon p = unit_square();
    const double beta = 1.0;
    const cplx mu(1.7, 0.3);
    for (int j = 0; j < 4; ++j) {
        const SideData d = exact_solution_traces(mu, p.side(j), beta, 20);
        for (int ray = 0; ray < 4; ++ray) {
            const cplx dir = std::exp(cplx(0.0, -p.side(ray).alpha));
            for (double s : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
                const cplx lam = dir * beta * std::exp(s);
                const cplx fast = rho(d, lam, beta);
                const cplx slow = rho_quadrature_oracle(d, lam, beta);
                CHECK(std::abs(fast - slow) <= 1e-11 * std::max(std::abs(slow), 1e-12));
            }
        }
    }
}

TEST_CASE("rho of zero data vanishes; linearity", "[spectral]") {
    const Polygon p = unit_square();
    const double beta = 1.3;
    SideData zero;
    zero.side = p.side(0);
    CHECK(rho(zero, cplx(2.0, 1.0), beta) == cplx(0.0));

    const SideData d1 = exact_solution_traces(cplx(1.3, 0.0), p.side(0), beta, 16);
    const SideData d2 = exact_solution_traces(cplx(0.4, 0.8), p.side(0), beta, 16);
    const cplx a(0.7, -0.2), b(-1.3, 0.4);
    SideData comb;
    comb.side = p.side(0);
    comb.trace = a * d1.trace + b * d2.trace;
    comb.normal_derivative = a * d1.normal_derivative + b * d2.normal_derivative;
    for (double s : {-1.0, 0.0, 1.5}) {
        const cplx lam = beta * std::exp(s) * std::exp(cplx(0, -0.3));
        const cplx lhs = rho(comb, lam, beta);
        const cplx rhs = a * rho(d1, lam, beta) + b * rho(d2, lam, beta);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(std::abs(lhs), std::abs(rhs)));
    }
}

TEST_CASE("pure Dirac normal datum has closed-form rho", "[spectral]") {
    // q = 0, dq = delta_1 on side (0,0)->(1,0): rho = i K(1) = i e^{-i l + i b^2/l}
    const Side s{cplx(0, 0), cplx(1, 0), 0.0, 1.0};
    SideData d;
    d.side = s;
    d.normal_derivative.masses.add(1, 0, 1.0);
    const double beta = 1.0;
    for (cplx lam : {cplx(1.2, 0.0), cplx(0.4, -1.0), cplx(3.0, 2.0)}) {
        const cplx expect =
            cplx(0, 1) * std::exp(cplx(0, -1) * lam + cplx(0, 1) * beta * beta / lam);
        CHECK(std::abs(rho(d, lam, beta) - expect) <= 1e-13 * std::abs(expect));
    }
}

TEST_CASE("rho envelope bounds rho", "[spectral]") {
    const Polygon p = unit_square();
    const double beta = 1.0;
    for (int j = 0; j < 4; ++j) {
        const SideData d = exact_solution_traces(cplx(1.3, 0.0), p.side(j), beta, 16);
        // datum norms: L1-ish bound on the data values
        double norm = 0.0;
        for (double t = 0; t <= 1.0; t += 0.05)
            norm = std::max(norm, std::abs(d.trace.smooth(t)) +
                                      std::abs(d.normal_derivative.smooth(t)));
        for (double s : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
            const cplx lam = beta * std::exp(s) * std::exp(cplx(0, -p.side(j).alpha));
            const ScaledComplex r = rho_scaled(d, lam, beta);
            const double env = rho_log_envelope(p.side(j), lam, beta, 1);
            CHECK(r.log_abs() <= env + std::log(norm * p.side(j).length) + 1e-9);
        }
    }
}

TEST_CASE("envelope examples", "[spectral]") {
    // side through the origin, lambda on its own ray: envelope >= 1
    const Side s{cplx(0, 0), cplx(1, 0), 0.0, 1.0};
    CHECK(rho_envelope(s, cplx(2.0, 0.0), 1.0, 0) >= 1.0);
    // N=0, lambda=i beta, side on the real axis: unimodular kernel
    CHECK_THAT(rho_envelope(s, cplx(0.0, 1.0), 1.0, 0), WithinAbs(1.0, 1e-13));
    // depressed side at Im z = -1, real lambda: exp(-(l + b^2/l))
    const Side sd{cplx(0, -1), cplx(1, -1), 0.0, 1.0};
    for (double t : {0.7, 1.0, 2.5}) {
        const double expect = std::exp(-(t + 1.0 / t));
        CHECK_THAT(rho_envelope(sd, cplx(t, 0.0), 1.0, 0), WithinAbs(expect, 1e-12 * expect));
    }
}

TEST_CASE("own-ray integrand decays both ways", "[spectral]") {
    // |rho(l) e^{i l z - i b^2 zbar/l} / l| decays as |s| grows, z interior
    const Polygon p = unit_square();
    const double beta = 1.0;
    const cplx z(0.37, 0.52);
    for (int j = 0; j < 4; ++j) {
        const SideData d = exact_solution_traces(cplx(1.3, 0.0), p.side(j), beta, 20);
        const cplx dir = std::exp(cplx(0, -p.side(j).alpha));
        auto log_integrand = [&](double s) {
            const cplx lam = dir * beta * std::exp(s);
            const ScaledComplex r = rho_scaled(d, lam, beta);
            const cplx e = cplx(0, 1) * lam * z - cplx(0, 1) * beta * beta * std::conj(z) / lam;
            return r.log_abs() + e.real() - s;  // dividing by |lambda| = beta e^s
        };
        double prev = log_integrand(2.0);
        for (double s : {4.0, 8.0}) {
            const double cur = log_integrand(s);
            CHECK(cur < prev);
            prev = cur;
        }
        prev = log_integrand(-2.0);
        for (double s : {-4.0, -8.0}) {
            const double cur = log_integrand(s);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}
