#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "polyhelm/errors.hpp"
#include "polyhelm/quadrature.hpp"

namespace polyhelm {

/// Boundary-condition pair at a corner, with the data continuity stated.
enum class CornerCase {
    NeumannNeumannContinuous,
    DirichletDirichletContinuous,
    DirichletNeumannVanishing,
    DirichletDirichletDiscontinuous,
};

/// One admissible exponent, kept as the exact rational multiple
/// (num/den) * (pi / Delta) so ladder identities carry no rounding.
struct LadderRung {
    int M;
    long num;
    long den;
    double value(double delta) const { return double(num) * M_PI / (double(den) * delta); }
};

struct CornerReport {
    CornerCase kind;
    double delta;  // interior angle in (0, pi)
    std::vector<LadderRung> ladder;
    std::string coefficient_relation;
    double smallest_admissible = 0.0;  // smallest positive admissible exponent
    bool singular = false;             // some admissible exponent < 1
    bool non_integrable = false;
    bool marginal = false;  // exponent exactly 1 (reported non-singular)
};

/// Corner-exponent ladders per boundary-condition pair:
///   NN, DD continuous: 2 pi M / Delta, never singular;
///   DN vanishing: (pi/Delta)(2M + 1/2), singular iff Delta > pi/2;
///   DD discontinuous: non-integrable.
inline CornerReport classify(CornerCase kind, double delta, int m_max) {
    if (!(delta > 0.0) || !(delta < M_PI))
        throw AngleOutOfRange("corner angle must lie in (0, pi)");
    if (m_max < 0) throw AngleOutOfRange("m_max must be nonnegative");
    CornerReport rep;
    rep.kind = kind;
    rep.delta = delta;
    switch (kind) {
        case CornerCase::NeumannNeumannContinuous:
            for (int M = 0; M <= m_max; ++M) rep.ladder.push_back({M, 2L * M, 1L});
            rep.coefficient_relation = "D_{i-1} = D_i";
            // rungs are 0 or at least 2 pi / Delta > 2; never below 1
            rep.smallest_admissible = (m_max >= 1) ? rep.ladder[1].value(delta) : 0.0;
            rep.singular = false;
            break;
        case CornerCase::DirichletDirichletContinuous:
            for (int M = 1; M <= m_max; ++M) rep.ladder.push_back({M, 2L * M, 1L});
            rep.coefficient_relation = "N_{i-1} = N_i";
            rep.smallest_admissible = rep.ladder.empty() ? 0.0 : rep.ladder[0].value(delta);
            rep.singular = false;
            break;
        case CornerCase::DirichletNeumannVanishing: {
            for (int M = 0; M <= m_max; ++M) rep.ladder.push_back({M, 4L * M + 1L, 2L});
            rep.coefficient_relation = "N_{i-1} = D_i d_i";
            rep.smallest_admissible = rep.ladder[0].value(delta);
            // d(0) = pi/(2 Delta) < 1  <=>  Delta > pi/2, strict
            rep.singular = delta > M_PI / 2.0;
            rep.marginal = std::abs(rep.smallest_admissible - 1.0) < 1e-12;
            if (rep.marginal) rep.singular = false;
            break;
        }
        case CornerCase::DirichletDirichletDiscontinuous:
            rep.coefficient_relation = "jump at the corner";
            rep.singular = true;
            rep.non_integrable = true;
            break;
    }
    return rep;
}

/// Watson's lemma leading term: int_0^1 e^{-nu rho} rho^d drho
/// ~ Gamma(d+1) nu^{-1-d}, principal branch.
inline cplx watson_leading(double d, cplx nu) {
    if (!(d > -1.0)) throw DomainError("watson_leading needs d > -1");
    if (!(nu.real() > 0.0)) throw DomainError("watson_leading needs Re nu > 0");
    return std::tgamma(d + 1.0) * std::pow(nu, cplx(-1.0 - d, 0.0));
}

/// Model boundary behaviour on the two unit sides meeting at the corner:
/// q(rho, -theta_l) = D_l rho^{d_l} and (1/rho) dq/dtheta = N_l rho^{n_l - 1}.
struct CornerModelData {
    cplx D_i = 0.0;
    double d_i = 0.0;
    cplx N_i = 0.0;
    double n_i = 1.0;
    cplx D_im1 = 0.0;
    double d_im1 = 0.0;
    cplx N_im1 = 0.0;
    double n_im1 = 1.0;
};

/// Paper-consistent model amplitudes for ladder index M.
inline CornerModelData paper_consistent_model(CornerCase kind, double delta, int M) {
    CornerModelData m;
    switch (kind) {
        case CornerCase::NeumannNeumannContinuous: {
            const double d = 2.0 * M_PI * std::max(M, 1) / delta;
            m.D_i = m.D_im1 = 1.0;
            m.d_i = m.d_im1 = d;
            break;
        }
        case CornerCase::DirichletDirichletContinuous: {
            const double n = 2.0 * M_PI * std::max(M, 1) / delta;
            m.N_i = m.N_im1 = 1.0;
            m.n_i = m.n_im1 = n;
            break;
        }
        case CornerCase::DirichletNeumannVanishing: {
            const double d = (M_PI / delta) * (2.0 * M + 0.5);
            m.D_i = 1.0;
            m.d_i = d;
            m.N_im1 = m.D_i * d;
            m.n_im1 = d;
            break;
        }
        case CornerCase::DirichletDirichletDiscontinuous:
            m.D_i = 1.0;  // unit jump against zero on the adjacent side
            m.d_i = 0.0;
            break;
    }
    return m;
}

namespace detail {

/// One bracketed rho-integral of the two-sided corner contribution,
/// at wedge ray theta (so k = lambda e^{i(-theta+pi/2)} + b^2/(...)):
///   I = int_0^1 e^{-rho k} [ N rho^{n-1} + (lambda e^{-i theta} + b^2/(lambda e^{-i theta})) D rho^d ] drho.
inline cplx corner_bracket(double theta, cplx N, double n_exp, cplx D, double d_exp,
                           double beta, double lambda) {
    const cplx e_up = std::exp(cplx(0.0, -theta + M_PI / 2.0));
    const cplx k = lambda * e_up + beta * beta / (lambda * e_up);
    const cplx e_th = std::exp(cplx(0.0, -theta));
    const cplx c = lambda * e_th + beta * beta / (lambda * e_th);
    if (N == cplx(0.0) && D == cplx(0.0)) return 0.0;
    if (n_exp <= 0.0 && N != cplx(0.0))
        throw NonConvergentQuadrature("Neumann exponent must keep rho^{n-1} integrable");
    if (d_exp <= -1.0 && D != cplx(0.0))
        throw NonConvergentQuadrature("Dirichlet exponent must be > -1");
    auto f = [&](double rho) {
        cplx val = 0.0;
        if (N != cplx(0.0)) val += N * std::pow(rho, n_exp - 1.0);
        if (D != cplx(0.0)) val += c * D * std::pow(rho, d_exp);
        return std::exp(-rho * k) * val;
    };
    const int levels = 48;
    const cplx total = graded_integrate(f, 1.0, levels, 32);
    // mass of the unresolved [0, 2^-levels] stub, analytic bound
    double p = 1e300;
    if (N != cplx(0.0)) p = std::min(p, n_exp - 1.0);
    if (D != cplx(0.0)) p = std::min(p, d_exp);
    const double stub = std::pow(std::ldexp(1.0, -levels), p + 1.0) / (p + 1.0) *
                        std::max(std::abs(N), std::abs(c * D));
    if (stub > 1e-10 * (std::abs(total) + 1e-30))
        throw NonConvergentQuadrature("graded mesh cannot resolve the corner exponent");
    return total;
}

}  // namespace detail

/// Both bracketed integrals of the corner contribution, scaled by
/// e^{-(lambda + beta^2/lambda)}; the wedge of aperture delta is centred on
/// the downward vertical (theta_{i-1} = (pi-delta)/2, theta_i = theta_{i-1} + delta).
inline std::pair<cplx, cplx> corner_balance_terms(const CornerModelData& m, double delta,
                                                  double beta, double lambda) {
    if (!(delta > 0.0) || !(delta < M_PI))
        throw AngleOutOfRange("corner angle must lie in (0, pi)");
    if (!(lambda > 0.0)) throw DomainError("lambda must be real positive");
    const double th_im1 = 0.5 * (M_PI - delta);
    const double th_i = th_im1 + delta;
    const cplx I_i = detail::corner_bracket(th_i, m.N_i, m.n_i, m.D_i, m.d_i, beta, lambda);
    const cplx I_im1 =
        detail::corner_bracket(th_im1, m.N_im1, m.n_im1, m.D_im1, m.d_im1, beta, lambda);
    return {I_i, I_im1};
}

/// Scaled two-term residual I_i(lambda) - I_{i-1}(lambda). With
/// paper-consistent exponent/coefficient relations this decays at least one
/// power of lambda faster than either term alone.
inline cplx corner_balance_residual(const CornerModelData& m, double delta, double beta,
                                    double lambda) {
    const auto [a, b] = corner_balance_terms(m, delta, beta, lambda);
    return a - b;
}

/// | F(lambda) - conj(F(beta^2/lambda)) | for the scaled contribution F;
/// exactly zero for real model data up to quadrature error.
inline double lambda_inversion_check(const CornerModelData& m, double delta, double beta,
                                     double lambda) {
    const cplx a = corner_balance_residual(m, delta, beta, lambda);
    const cplx b = corner_balance_residual(m, delta, beta, beta * beta / lambda);
    return std::abs(a - std::conj(b));
}

}  // namespace polyhelm
