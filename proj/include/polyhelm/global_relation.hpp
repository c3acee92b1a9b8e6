#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "polyhelm/geometry.hpp"
#include "polyhelm/spectral.hpp"

namespace polyhelm {

enum class BcKind { Dirichlet, Neumann, Robin };

/// Prescription on one side. `given` is the datum of the prescribed
/// function (q for Dirichlet, dn q for Neumann, dn q + gamma q for Robin).
/// `unknown_charges` holds any a-priori known Dirac part of the *unknown*
/// function; the solver never puts vertex charges into the unknown basis
/// (they are exactly unidentifiable), callers supply them here as data.
struct SideCondition {
    BcKind kind = BcKind::Dirichlet;
    BoundaryDatum given;
    double gamma = 0.0;
    BoundaryDatum unknown_charges;
};

struct BoundaryConditionSpec {
    std::vector<SideCondition> sides;
};

struct CollocationConfig {
    int modes_per_side = 16;
    int points_per_ray = 24;
    double ray_halfwidth = 4.0;   // |lambda| = beta e^s, s in [-S, S]
    bool row_normalization = true;
    double rank_tolerance = 1e-12;          // relative singular value cutoff
    double nonconvergence_threshold = 1e-3; // on the validation residual
};

struct SideSolution {
    BoundaryDatum trace;
    BoundaryDatum normal_derivative;
};

struct SolvedBoundary {
    std::vector<SideSolution> sides;
    double residual_max = 0.0;   // max normalized |sum rho| over validation set
    double lsq_residual = 0.0;   // ||Ax - b|| / ||b||
    double condition = 0.0;      // sigma_max / sigma_min over retained spectrum
    int rows = 0;
    int cols = 0;
    int rank = 0;
};

inline std::vector<SideData> attach(const Polygon& poly, const SolvedBoundary& sol) {
    std::vector<SideData> out;
    out.reserve(sol.sides.size());
    for (size_t i = 0; i < sol.sides.size(); ++i)
        out.push_back({sol.sides[i].trace, sol.sides[i].normal_derivative,
                       poly.side(static_cast<int>(i))});
    return out;
}

/// Global-relation residual sum_i rho_i(lambda).
inline cplx residual([[maybe_unused]] const Polygon& poly, double beta, const std::vector<SideData>& data,
                     cplx lambda) {
    double mx = -1e300;
    std::vector<ScaledComplex> vals;
    vals.reserve(data.size());
    for (const auto& d : data) {
        vals.push_back(rho_scaled(d, lambda, beta));
        mx = std::max(mx, vals.back().log_scale);
    }
    cplx acc = 0.0;
    for (const auto& v : vals) acc += v.mantissa * std::exp(v.log_scale - mx);
    return acc * std::exp(mx);
}

/// |sum_i rho_i| / max_i |rho_i|, stable against the common exponential scale.
inline double residual_normalized([[maybe_unused]] const Polygon& poly, double beta,
                                  const std::vector<SideData>& data, cplx lambda) {
    double mx = -1e300;
    std::vector<ScaledComplex> vals;
    vals.reserve(data.size());
    for (const auto& d : data) {
        vals.push_back(rho_scaled(d, lambda, beta));
        mx = std::max(mx, vals.back().log_scale);
    }
    cplx acc = 0.0;
    double scale = 0.0;
    for (const auto& v : vals) {
        const cplx t = v.mantissa * std::exp(v.log_scale - mx);
        acc += t;
        scale = std::max(scale, std::abs(t));
    }
    return scale > 0.0 ? std::abs(acc) / scale : 0.0;
}

/// Dirac charges at the shared end vertex of sides i and i+1 that cancel in
/// every rho sum: a delta_{tau=1} on dn q of side i plus b delta_{tau=0} on
/// dn q of side i+1 with |Gamma_i| a = -|Gamma_{i+1}| b.
struct NullDirection {
    int side_a;
    cplx charge_a;  // weight of delta_{tau=1} on dn q of side_a
    int side_b;
    cplx charge_b;  // weight of delta_{tau=0} on dn q of side_b
};

inline NullDirection vertex_null_direction(const Polygon& poly, int i, cplx amplitude) {
    const int n = poly.size();
    const int ia = ((i % n) + n) % n;
    const int ib = (ia + 1) % n;
    const cplx b = -amplitude * poly.side(ia).length / poly.side(ib).length;
    return {ia, amplitude, ib, b};
}

inline void apply_null_direction(std::vector<SideData>& data, const NullDirection& nd) {
    data[nd.side_a].normal_derivative.masses.add(1, 0, nd.charge_a);
    data[nd.side_b].normal_derivative.masses.add(0, 0, nd.charge_b);
}

/// Collocation points: for each side, points_per_ray points on the ray
/// arg lambda = -alpha_j with radii beta e^s, s uniform in [-S, S]
/// (symmetric under lambda -> beta^2/lambda). Duplicate points merged.
inline std::vector<cplx> collocation_set(const Polygon& poly, double beta,
                                         const CollocationConfig& cfg,
                                         double s_offset = 0.0) {
    std::vector<cplx> pts;
    for (const Side& s : poly.sides()) {
        const cplx dir = std::exp(cplx(0.0, -s.alpha));
        for (int k = 0; k < cfg.points_per_ray; ++k) {
            const double sk = (cfg.points_per_ray == 1)
                                  ? 0.0
                                  : -cfg.ray_halfwidth +
                                        2.0 * cfg.ray_halfwidth * k / (cfg.points_per_ray - 1);
            pts.push_back(dir * beta * std::exp(sk + s_offset));
        }
    }
    std::vector<cplx> merged;
    for (const cplx& p : pts) {
        bool dup = false;
        for (const cplx& q : merged)
            if (std::abs(p - q) <= 1e-14 * std::abs(p)) {
                dup = true;
                break;
            }
        if (!dup) merged.push_back(p);
    }
    return merged;
}

namespace detail {

struct AssembledSide {
    cplx unknown_factor;       // multiplies the unknown-mode moments
    cplx known;                // contribution of the given data
    double log_scale;          // common exponential scale
    std::vector<cplx> moments; // scaled Legendre moments of the kernel
};

inline AssembledSide assemble_side(const SideCondition& bc, const Side& side, cplx lambda,
                                   double beta, int n_modes) {
    const auto ke = KernelExponent::make(side, lambda, beta);
    const cplx ea = std::exp(cplx(0.0, side.alpha));
    const cplx coef = lambda * ea + beta * beta / (lambda * ea);
    const cplx iL = cplx(0.0, 1.0) * side.length;

    int want = n_modes;
    want = std::max(want, bc.given.smooth.modes());
    AssembledSide out;
    out.log_scale = ke.log_max;
    out.moments = scaled_legendre_exp_moments(ke.mu, want);
    const double tau_hat = (ke.mu.real() > 0.0) ? 1.0 : 0.0;
    const cplx rest = std::exp(ke.c0 + ke.mu * tau_hat - ke.log_max);
    for (auto& m : out.moments) m *= rest;

    auto datum_pairing = [&](const BoundaryDatum& d) {
        return scaled_datum_pairing(d, side, ke, lambda, beta);
    };

    switch (bc.kind) {
        case BcKind::Dirichlet:
            // rho = iL [ <dq, K> + coef <q, K> ]; unknown smooth dq
            out.unknown_factor = iL;
            out.known = iL * (coef * datum_pairing(bc.given) + datum_pairing(bc.unknown_charges));
            break;
        case BcKind::Neumann:
            out.unknown_factor = iL * coef;
            out.known = iL * (datum_pairing(bc.given) + coef * datum_pairing(bc.unknown_charges));
            break;
        case BcKind::Robin:
            // dq = given - gamma q; rho = iL [ <given, K> + (coef - gamma) <q, K> ]
            out.unknown_factor = iL * (coef - bc.gamma);
            out.known = iL * (datum_pairing(bc.given) +
                              (coef - bc.gamma) * datum_pairing(bc.unknown_charges));
            break;
    }
    return out;
}

}  // namespace detail

/// Least-squares collocation solve of the global relation for the unknown
/// boundary function of every side, expanded in smooth Legendre modes.
inline SolvedBoundary solve_dn_map(const Polygon& poly, double beta,
                                   const BoundaryConditionSpec& bc,
                                   const CollocationConfig& cfg) {
    const int n = poly.size();
    if (static_cast<int>(bc.sides.size()) != n)
        throw Error("boundary condition count does not match side count");
    const int N = cfg.modes_per_side;
    const auto lambdas = collocation_set(poly, beta, cfg);
    const int n_rows = 2 * static_cast<int>(lambdas.size());
    const int n_cols = 2 * n * N;
    if (n_rows < n_cols) throw Error("collocation system is under-determined");

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_rows, n_cols);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_rows);

    for (size_t k = 0; k < lambdas.size(); ++k) {
        const cplx lam = lambdas[k];
        std::vector<detail::AssembledSide> parts;
        parts.reserve(n);
        double env = -1e300;
        for (int j = 0; j < n; ++j) {
            parts.push_back(detail::assemble_side(bc.sides[j], poly.side(j), lam, beta, N));
            env = std::max(env, rho_log_envelope(poly.side(j), lam, beta, 1));
        }
        const double w = cfg.row_normalization ? env : 0.0;
        cplx b = 0.0;
        for (int j = 0; j < n; ++j) {
            const auto& p = parts[j];
            const double sc = std::exp(p.log_scale - w);
            for (int m = 0; m < N; ++m) {
                const cplx a = p.unknown_factor * p.moments[m] * sc;
                A(2 * k, 2 * (j * N + m)) = a.real();
                A(2 * k, 2 * (j * N + m) + 1) = -a.imag();
                A(2 * k + 1, 2 * (j * N + m)) = a.imag();
                A(2 * k + 1, 2 * (j * N + m) + 1) = a.real();
            }
            b -= p.known * sc;
        }
        rhs(2 * k) = b.real();
        rhs(2 * k + 1) = b.imag();
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(cfg.rank_tolerance);
    const int rank = static_cast<int>(svd.rank());
    Eigen::VectorXd x = svd.solve(rhs);

    SolvedBoundary sol;
    sol.rows = n_rows;
    sol.cols = n_cols;
    sol.rank = rank;
    const double bnorm = rhs.norm();
    sol.lsq_residual = bnorm > 0.0 ? (A * x - rhs).norm() / bnorm : 0.0;
    sol.condition =
        rank > 0 ? svd.singularValues()(0) / svd.singularValues()(rank - 1) : 0.0;

    if (rank < n_cols)
        throw RankDeficient("collocation matrix rank " + std::to_string(rank) + " of " +
                            std::to_string(n_cols) + ", condition " +
                            std::to_string(sol.condition));

    sol.sides.resize(n);
    for (int j = 0; j < n; ++j) {
        std::vector<cplx> coef(N);
        for (int m = 0; m < N; ++m)
            coef[m] = cplx(x(2 * (j * N + m)), x(2 * (j * N + m) + 1));
        BoundaryDatum recovered;
        recovered.smooth = SmoothDatum(std::move(coef));
        recovered += bc.sides[j].unknown_charges;
        switch (bc.sides[j].kind) {
            case BcKind::Dirichlet:
                sol.sides[j].trace = bc.sides[j].given;
                sol.sides[j].normal_derivative = recovered;
                break;
            case BcKind::Neumann:
                sol.sides[j].normal_derivative = bc.sides[j].given;
                sol.sides[j].trace = recovered;
                break;
            case BcKind::Robin: {
                sol.sides[j].trace = recovered;
                BoundaryDatum dq = bc.sides[j].given;
                dq += cplx(-bc.sides[j].gamma) * recovered;
                sol.sides[j].normal_derivative = dq;
                break;
            }
        }
    }

    // validation residual on a half-step-shifted point set
    const double offset = cfg.points_per_ray > 1
                              ? cfg.ray_halfwidth / (cfg.points_per_ray - 1)
                              : 0.5;
    const auto probe = collocation_set(poly, beta, cfg, offset);
    const auto data = attach(poly, sol);
    double worst = 0.0;
    for (const cplx& lam : probe)
        worst = std::max(worst, residual_normalized(poly, beta, data, lam));
    sol.residual_max = worst;
    if (worst > cfg.nonconvergence_threshold)
        throw NonConvergence("validation residual " + std::to_string(worst) +
                             " above threshold");
    return sol;
}

}  // namespace polyhelm
