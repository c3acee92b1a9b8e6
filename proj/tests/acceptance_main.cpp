// Acceptance suite: every criterion below prints one line
//   [PASS|FAIL] C<n>: <description> (measured ...)
// and the process exits with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "polyhelm/polyhelm.hpp"

using namespace polyhelm;

namespace {

int g_failures = 0;

void report(int crit, bool ok, const std::string& what, const std::string& measured) {
    std::printf("[%s] C%d: %s (%s)\n", ok ? "PASS" : "FAIL", crit, what.c_str(),
                measured.c_str());
    if (!ok) ++g_failures;
}

Polygon unit_square() {
    return Polygon::build({cplx(0, 0), cplx(1, 0), cplx(1, 1), cplx(0, 1)});
}

std::vector<SideData> oracle_data(const Polygon& p, cplx mu, double beta, int modes) {
    std::vector<SideData> out;
    for (int i = 0; i < p.size(); ++i)
        out.push_back(exact_solution_traces(mu, p.side(i), beta, modes));
    return out;
}

BoundaryConditionSpec dirichlet_bc(const Polygon& p, cplx mu, double beta) {
    BoundaryConditionSpec bc;
    for (int i = 0; i < p.size(); ++i) {
        SideCondition c;
        c.kind = BcKind::Dirichlet;
        c.given.smooth = project_function(
            [&, i](double t) { return exact_solution_field(mu, beta, p.side(i).point(t)); },
            24);
        bc.sides.push_back(std::move(c));
    }
    return bc;
}

double side_l2_error(const SmoothDatum& got, const Side& s, cplx mu, double beta,
                     bool normal) {
    const cplx nu = outward_normal(s);
    double num = 0.0, den = 0.0;
    const GaussRule& r = gauss_rule(200);
    for (size_t i = 0; i < r.nodes.size(); ++i) {
        const double t = r.nodes[i];
        const cplx z = s.point(t);
        const cplx truth = normal ? exact_solution_directional(mu, beta, z, nu)
                                  : exact_solution_field(mu, beta, z);
        num += r.weights[i] * std::norm(got(t) - truth);
        den += r.weights[i] * std::norm(truth);
    }
    return std::sqrt(num / den);
}

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------- C1
void criterion1() {
    const auto t0 = Clock::now();
    const Polygon p = unit_square();
    const double beta = 1.0;
    CollocationConfig cfg;  // 24 per ray x 4 rays = 96 points
    const auto lambdas = collocation_set(p, beta, cfg);
    double worst = 0.0;
    for (cplx mu : {cplx(1.3, 0.0), cplx(2.1, 0.0), cplx(1.7, 0.3)}) {
        const auto data = oracle_data(p, mu, beta, 20);
        for (const cplx& lam : lambdas)
            worst = std::max(worst, residual_normalized(p, beta, data, lam));
    }
    const double dt = seconds_since(t0);
    report(1, worst <= 1e-9 && lambdas.size() == 96 && dt <= 1.0,
           "exact-solution residual over 96 collocation points <= 1e-9, runtime <= 1 s",
           "max " + std::to_string(worst) + ", " + std::to_string(dt) + " s");
}

// ---------------------------------------------------------------- C2
void criterion2() {
    const auto t0 = Clock::now();
    const Polygon p = unit_square();
    const double beta = 1.0;
    CollocationConfig cfg;  // N=16, M=24
    double worst_d = 0.0;
    for (cplx mu : {cplx(1.3, 0.0), cplx(2.1, 0.0), cplx(1.7, 0.3)}) {
        const SolvedBoundary sol = solve_dn_map(p, beta, dirichlet_bc(p, mu, beta), cfg);
        for (int i = 0; i < 4; ++i)
            worst_d = std::max(worst_d, side_l2_error(sol.sides[i].normal_derivative.smooth,
                                                      p.side(i), mu, beta, true));
    }
    // Robin variant, gamma = 1
    const double gamma = 1.0;
    const cplx mu(1.3, 0.0);
    BoundaryConditionSpec robin;
    for (int i = 0; i < 4; ++i) {
        SideCondition c;
        c.kind = BcKind::Robin;
        c.gamma = gamma;
        const cplx nu = outward_normal(p.side(i));
        c.given.smooth = project_function(
            [&, i, nu](double t) {
                const cplx z = p.side(i).point(t);
                return exact_solution_directional(mu, beta, z, nu) +
                       gamma * exact_solution_field(mu, beta, z);
            },
            24);
        robin.sides.push_back(std::move(c));
    }
    const SolvedBoundary rsol = solve_dn_map(p, beta, robin, cfg);
    double worst_r = 0.0;
    for (int i = 0; i < 4; ++i)
        worst_r = std::max(worst_r,
                           side_l2_error(rsol.sides[i].trace.smooth, p.side(i), mu, beta, false));
    const double dt = seconds_since(t0);
    report(2, worst_d <= 1e-6 && worst_r <= 1e-5 && dt <= 5.0,
           "Dirichlet->Neumann <= 1e-6 per side (N=16, M=24); Robin gamma=1 <= 1e-5; "
           "runtime <= 5 s",
           "dirichlet " + std::to_string(worst_d) + ", robin " + std::to_string(worst_r) +
               ", " + std::to_string(dt) + " s");
}

// ---------------------------------------------------------------- C3
void criterion3() {
    const Polygon p = unit_square();
    const double beta = 1.0;
    const cplx mu(1.3, 0.0);
    const auto data = oracle_data(p, mu, beta, 20);
    const GridField g = eval_grid(p, beta, data, 5, 5, 0.1, 1e-9);
    double worst = 0.0;
    for (const auto& s : g.samples)
        worst = std::max(worst, std::abs(s.value - exact_solution_field(mu, beta, s.z)));
    // PDE residual by 5-point differences at h = 1e-3
    const double h = 1e-3;
    double worst_pde = 0.0;
    for (cplx z : {cplx(0.5, 0.5), cplx(0.3, 0.7)}) {
        auto Q = [&](cplx w) { return evaluate(p, beta, data, w, 1e-12); };
        const cplx lap =
            (Q(z + h) + Q(z - h) + Q(z + cplx(0, h)) + Q(z - cplx(0, h)) - 4.0 * Q(z)) /
            (h * h);
        const cplx val = Q(z);
        worst_pde = std::max(worst_pde, std::abs(lap - 4.0 * beta * beta * val) /
                                            (std::abs(val) + 1.0));
    }
    report(3, worst <= 1e-6 && worst_pde <= 1e-4,
           "interior representation <= 1e-6 at dist >= 0.1; PDE residual <= 1e-4(|Q|+1)",
           "field " + std::to_string(worst) + ", pde " + std::to_string(worst_pde));
}

// ---------------------------------------------------------------- C4
void criterion4() {
    const Polygon p = unit_square();
    const double beta = 1.0;
    const auto data = oracle_data(p, cplx(1.3, 0.0), beta, 20);
    const TestFunction phi(0.5, 0.8);
    const cplx target = pair(data[0].trace, phi);
    double e1 = 0, e2 = 0, e3 = 0;
    e1 = std::abs(trace_pairing(p, beta, data, 0, phi, 1e-1, 1e-9) - target);
    e2 = std::abs(trace_pairing(p, beta, data, 0, phi, 1e-2, 1e-9) - target);
    e3 = std::abs(trace_pairing(p, beta, data, 0, phi, 1e-3, 1e-9) - target);
    report(4, e1 > e2 && e2 > e3 && e3 <= 1e-4,
           "distributional trace error decreases over eps = 1e-1, 1e-2, 1e-3 and is <= 1e-4",
           std::to_string(e1) + " > " + std::to_string(e2) + " > " + std::to_string(e3));
}

// ---------------------------------------------------------------- C5
void criterion5() {
    const Polygon p = unit_square();
    const double beta = 1.0;
    const cplx mu(1.3, 0.0);
    auto data = oracle_data(p, mu, beta, 20);
    CollocationConfig cfg;
    const auto lambdas = collocation_set(p, beta, cfg);
    std::vector<cplx> before;
    for (const cplx& lam : lambdas) before.push_back(residual(p, beta, data, lam));
    auto pert = data;
    for (int v = 0; v < 4; ++v)
        apply_null_direction(pert, vertex_null_direction(p, v, cplx(1.0, 0.4)));
    double worst = 0.0;
    for (size_t k = 0; k < lambdas.size(); ++k) {
        double scale = 0.0;
        for (const auto& d : pert) scale = std::max(scale, std::abs(rho(d, lambdas[k], beta)));
        worst = std::max(worst, std::abs(residual(p, beta, pert, lambdas[k]) - before[k]) / scale);
    }

    // solve-level invariance under a null direction supplied as known data
    BoundaryConditionSpec bc = dirichlet_bc(p, mu, beta);
    const SolvedBoundary base = solve_dn_map(p, beta, bc, cfg);
    const auto nd = vertex_null_direction(p, 1, cplx(0.8, 0.3));
    bc.sides[nd.side_a].unknown_charges.masses.add(1, 0, nd.charge_a);
    bc.sides[nd.side_b].unknown_charges.masses.add(0, 0, nd.charge_b);
    const SolvedBoundary shift = solve_dn_map(p, beta, bc, cfg);
    double worst_sol = 0.0;
    for (int i = 0; i < 4; ++i)
        for (double t : {0.2, 0.5, 0.8})
            worst_sol = std::max(worst_sol,
                                 std::abs(base.sides[i].normal_derivative.smooth(t) -
                                          shift.sides[i].normal_derivative.smooth(t)));
    report(5, worst <= 1e-13 && worst_sol <= 1e-8,
           "vertex null direction: residual change <= 1e-13 scale, recovered values <= 1e-8",
           "residual " + std::to_string(worst) + ", values " + std::to_string(worst_sol));
}

// ---------------------------------------------------------------- C6
void criterion6() {
    bool ok = true;
    std::string detail;
    for (int k = 1; k <= 1000 && ok; ++k) {
        const double delta = M_PI * k / 1001.0;
        const auto nn = classify(CornerCase::NeumannNeumannContinuous, delta, 2);
        const auto dd = classify(CornerCase::DirichletDirichletContinuous, delta, 2);
        const auto dn = classify(CornerCase::DirichletNeumannVanishing, delta, 2);
        const auto dj = classify(CornerCase::DirichletDirichletDiscontinuous, delta, 2);
        ok = ok && nn.ladder[1].num == 2 && nn.ladder[1].den == 1 && !nn.singular;
        ok = ok && dd.ladder[0].num == 2 && !dd.singular;
        ok = ok && dn.ladder[0].num == 1 && dn.ladder[0].den == 2 &&
             dn.ladder[1].num == 5 && dn.ladder[1].den == 2;
        ok = ok && (dn.singular == (delta > M_PI / 2));
        ok = ok && dj.non_integrable;
        if (!ok) detail = "failed at delta index " + std::to_string(k);
    }
    // Watson leading term against quadrature, <= 20/nu for nu >= 10
    double worst_ratio = 0.0;
    for (double d : {0.0, 0.5, 1.0, 2.5}) {
        for (double nu : {10.0, 30.0, 100.0, 300.0}) {
            const cplx lead = watson_leading(d, cplx(nu, 0.0));
            const cplx quad = graded_integrate(
                [&](double r) { return cplx(std::exp(-nu * r) * std::pow(r, d)); }, 1.0, 48,
                32);
            worst_ratio = std::max(worst_ratio, std::abs(lead - quad) / std::abs(quad) * nu);
        }
    }
    ok = ok && worst_ratio <= 20.0;
    report(6, ok,
           "corner ladders exact on 1000-angle grid; DN singular iff delta > pi/2; Watson "
           "<= 20/nu",
           detail.empty() ? "watson nu*err " + std::to_string(worst_ratio) : detail);
}

// ---------------------------------------------------------------- C7
void criterion7() {
    const double beta = 1.0;
    bool ok = true;
    std::string msg;
    for (auto [kind, delta] :
         {std::pair{CornerCase::NeumannNeumannContinuous, M_PI / 2},
          {CornerCase::DirichletDirichletContinuous, 2.0},
          {CornerCase::DirichletNeumannVanishing, 3 * M_PI / 4}}) {
        const auto m = paper_consistent_model(kind, delta, 1);
        double prev = 1e300;
        for (double lam : {50.0, 100.0, 200.0}) {
            const auto [a, b] = corner_balance_terms(m, delta, beta, lam);
            const double ratio = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
            // one power faster: each doubling must shed at least a factor 1.9
            ok = ok && (prev > 1e299 || ratio <= prev / 1.9);
            prev = ratio;
        }
        msg += std::to_string(prev) + " ";
    }
    double worst_inv = 0.0;
    const auto m = paper_consistent_model(CornerCase::NeumannNeumannContinuous, M_PI / 2, 1);
    for (double lam : {2.0, 5.0, 11.0})
        worst_inv = std::max(worst_inv, lambda_inversion_check(m, M_PI / 2, beta, lam));
    ok = ok && worst_inv <= 1e-9;
    report(7, ok,
           "corner balance decays one power faster with consistent data; lambda inversion "
           "<= 1e-9",
           "final ratios " + msg + ", inversion " + std::to_string(worst_inv));
}

// ---------------------------------------------------------------- C8
void criterion8() {
    const HalfStripParams p{1.0, 1.0};
    const HalfStripReport r = verify_halfstrip(p, 1e-11);
    const bool sym_ok = r.symmetry_err <= 1e-10;
    const bool bottom_ok = r.bc_bottom_max <= 5e-3;  // known to fail at x = 0.1:
    // the converged value there is ~6.047e-3, pinned by the corner wedge
    // asymptote (2/pi) atan(y/x) and confirmed by the eigenfunction series
    const bool left_ok = r.bc_left_extrap_err <= 1e-3;
    const bool slope_ok = r.log_slope_matches_oracle;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "sym %.2e, bottom max %.4e, left extrap %.2e, slope %.5f vs oracle %.5f, "
                  "stated -4/pi %s",
                  r.symmetry_err, r.bc_bottom_max, r.bc_left_extrap_err, r.log_slope,
                  r.log_slope_oracle, r.paper_constant_4_over_pi ? "matches" : "does NOT match");
    report(8, sym_ok && bottom_ok && left_ok && slope_ok,
           "half-strip: symmetry <= 1e-10; q(x,1e-3) <= 5e-3 on [0.1,1]; left extrapolation "
           "1 +- 1e-3; flux slope within 2% of oracle",
           buf);
}

// ---------------------------------------------------------------- C9
void criterion9() {
    const double beta = 1.0;
    const Polygon sq = Polygon::build({cplx(0, 0), cplx(0, -1), cplx(1, -1), cplx(1, 0)});
    const Polygon tr =
        Polygon::build({cplx(0, 0), cplx(0.45, -0.5), cplx(0.55, -0.5), cplx(1, 0)});
    auto data_sq = oracle_data(sq, cplx(1.3, 0.0), beta, 24);
    auto data_tr = oracle_data(tr, cplx(1.3, 0.0), beta, 24);
    const DecayFit fs = triple_decay_fit(sq, beta, data_sq, 3, decay_lambda_grid(beta));
    const DecayFit ft = triple_decay_fit(tr, beta, data_tr, 3, decay_lambda_grid(beta));
    const bool fit_ok = std::abs(fs.eps - 1.0) <= 0.1 && std::abs(ft.eps - 0.5) <= 0.05;
    const auto prof = MultiplierProfile::sample(beta, 100.0, 4001);
    const auto [lo, hi] = prof.ellipticity_bounds();
    const bool ell_ok = lo >= std::min(1.0, 2 * beta) - 1e-12 &&
                        hi <= std::max(1.0, 2 * beta) + 1e-12;
    report(9, fit_ok && ell_ok,
           "triple-sum decay rate within 10% of geometric clearance; ellipticity bounds hold",
           "square eps " + std::to_string(fs.eps) + " (clr 1), apex-trapezoid eps " +
               std::to_string(ft.eps) + " (clr 0.5)");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (g_failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
