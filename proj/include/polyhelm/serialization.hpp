#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyhelm/boundary_data.hpp"
#include "polyhelm/corner.hpp"
#include "polyhelm/evaluator.hpp"
#include "polyhelm/geometry.hpp"
#include "polyhelm/global_relation.hpp"
#include "polyhelm/halfstrip.hpp"
#include "polyhelm/regularity.hpp"

namespace polyhelm {

using json = nlohmann::json;

// ---- polygon: {"vertices": [[x, y], ...]}; angles are derived, never stored

inline json polygon_to_json(const Polygon& p) {
    json verts = json::array();
    for (const cplx& v : p.vertices()) verts.push_back({v.real(), v.imag()});
    return json{{"vertices", verts}};
}

inline Polygon polygon_from_json(const json& j) {
    std::vector<cplx> verts;
    for (const auto& v : j.at("vertices")) verts.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    return Polygon::build(std::move(verts));
}

// ---- datum: {"legendre": [[re, im], ...], "deltas": [{"endpoint", "order", "weight"}]}

inline json datum_to_json(const BoundaryDatum& d) {
    json leg = json::array();
    for (const cplx& c : d.smooth.coefficients()) leg.push_back({c.real(), c.imag()});
    json deltas = json::array();
    for (const auto& m : d.masses.masses())
        deltas.push_back({{"endpoint", m.endpoint},
                          {"order", m.order},
                          {"weight", {m.weight.real(), m.weight.imag()}}});
    return json{{"legendre", leg}, {"deltas", deltas}};
}

inline BoundaryDatum datum_from_json(const json& j) {
    BoundaryDatum d;
    std::vector<cplx> coef;
    if (j.contains("legendre"))
        for (const auto& c : j.at("legendre"))
            coef.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    d.smooth = SmoothDatum(std::move(coef));
    if (j.contains("deltas"))
        for (const auto& m : j.at("deltas"))
            d.masses.add(m.at("endpoint").get<int>(), m.at("order").get<int>(),
                         cplx(m.at("weight").at(0).get<double>(),
                              m.at("weight").at(1).get<double>()));
    return d;
}

// ---- problem file

struct ProblemFile {
    Polygon polygon = Polygon::build({cplx(0, 0), cplx(1, 0), cplx(0, 1)});
    double beta = 1.0;
    BoundaryConditionSpec bc;
    CollocationConfig config;
};

inline ProblemFile problem_from_json(const json& j) {
    ProblemFile p;
    p.polygon = polygon_from_json(j);
    p.beta = j.at("beta").get<double>();
    if (!(p.beta > 0.0)) throw Error("beta must be positive");
    const auto& sides = j.at("sides");
    if (static_cast<int>(sides.size()) != p.polygon.size())
        throw Error("side count must match vertex count");
    for (const auto& s : sides) {
        SideCondition c;
        const std::string kind = s.at("kind").get<std::string>();
        if (kind == "dirichlet")
            c.kind = BcKind::Dirichlet;
        else if (kind == "neumann")
            c.kind = BcKind::Neumann;
        else if (kind == "robin") {
            c.kind = BcKind::Robin;
            c.gamma = s.at("gamma").get<double>();
        } else
            throw Error("unknown boundary condition kind: " + kind);
        if (s.contains("data")) c.given = datum_from_json(s.at("data"));
        if (s.contains("unknown_charges"))
            c.unknown_charges = datum_from_json(s.at("unknown_charges"));
        p.bc.sides.push_back(std::move(c));
    }
    if (j.contains("config")) {
        const auto& cfg = j.at("config");
        if (cfg.contains("unknown_vertex_deltas") && cfg.at("unknown_vertex_deltas").get<bool>())
            throw Error(
                "vertex Dirac charges cannot join the unknown basis: the global relation "
                "cannot identify them (they cancel from every residual); supply them as "
                "known data instead");
        if (cfg.contains("modes")) p.config.modes_per_side = cfg.at("modes").get<int>();
        if (cfg.contains("points_per_ray"))
            p.config.points_per_ray = cfg.at("points_per_ray").get<int>();
        if (cfg.contains("ray_halfwidth"))
            p.config.ray_halfwidth = cfg.at("ray_halfwidth").get<double>();
        if (cfg.contains("row_normalization"))
            p.config.row_normalization = cfg.at("row_normalization").get<bool>();
        if (cfg.contains("rank_tolerance"))
            p.config.rank_tolerance = cfg.at("rank_tolerance").get<double>();
        if (cfg.contains("nonconvergence_threshold"))
            p.config.nonconvergence_threshold =
                cfg.at("nonconvergence_threshold").get<double>();
    }
    return p;
}

inline json solution_to_json(const Polygon& poly, double beta, const SolvedBoundary& sol) {
    json sides = json::array();
    for (const auto& s : sol.sides)
        sides.push_back(
            {{"q", datum_to_json(s.trace)}, {"dq", datum_to_json(s.normal_derivative)}});
    json j = polygon_to_json(poly);
    j["beta"] = beta;
    j["sides"] = sides;
    return j;
}

struct SolutionFile {
    Polygon polygon = Polygon::build({cplx(0, 0), cplx(1, 0), cplx(0, 1)});
    double beta = 1.0;
    std::vector<SideData> data;
};

inline SolutionFile solution_from_json(const json& j) {
    SolutionFile s;
    s.polygon = polygon_from_json(j);
    s.beta = j.at("beta").get<double>();
    const auto& sides = j.at("sides");
    if (static_cast<int>(sides.size()) != s.polygon.size())
        throw Error("side count must match vertex count");
    for (int i = 0; i < s.polygon.size(); ++i) {
        SideData d;
        d.trace = datum_from_json(sides.at(i).at("q"));
        d.normal_derivative = datum_from_json(sides.at(i).at("dq"));
        d.side = s.polygon.side(i);
        s.data.push_back(std::move(d));
    }
    return s;
}

inline json diagnostics_to_json(const SolvedBoundary& sol) {
    return json{{"residual_max", sol.residual_max}, {"lsq_residual", sol.lsq_residual},
                {"condition", sol.condition},       {"rows", sol.rows},
                {"cols", sol.cols},                 {"rank", sol.rank}};
}

inline json corner_report_to_json(const CornerReport& r) {
    const char* names[] = {"nn", "dd", "dn", "dd-jump"};
    json ladder = json::array();
    for (const auto& rung : r.ladder) ladder.push_back({rung.M, rung.value(r.delta)});
    return json{{"case", names[static_cast<int>(r.kind)]},
                {"delta", r.delta},
                {"ladder", ladder},
                {"coefficient_relation", r.coefficient_relation},
                {"smallest_admissible", r.smallest_admissible},
                {"singular", r.singular},
                {"non_integrable", r.non_integrable},
                {"marginal", r.marginal}};
}

inline json halfstrip_report_to_json(const HalfStripReport& r) {
    return json{{"symmetry_err", r.symmetry_err},
                {"bc_bottom_max", r.bc_bottom_max},
                {"bc_top_max", r.bc_top_max},
                {"bc_left_extrap_err", r.bc_left_extrap_err},
                {"log_slope", r.log_slope},
                {"log_slope_oracle", r.log_slope_oracle},
                {"log_slope_matches_oracle", r.log_slope_matches_oracle},
                {"paper_constant_4_over_pi", r.paper_constant_4_over_pi},
                {"imag_max", r.imag_max}};
}

inline json decay_fit_to_json(const DecayFit& f, double clearance) {
    return json{{"C", f.C},
                {"eps", f.eps},
                {"M", f.M},
                {"fit_residual", f.fit_residual},
                {"clearance", clearance},
                {"degenerate", f.degenerate}};
}

/// CSV "x,y,re,im" with 17 significant digits, row-major, deterministic.
inline std::string grid_to_csv(const GridField& g) {
    std::string out = "x,y,re,im\n";
    char buf[160];
    for (const auto& s : g.samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", s.z.real(), s.z.imag(),
                      s.value.real(), s.value.imag());
        out += buf;
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << content;
    if (!f) throw Error("write failed: " + path);
}

inline json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open: " + path);
    return json::parse(f);
}

inline void write_json_file(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

}  // namespace polyhelm
