#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "polyhelm/errors.hpp"

namespace polyhelm {

using cplx = std::complex<double>;

/// One directed edge of a polygon. The parametrisation
/// psi(tau) = tau*end + (1-tau)*origin maps [0,1] onto the closed side.
struct Side {
    cplx origin;
    cplx end;
    double alpha;   // arg(end - origin), in (-pi, pi]
    double length;  // |end - origin| > 0

    cplx point(double tau) const { return origin + tau * (end - origin); }
    cplx chord() const { return end - origin; }
};

/// Outward unit normal of a side of a counterclockwise polygon: nu = -i e^{i alpha}.
inline cplx outward_normal(const Side& s) {
    return cplx(0.0, -1.0) * std::exp(cplx(0.0, s.alpha));
}

/// Pullback factors of the 1-forms dz, dzbar along the side:
/// psi*(dz) = e^{i alpha} |Gamma| dtau, psi*(dzbar) = e^{-i alpha} |Gamma| dtau.
inline std::pair<cplx, cplx> pullback_form_factors(const Side& s) {
    cplx f = std::exp(cplx(0.0, s.alpha)) * s.length;
    return {f, std::conj(f)};
}

/// Strictly convex polygon with counterclockwise vertex order.
class Polygon {
  public:
    static Polygon build(std::vector<cplx> vertices) {
        const size_t n = vertices.size();
        if (n < 3) throw TooFewVertices("polygon needs at least 3 vertices");
        double scale = 0.0;
        for (size_t i = 0; i < n; ++i)
            scale = std::max(scale, std::abs(vertices[(i + 1) % n] - vertices[i]));
        for (size_t i = 0; i < n; ++i) {
            if (std::abs(vertices[(i + 1) % n] - vertices[i]) <= 1e-14 * scale)
                throw DegenerateSide("zero-length side at vertex " + std::to_string(i));
        }
        double area2 = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const cplx a = vertices[i], b = vertices[(i + 1) % n];
            area2 += a.real() * b.imag() - b.real() * a.imag();
        }
        if (area2 <= 0.0) throw ClockwiseOrder("vertices must be counterclockwise");
        // strict convexity: every consecutive edge cross product positive,
        // with borderline-collinear vertices rejected
        const double tol = 1e-12 * scale * scale;
        for (size_t i = 0; i < n; ++i) {
            const cplx u = vertices[(i + 1) % n] - vertices[i];
            const cplx v = vertices[(i + 2) % n] - vertices[(i + 1) % n];
            const double cross = u.real() * v.imag() - u.imag() * v.real();
            if (cross <= tol)
                throw NonConvex("non-convex or collinear corner at vertex " +
                                std::to_string((i + 1) % n));
        }
        Polygon p;
        p.vertices_ = std::move(vertices);
        p.sides_.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            const cplx a = p.vertices_[i], b = p.vertices_[(i + 1) % n];
            p.sides_.push_back(Side{a, b, std::arg(b - a), std::abs(b - a)});
        }
        return p;
    }

    int size() const { return static_cast<int>(vertices_.size()); }
    const std::vector<cplx>& vertices() const { return vertices_; }
    const cplx& vertex(int i) const { return vertices_[mod(i)]; }
    const Side& side(int i) const { return sides_[mod(i)]; }
    const std::vector<Side>& sides() const { return sides_; }

    cplx centroid() const {
        cplx c = 0.0;
        for (const cplx& v : vertices_) c += v;
        return c / double(vertices_.size());
    }

    double diameter() const {
        double d = 0.0;
        for (size_t i = 0; i < vertices_.size(); ++i)
            for (size_t j = i + 1; j < vertices_.size(); ++j)
                d = std::max(d, std::abs(vertices_[i] - vertices_[j]));
        return d;
    }

    /// Signed distance to the boundary, positive inside (convexity makes it
    /// the minimum of the per-side half-plane distances).
    double signed_boundary_distance(const cplx& z) const {
        double d = 1e300;
        for (const Side& s : sides_) {
            const cplx nu = outward_normal(s);
            const cplx w = z - s.origin;
            d = std::min(d, -(w.real() * nu.real() + w.imag() * nu.imag()));
        }
        return d;
    }

    bool contains(const cplx& z, double margin = 0.0) const {
        return signed_boundary_distance(z) > margin;
    }

  private:
    int mod(int i) const {
        const int n = size();
        return ((i % n) + n) % n;
    }
    std::vector<cplx> vertices_;
    std::vector<Side> sides_;
};

inline Polygon build_polygon(std::vector<cplx> vertices) {
    return Polygon::build(std::move(vertices));
}

/// Similarity transform z -> e^{i theta}(z - t)/c with the spectral side
/// effect beta -> c * beta (the kernel family absorbs dilations only by
/// rescaling beta; rotations and translations leave it alone).
struct SimilarityGauge {
    double rotation = 0.0;  // theta
    cplx translation = 0.0;  // t
    double scale = 1.0;      // c > 0

    cplx apply(const cplx& z) const {
        return std::exp(cplx(0.0, rotation)) * (z - translation) / scale;
    }
    cplx invert(const cplx& w) const {
        return translation + scale * w * std::exp(cplx(0.0, -rotation));
    }
    double map_beta(double beta) const { return scale * beta; }
    /// Spectral parameter transforms as lambda -> c e^{-i theta} lambda so
    /// that the kernel e^{i lambda z - i beta^2 zbar/lambda} is preserved.
    cplx map_lambda(const cplx& lambda) const {
        return scale * std::exp(cplx(0.0, -rotation)) * lambda;
    }
};

enum class GaugeMode { SideOnUnitInterval, VertexAtI };

struct GaugeResult {
    SimilarityGauge gauge;
    Polygon polygon;
    double beta;
};

/// Reposition the polygon as the spectral arguments require.
///
/// SideOnUnitInterval: side i maps onto (0,1) with origin -> 1, end -> 0
/// (image angle pi) and every other vertex strictly below the real axis.
/// VertexAtI: vertex i maps to the imaginary unit and every other vertex
/// strictly below the real axis (a scale is chosen to make that possible).
inline GaugeResult gauge_align(const Polygon& poly, int i, GaugeMode mode, double beta) {
    const int n = poly.size();
    SimilarityGauge g;
    if (mode == GaugeMode::SideOnUnitInterval) {
        const Side& s = poly.side(i);
        g.rotation = M_PI - s.alpha;
        g.translation = s.end;
        g.scale = s.length;
    } else {
        // rotate the interior-wedge bisector at vertex i to point straight
        // down, then inflate until every other vertex clears the axis
        const cplx zi = poly.vertex(i);
        const cplx u1 = (poly.vertex(i + 1) - zi) / std::abs(poly.vertex(i + 1) - zi);
        const cplx u2 = (poly.vertex(i - 1) - zi) / std::abs(poly.vertex(i - 1) - zi);
        const cplx bis = u1 + u2;
        g.rotation = -M_PI / 2.0 - std::arg(bis);
        double depth = 1e300;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const cplx w = std::exp(cplx(0.0, g.rotation)) * (poly.vertex(j) - zi);
            depth = std::min(depth, -w.imag());
        }
        g.scale = 0.5 * depth;
        // e^{i theta}(z_i - t)/c = i
        g.translation = zi - cplx(0.0, 1.0) * g.scale * std::exp(cplx(0.0, -g.rotation));
    }

    std::vector<cplx> image(n);
    for (int j = 0; j < n; ++j) image[j] = g.apply(poly.vertex(j));
    Polygon mapped = Polygon::build(image);

    const double eps = 1e-12 * mapped.diameter();
    if (mode == GaugeMode::SideOnUnitInterval) {
        for (int j = 0; j < n; ++j) {
            const bool on_side = (j == ((i % n) + n) % n) || (j == ((i + 1) % n + n) % n);
            if (!on_side && image[j].imag() >= -eps)
                throw GeometryViolation("gauge image vertex not strictly below the axis");
        }
    } else {
        for (int j = 0; j < n; ++j) {
            if (j == ((i % n) + n) % n) continue;
            if (image[j].imag() >= -eps)
                throw GeometryViolation("gauge image vertex not strictly below the axis");
        }
    }
    return GaugeResult{g, std::move(mapped), g.map_beta(beta)};
}

}  // namespace polyhelm
