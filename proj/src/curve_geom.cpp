#include <algorithm>
#include <cmath>
#include <limits>

#include "flowlab/curve.hpp"

namespace flowlab {

namespace {

// Catmull-Rom segment through p1,p2 with outer neighbors p0,p3; t in [0,1].
struct CubicSeg {
    Vec2 a, b, c, d;  // c(t) = a + b t + c t^2 + d t^3

    static CubicSeg through(const Vec2& p0, const Vec2& p1, const Vec2& p2, const Vec2& p3) {
        CubicSeg s;
        s.a = p1;
        s.b = (p2 - p0) * 0.5;
        s.c = p0 - p1 * 2.5 + p2 * 2.0 - p3 * 0.5;
        s.d = (p1 - p2) * 1.5 + (p3 - p0) * 0.5;
        return s;
    }
    Vec2 at(double t) const { return a + b * t + c * (t * t) + d * (t * t * t); }
    Vec2 deriv(double t) const { return b + c * (2 * t) + d * (3 * t * t); }
    Vec2 deriv2(double t) const { return c * 2.0 + d * (6 * t); }
};

struct FootCandidate {
    double dist2 = std::numeric_limits<double>::infinity();
    Vec2 foot;
    Vec2 tangent;
};

// Projected Newton for the closest point on one cubic segment.
void refine_on_segment(const CubicSeg& seg, const Vec2& p, FootCandidate& best) {
    double t = 0.5;
    {
        // chord initialization
        const Vec2 q0 = seg.at(0.0), q1 = seg.at(1.0);
        const Vec2 e = q1 - q0;
        const double ee = e.norm2();
        if (ee > 0) t = std::clamp((p - q0).dot(e) / ee, 0.0, 1.0);
    }
    for (int it = 0; it < 30; ++it) {
        const Vec2 c = seg.at(t), c1 = seg.deriv(t), c2 = seg.deriv2(t);
        const Vec2 r = p - c;
        const double g = -r.dot(c1);
        const double h = c1.dot(c1) - r.dot(c2);
        double step = (std::abs(h) > 1e-30) ? -g / h : 0.0;
        step = std::clamp(step, -0.5, 0.5);
        double tn = std::clamp(t + step, 0.0, 1.0);
        if (std::abs(tn - t) < 1e-14) {
            t = tn;
            break;
        }
        t = tn;
    }
    const Vec2 c = seg.at(t);
    const double d2 = (p - c).norm2();
    if (d2 < best.dist2) {
        best.dist2 = d2;
        best.foot = c;
        best.tangent = seg.deriv(t);
    }
}

}  // namespace

double tube_halfwidth(const BoundarySet& b, const BoundaryFrame& frame) {
    double reach = 0.25;  // cap: a quarter period keeps wrapped differences unambiguous
    for (double k : frame.kappa) {
        if (std::abs(k) > 1e-12) reach = std::min(reach, 1.0 / std::abs(k));
    }
    // Self-proximity of far-apart arcs of the same component.
    for (std::size_t c = 0; c < b.num_components(); ++c) {
        const auto& comp = b.component(c);
        const auto& f = frame.per_component[c];
        const std::size_t n = comp.size();
        std::vector<double> s(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) s[i + 1] = s[i] + f.ds[i];
        const double len = s[n];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double dist = torus_dist(comp.node(i), comp.node(j));
                double arc = s[j] - s[i];
                arc = std::min(arc, len - arc);
                if (arc > 3.0 * dist) reach = std::min(reach, dist / 2.0);
            }
        }
    }
    // Gap between distinct components.
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < b.num_components(); ++a) {
        for (std::size_t c = a + 1; c < b.num_components(); ++c) {
            for (const auto& pa : b.component(a).nodes()) {
                for (const auto& pc : b.component(c).nodes()) {
                    gap = std::min(gap, torus_dist(pa, pc));
                }
            }
        }
    }
    if (std::isfinite(gap)) reach = std::min(reach, gap / 2.0);
    return 0.4 * reach;
}

SignedDistanceResult signed_distance(const BoundarySet& b, const BoundaryFrame& frame,
                                     const TorusPoint& p, double tube) {
    if (tube < 0) tube = tube_halfwidth(b, frame);

    // Nearest node scan, then local cubic refinement around it.
    double best_node_d2 = std::numeric_limits<double>::infinity();
    std::size_t best_comp = 0, best_idx = 0;
    for (std::size_t c = 0; c < b.num_components(); ++c) {
        const auto& comp = b.component(c);
        for (std::size_t i = 0; i < comp.size(); ++i) {
            const double d2 = wrap_diff(comp.node(i), p).norm2();
            if (d2 < best_node_d2) {
                best_node_d2 = d2;
                best_comp = c;
                best_idx = i;
            }
        }
    }

    const auto& comp = b.component(best_comp);
    const std::size_t n = comp.size();
    const Vec2 pv = p.as_vec();
    auto local = [&](std::ptrdiff_t i) {
        const std::size_t j = static_cast<std::size_t>(((i % static_cast<std::ptrdiff_t>(n)) +
                                                        static_cast<std::ptrdiff_t>(n)) %
                                                       static_cast<std::ptrdiff_t>(n));
        return pv + wrap_diff(comp.node(j).as_vec(), pv);
    };

    FootCandidate best;
    const auto i0 = static_cast<std::ptrdiff_t>(best_idx);
    for (std::ptrdiff_t sidx = i0 - 2; sidx <= i0 + 1; ++sidx) {
        const CubicSeg seg =
            CubicSeg::through(local(sidx - 1), local(sidx), local(sidx + 1), local(sidx + 2));
        refine_on_segment(seg, pv, best);
    }

    SignedDistanceResult out;
    const Vec2 nrm = best.tangent.normalized().rot_cw();
    const Vec2 r = pv - best.foot;
    const double dist = std::sqrt(best.dist2);
    out.d = (r.dot(nrm) >= 0.0) ? dist : -dist;
    out.foot = TorusPoint::canon(best.foot);
    out.normal_at_foot = nrm;
    out.unique = dist < tube;
    return out;
}

std::vector<double> normal_graph(const BoundarySet& reference, const BoundaryFrame& ref_frame,
                                 const BoundarySet& target) {
    const double eps = tube_halfwidth(reference, ref_frame);
    std::vector<double> psi;
    psi.reserve(ref_frame.points.size());

    for (std::size_t i = 0; i < ref_frame.points.size(); ++i) {
        const Vec2 y = ref_frame.points[i].as_vec();
        const Vec2 nu = ref_frame.normal[i];
        std::vector<double> hits;
        for (const auto& tc : target.components()) {
            const std::size_t m = tc.size();
            for (std::size_t j = 0; j < m; ++j) {
                const Vec2 b1 = y + wrap_diff(tc.node(j).as_vec(), y);
                const Vec2 e = wrap_diff(tc.node((j + 1) % m), tc.node(j));
                // y + t nu = b1 + s e
                const double det = nu.cross(-e);
                if (std::abs(det) < 1e-14) continue;
                const Vec2 rhs = b1 - y;
                const double t = rhs.cross(-e) / det;
                const double s = nu.cross(rhs) / det;
                // endpoint slack: rays through a shared target node report the
                // same t from both segments and are merged by the dedupe below
                if (s >= -1e-9 && s < 1.0 + 1e-9 && std::abs(t) <= eps) hits.push_back(t);
            }
        }
        std::sort(hits.begin(), hits.end());
        hits.erase(std::unique(hits.begin(), hits.end(),
                               [](double a, double c) { return std::abs(a - c) < 1e-9; }),
                   hits.end());
        if (hits.size() != 1) {
            throw NotAGraph("normal line has " + std::to_string(hits.size()) +
                            " intersections with the target");
        }
        psi.push_back(hits.front());
    }
    return psi;
}

BoundarySet offset_along_normals(const BoundarySet& b, const BoundaryFrame& frame,
                                 const std::vector<double>& psi) {
    if (psi.size() != frame.points.size()) throw BadValue("offset heights size mismatch");
    std::vector<MarkerCurve> comps;
    comps.reserve(b.num_components());
    std::size_t at = 0;
    for (std::size_t c = 0; c < b.num_components(); ++c) {
        const std::size_t n = b.component(c).size();
        std::vector<TorusPoint> nodes(n);
        for (std::size_t i = 0; i < n; ++i, ++at) {
            nodes[i] = frame.points[at].translated(frame.normal[at] * psi[at]);
        }
        comps.emplace_back(std::move(nodes));
    }
    return BoundarySet(std::move(comps));
}

}  // namespace flowlab
