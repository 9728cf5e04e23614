#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flowlab/errors.hpp"
#include "flowlab/torus.hpp"

namespace flowlab {

/// Per-node differential-geometric data of a closed marker curve.
///
/// Sign conventions: the outward unit normal is the 90-degree clockwise
/// rotation of the unit tangent, and a circle traversed so that its outward
/// normal points away from the enclosed disk has curvature kappa = 1/r > 0.
struct CurveFrame {
    std::vector<double> ds;      ///< arclength weight per node (torus length units)
    std::vector<Vec2> tangent;   ///< unit tangents
    std::vector<Vec2> normal;    ///< outward unit normals
    std::vector<double> kappa;   ///< signed curvature
    double length = 0.0;         ///< total length, sum of ds
    double turning = 0.0;        ///< integral of kappa ds / (2 pi)

    std::size_t size() const { return ds.size(); }
};

enum class DerivScheme {
    Spectral,  ///< trigonometric differentiation in the periodic node parameter
    FD4,       ///< 4th-order centered finite differences (cheaper, used inside flows)
};

/// Closed discretized curve on the torus: N marker nodes, node i connected to
/// i+1 mod N. The winding vector records how many times the lift wraps each
/// period; (0,0) for an embedded loop, e.g. (1,0) for a lamella line.
class MarkerCurve {
public:
    MarkerCurve() = default;
    explicit MarkerCurve(std::vector<TorusPoint> nodes);

    std::size_t size() const { return nodes_.size(); }
    const std::vector<TorusPoint>& nodes() const { return nodes_; }
    const TorusPoint& node(std::size_t i) const { return nodes_[i]; }
    const std::array<int, 2>& winding() const { return winding_; }

    /// Lift of the nodes to R^2: consecutive wrapped differences accumulated
    /// from node 0. lift[N] = lift[0] + winding.
    std::vector<Vec2> lift() const;

    /// Throws DegenerateCurve/TooFewNodes when the node set is unusable.
    void validate_basic() const;

    /// O(N^2) segment-segment test on the lift; true when the curve crosses itself.
    bool self_intersects() const;

    MarkerCurve translated(const Vec2& eta) const;

private:
    std::vector<TorusPoint> nodes_;
    std::array<int, 2> winding_ = {0, 0};
};

/// The discrete boundary of a region E subset of T^2: one or more disjoint
/// marker curves, all oriented so the 90-degree-clockwise rotation of the
/// tangent points out of E.
class BoundarySet {
public:
    BoundarySet() = default;
    explicit BoundarySet(std::vector<MarkerCurve> components);

    std::size_t num_components() const { return components_.size(); }
    const std::vector<MarkerCurve>& components() const { return components_; }
    const MarkerCurve& component(std::size_t k) const { return components_[k]; }
    std::size_t total_nodes() const;

    BoundarySet translated(const Vec2& eta) const;
    bool any_self_intersection() const;
    /// Segment-level test across distinct components.
    bool components_intersect() const;

private:
    std::vector<MarkerCurve> components_;
};

CurveFrame build_frame(const MarkerCurve& c, DerivScheme scheme = DerivScheme::Spectral);

/// Frames for all components, concatenated in component order.
struct BoundaryFrame {
    std::vector<CurveFrame> per_component;
    double length = 0.0;
    /// Flattened views over all nodes in component order.
    std::vector<double> ds, kappa;
    std::vector<Vec2> normal, tangent;
    std::vector<TorusPoint> points;
    std::vector<std::size_t> component_of;  ///< component index per flattened node
    std::vector<std::size_t> offset;        ///< first flattened index per component
};

BoundaryFrame build_frame(const BoundarySet& b, DerivScheme scheme = DerivScheme::Spectral);

enum class ResampleScheme {
    Trig,         ///< trigonometric interpolant; exact on band-limited curves
    CubicSpline,  ///< periodic cubic interpolant, O(h^4) length preservation
};

/// N nodes at equal arclength spacing along a periodic interpolant of c.
MarkerCurve resample_equal_arclength(const MarkerCurve& c, std::size_t n,
                                     ResampleScheme scheme = ResampleScheme::Trig);

/// Area of the enclosed region E, in (0,1). Shoelace on a consistent lift per
/// component; the mod-1 reduction is the parity bookkeeping for components
/// winding around the torus.
double enclosed_volume(const BoundarySet& b);

struct SignedDistanceResult {
    double d = 0.0;          ///< negative inside E, positive outside
    TorusPoint foot;         ///< closest boundary point
    Vec2 normal_at_foot;     ///< outward normal at the foot
    bool unique = true;      ///< false when p lies outside the tubular neighborhood
};

/// Width of the tubular neighborhood in which closest points are trusted:
/// 0.4 x min(local reach estimate, half of the minimum inter-component gap).
double tube_halfwidth(const BoundarySet& b, const BoundaryFrame& frame);

/// Pass a precomputed tube halfwidth when querying many points; a negative
/// value recomputes it (O(N^2)).
SignedDistanceResult signed_distance(const BoundarySet& b, const BoundaryFrame& frame,
                                     const TorusPoint& p, double tube = -1.0);

/// Heights psi (one per reference node) writing `target` as a normal graph
/// over `reference`; throws NotAGraph when a normal line has 0 or >= 2
/// intersections inside the tubular neighborhood.
std::vector<double> normal_graph(const BoundarySet& reference, const BoundaryFrame& ref_frame,
                                 const BoundarySet& target);

/// Offsets every node of b along the (interpolated) normal field by the
/// per-node heights psi; used to build normal-graph fixtures.
BoundarySet offset_along_normals(const BoundarySet& b, const BoundaryFrame& frame,
                                 const std::vector<double>& psi);

/// Curve snapshot file IO ("torus-curve v1" text format).
void write_curve_file(std::ostream& os, const BoundarySet& b);
void write_curve_file(const std::string& path, const BoundarySet& b);
BoundarySet read_curve_file(std::istream& is);
BoundarySet read_curve_file_path(const std::string& path);

}  // namespace flowlab
