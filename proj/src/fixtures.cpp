#include "flowlab/fixtures.hpp"

#include <cmath>

namespace flowlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

MarkerCurve circle_curve(const TorusPoint& c, double r, std::size_t n,
                         const std::vector<PerturbMode>& modes) {
    std::vector<TorusPoint> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
        double rho = r;
        for (const auto& m : modes) rho += m.amp * std::cos(m.k * th + m.phase);
        nodes[i] = TorusPoint(c.x1 + rho * std::cos(th), c.x2 + rho * std::sin(th));
    }
    return MarkerCurve(std::move(nodes));
}

}  // namespace

BoundarySet make_circle(const TorusPoint& c, double r, std::size_t n,
                        const std::vector<PerturbMode>& modes) {
    return BoundarySet({circle_curve(c, r, n, modes)});
}

BoundarySet make_stripe(double width, std::size_t n, double center2) {
    if (width <= 0.0 || width >= 1.0) throw BadValue("stripe width must be in (0,1)");
    const double lo = center2 - width / 2.0;
    const double hi = center2 + width / 2.0;
    std::vector<TorusPoint> bottom(n), top(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(n);
        bottom[i] = TorusPoint(u, lo);        // traversed in +x1, outward normal -e2
        top[i] = TorusPoint(1.0 - u, hi);     // traversed in -x1, outward normal +e2
    }
    return BoundarySet({MarkerCurve(std::move(bottom)), MarkerCurve(std::move(top))});
}

BoundarySet make_two_circles(const TorusPoint& c1, double r1, const TorusPoint& c2, double r2,
                             std::size_t n) {
    return BoundarySet({circle_curve(c1, r1, n, {}), circle_curve(c2, r2, n, {})});
}

}  // namespace flowlab
