#include "flowlab/fields.hpp"

#include <cmath>
#include <random>

namespace flowlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

NormalExtensionField::NormalExtensionField(const BoundarySet& b, const BoundaryFrame& frame)
    : b_(b), frame_(frame), tube_(tube_halfwidth(b, frame)) {}

Vec2 NormalExtensionField::operator()(const Vec2& p) const {
    const auto sd = signed_distance(b_, frame_, TorusPoint::canon(p), tube_);
    if (std::abs(sd.d) < 1e-12) return sd.normal_at_foot;
    return wrap_diff(p, sd.foot.as_vec()) / sd.d;
}

TrigPolyField::TrigPolyField(std::uint32_t seed, int max_mode, double amplitude) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    mean_ = {amplitude * gauss(rng), amplitude * gauss(rng)};
    for (int k1 = -max_mode; k1 <= max_mode; ++k1) {
        for (int k2 = -max_mode; k2 <= max_mode; ++k2) {
            if (k1 == 0 && k2 == 0) continue;
            if (k1 < 0 || (k1 == 0 && k2 < 0)) continue;  // one of each conjugate pair
            const double decay = amplitude / (1.0 + k1 * k1 + k2 * k2);
            terms_.push_back({static_cast<double>(k1), static_cast<double>(k2),
                              decay * gauss(rng), decay * gauss(rng), decay * gauss(rng),
                              decay * gauss(rng)});
        }
    }
}

Vec2 TrigPolyField::operator()(const Vec2& p) const {
    Vec2 acc = mean_;
    for (const auto& t : terms_) {
        const double ang = kTwoPi * (t.k1 * p.x + t.k2 * p.y);
        const double c = std::cos(ang), s = std::sin(ang);
        acc.x += t.cx * c + t.sx * s;
        acc.y += t.cy * c + t.sy * s;
    }
    return acc;
}

Vec2 advect_rk4(const Vec2& p0, const VectorField2& field, double t_end, int n_steps) {
    Vec2 p = p0;
    const double h = t_end / n_steps;
    for (int s = 0; s < n_steps; ++s) {
        const Vec2 k1 = field(p);
        const Vec2 k2 = field(p + k1 * (h / 2));
        const Vec2 k3 = field(p + k2 * (h / 2));
        const Vec2 k4 = field(p + k3 * h);
        p += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    return p;
}

BoundarySet advect_boundary(const BoundarySet& b, const VectorField2& field, double t_end,
                            int n_steps) {
    std::vector<MarkerCurve> comps;
    comps.reserve(b.num_components());
    for (const auto& c : b.components()) {
        std::vector<TorusPoint> nodes(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            nodes[i] = TorusPoint::canon(advect_rk4(c.node(i).as_vec(), field, t_end, n_steps));
        }
        comps.emplace_back(std::move(nodes));
    }
    return BoundarySet(std::move(comps));
}

}  // namespace flowlab
