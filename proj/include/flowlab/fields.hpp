#pragma once

#include <cstdint>
#include <vector>

#include "flowlab/curve.hpp"

namespace flowlab {

/// A smooth vector field on (a neighborhood of) the torus, used to drive
/// finite-difference variation checks by advecting marker nodes.
struct VectorField2 {
    virtual ~VectorField2() = default;
    virtual Vec2 operator()(const Vec2& p) const = 0;
};

/// Constant field: translations.
struct ConstantField final : VectorField2 {
    Vec2 v;
    explicit ConstantField(const Vec2& v_) : v(v_) {}
    Vec2 operator()(const Vec2&) const override { return v; }
};

/// grad d_E: the unit extension of the outward normal along normal lines.
class NormalExtensionField final : public VectorField2 {
public:
    NormalExtensionField(const BoundarySet& b, const BoundaryFrame& frame);
    Vec2 operator()(const Vec2& p) const override;

private:
    const BoundarySet& b_;
    const BoundaryFrame& frame_;
    double tube_;
};

/// Random band-limited trigonometric field with seeded coefficients; smooth
/// on all of T^2.
class TrigPolyField final : public VectorField2 {
public:
    TrigPolyField(std::uint32_t seed, int max_mode = 2, double amplitude = 1.0);
    Vec2 operator()(const Vec2& p) const override;

private:
    struct Term {
        double k1, k2, cx, sx, cy, sy;
    };
    std::vector<Term> terms_;
    Vec2 mean_;
};

/// RK4 integration of dp/dt = X(p) from t = 0 to t = t_end in n_steps.
Vec2 advect_rk4(const Vec2& p0, const VectorField2& field, double t_end, int n_steps);

/// Advect every node of a boundary along the field.
BoundarySet advect_boundary(const BoundarySet& b, const VectorField2& field, double t_end,
                            int n_steps);

}  // namespace flowlab
