#pragma once

#include <Eigen/Dense>

#include "flowlab/curve.hpp"
#include "flowlab/greens.hpp"

namespace flowlab {

/// Nystrom discretization of the single-layer integral on the boundary:
///   (A f)_i  ~  int_{dE} G(x_i, y) f(y) dmu(y).
///
/// Off-diagonal entries are the punctured trapezoid rule w_j G(x_i, x_j); the
/// diagonal carries the coincidence limit of the regular part plus the exact
/// integral of the subtracted log written in the arclength-sine variable
/// rho*(s,s') = (L/pi) |sin(pi (s-s')/L)|, whose closed form over a component
/// of length L is L log(L / (2 pi)).
struct LayerQuadrature {
    Eigen::MatrixXd a;  // N x N, flattened node order of the BoundaryFrame

    static LayerQuadrature build(const BoundaryFrame& frame, const GreensEvaluator& g);
};

/// Cumulative arclength coordinate of each flattened node within its component.
std::vector<double> arclength_coords(const BoundaryFrame& frame);

}  // namespace flowlab
