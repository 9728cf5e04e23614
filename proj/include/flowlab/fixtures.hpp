#pragma once

#include <vector>

#include "flowlab/curve.hpp"

namespace flowlab {

/// One cosine mode of a normal-graph perturbation: psi(theta) = amp * cos(k theta + phase).
struct PerturbMode {
    int k = 0;
    double amp = 0.0;
    double phase = 0.0;
};

/// Disk of radius r centered at c, boundary sampled with n nodes, optionally
/// perturbed along the outward normal by a sum of cosine modes.
BoundarySet make_circle(const TorusPoint& c, double r, std::size_t n,
                        const std::vector<PerturbMode>& modes = {});

/// Horizontal stripe of the given width centered at x2 = center2; two lamella
/// lines with n nodes each.
BoundarySet make_stripe(double width, std::size_t n, double center2 = 0.5);

BoundarySet make_two_circles(const TorusPoint& c1, double r1, const TorusPoint& c2, double r2,
                             std::size_t n);

}  // namespace flowlab
