#pragma once

#include <memory>
#include <vector>

#include "flowlab/curve.hpp"
#include "flowlab/fields.hpp"
#include "flowlab/greens.hpp"
#include "flowlab/grid.hpp"

namespace flowlab {

struct EnergyBreakdown {
    double area = 0.0;
    double nonlocal = 0.0;  // int |grad v_E|^2
    double gamma = 0.0;
    double j = 0.0;  // area + gamma * nonlocal
};

/// Traces of the constrained-energy data on the boundary nodes.
struct BoundaryTrace {
    std::vector<double> v;         // v_E
    std::vector<double> dnu_v;     // normal derivative of v_E (empty when not requested)
    std::vector<double> kappa;
    std::vector<double> residual;  // kappa + 4 gamma v_E
    double gamma = 0.0;
    double lambda = 0.0;  // arclength mean of the residual (Lagrange estimate)
    double defect = 0.0;  // arclength std of the residual (criticality defect)
};

/// Evaluates the area/nonlocal energies, boundary traces, and variation
/// checks. Owns the grid solver and the Green's evaluator; use one instance
/// per thread.
class FunctionalEvaluator {
public:
    explicit FunctionalEvaluator(std::size_t grid_m = 512,
                                 GreensEvaluator::Params greens = GreensEvaluator::Params());

    std::size_t grid_m() const { return poisson_.m(); }
    const GreensEvaluator& greens() const { return greens_; }
    const SpectralPoisson& poisson() const { return poisson_; }

    double area(const BoundaryFrame& frame) const { return frame.length; }
    double nonlocal_energy(const BoundarySet& b) const;
    EnergyBreakdown total_energy(const BoundarySet& b, const BoundaryFrame& frame,
                                 double gamma) const;
    EnergyBreakdown total_energy(const BoundarySet& b, double gamma) const;

    /// Zero-mean potential v_E on the grid.
    GridField potential(const BoundarySet& b) const;

    /// v_E by grid solve + bicubic interpolation; the normal derivative by the
    /// boundary formula grad v_E = -2 int G(.,y) nu(y) dmu(y).
    BoundaryTrace boundary_trace(const BoundarySet& b, const BoundaryFrame& frame, double gamma,
                                 bool with_normal_derivative = true) const;

    /// Nonlocal energy recomputed as int v (u - m) dx from a given solve;
    /// used for the internal two-route consistency check.
    double nonlocal_energy_by_pairing(const BoundarySet& b) const;

    /// Third route, boundary-only: pushing both volume integrals of
    /// iint_{E x E} G to the boundary leaves a double layer pairing with the
    /// smooth kernel -grad grad (Delta^-2 G). Spectrally tabulated once; the
    /// result is a smooth function of the node positions, which the
    /// finite-difference variation checks rely on.
    double nonlocal_energy_pairwise(const BoundaryFrame& frame) const;

private:
    GreensEvaluator greens_;
    SpectralPoisson poisson_;
    struct PairKernel {
        std::size_t m = 0;
        GridField hxx, hxy, hyy;
    };
    mutable std::shared_ptr<const PairKernel> pair_kernel_;
    const PairKernel& pair_kernel() const;
};

struct VariationCheck {
    double fd = 0.0;       // Richardson-extrapolated finite difference of J
    double formula = 0.0;  // boundary-integral formula
};

struct FdOptions {
    double dt0 = 0.0;       // initial step; 0 = automatic
    int max_levels = 6;
    double rtol = 1e-7;     // Richardson ladder stop criterion
    int rk_steps = 2;
    bool pairwise_nonlocal = true;  // smooth nonlocal route inside the FD ladder
};

/// First variation of J along the flow of X: central finite differences of
/// J(Phi_t(E)) against int (kappa + 4 gamma v_E) <X, nu> dmu.
VariationCheck first_variation_check(const FunctionalEvaluator& fe, const BoundarySet& b,
                                     double gamma, const VectorField2& x_field,
                                     FdOptions opt = FdOptions());

}  // namespace flowlab
