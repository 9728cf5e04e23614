#pragma once

#include <complex>
#include <vector>

#include "flowlab/errors.hpp"
#include "flowlab/torus.hpp"

namespace flowlab {

/// Zero-mean Green's function of the Laplacian on T^2:
///   -Delta_x G(x,y) = delta_y - 1,   integral of G(.,y) = 0.
///
/// Evaluation is by Ewald summation: a short-range lattice-image sum of the
/// Gaussian-screened log kernel (exponential-integral form) plus a smooth
/// spectral remainder. A theta-function fast path evaluates the same G with
/// a handful of terms; it is cross-checked against the Ewald form on
/// construction and used in matrix-assembly inner loops.
class GreensEvaluator {
public:
    struct Params {
        double sigma = 0.35;  ///< Ewald splitting width
        int k_real = 0;       ///< lattice-image range; 0 = derived from sigma
        int k_spectral = 0;   ///< Fourier cutoff; 0 = derived from sigma
    };

    GreensEvaluator() : GreensEvaluator(Params()) {}
    explicit GreensEvaluator(Params p);

    /// Ewald-split evaluation; throws SingularArgument when x == y.
    double value(const TorusPoint& x, const TorusPoint& y) const;
    /// Gradient in x of the Ewald split.
    Vec2 gradient(const TorusPoint& x, const TorusPoint& y) const;

    /// Same G through the first Jacobi theta function (few-term series).
    double value_fast(const TorusPoint& x, const TorusPoint& y) const;
    Vec2 gradient_fast(const TorusPoint& x, const TorusPoint& y) const;

    double value_diff(const Vec2& d) const;       // Ewald on a wrapped difference
    double value_fast_diff(const Vec2& d) const;  // theta path on a wrapped difference
    Vec2 gradient_fast_diff(const Vec2& d) const;

    /// lim_{y->x} [ G(x,y) + log|x-y| / (2 pi) ]; constant on the flat torus.
    double coincidence_regular() const { return regular_const_; }

    double sigma() const { return sigma_; }
    int k_real() const { return k_real_; }
    int k_spectral() const { return k_spectral_; }

private:
    double sigma_;
    int k_real_;
    int k_spectral_;
    double r_cut2_;
    std::vector<Vec2> images_;  // candidate lattice offsets for the real-space sum
    struct Mode {
        double k1, k2, coef;
    };
    std::vector<Mode> modes_;
    double self_energy_;    // -sigma^2/4, the zero-mean constant
    double regular_const_;  // coincidence limit of the regular part
    double theta_offset_;   // additive constant calibrating the theta path

    double ewald_real(const Vec2& d) const;
    double ewald_spectral(const Vec2& d) const;
};

}  // namespace flowlab
