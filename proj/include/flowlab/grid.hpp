#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "flowlab/curve.hpp"
#include "flowlab/torus.hpp"

namespace flowlab {

/// M x M samples on the uniform torus grid, sample (ix,iy) at (ix/M, iy/M).
/// Cells are squares of side 1/M centered on the sample points.
struct GridField {
    std::size_t m = 0;
    std::vector<double> a;  // row-major a[iy*m + ix]

    GridField() = default;
    explicit GridField(std::size_t m_, double fill = 0.0) : m(m_), a(m_ * m_, fill) {}

    double& at(std::size_t ix, std::size_t iy) { return a[iy * m + ix]; }
    double at(std::size_t ix, std::size_t iy) const { return a[iy * m + ix]; }
    double mean() const;

    /// Periodic bicubic (Catmull-Rom) interpolation at an arbitrary point.
    double sample(const TorusPoint& p) const;
};

/// Spectral solver for -Delta v = rhs - mean(rhs) with zero-mean v.
/// Holds FFT plans; one instance per thread of use.
class SpectralPoisson {
public:
    explicit SpectralPoisson(std::size_t m);
    ~SpectralPoisson();

    std::size_t m() const;
    GridField solve(const GridField& rhs) const;
    /// Dirichlet energy int |grad v|^2 of the solution, straight from the
    /// rhs spectrum: sum over k != 0 of |rhs_k|^2 / (4 pi^2 |k|^2).
    double gradient_energy(const GridField& rhs) const;
    /// Applies the spectral Laplacian (for residual checks).
    GridField laplacian(const GridField& f) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// u_E = 2 chi_E - 1 rasterized with per-cell area fractions: cells crossed by
/// the boundary get the exact fraction of a linear interface reconstruction,
/// everything else is filled by crossing parity.
GridField rasterize_indicator(const BoundarySet& b, std::size_t m);

/// Debug dump ("torus-field v1" text format).
void write_field_file(std::ostream& os, const GridField& f);
void write_field_file(const std::string& path, const GridField& f);
GridField read_field_file(std::istream& is);

}  // namespace flowlab
