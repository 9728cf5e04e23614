#include "flowlab/functional.hpp"

#include <cmath>
#include <complex>

#include "fft_util.hpp"
#include "layer_quad.hpp"

namespace flowlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kPairKernelGrid = 1024;
}  // namespace

FunctionalEvaluator::FunctionalEvaluator(std::size_t grid_m, GreensEvaluator::Params greens)
    : greens_(greens), poisson_(grid_m) {}

const FunctionalEvaluator::PairKernel& FunctionalEvaluator::pair_kernel() const {
    if (!pair_kernel_) {
        const std::size_t m = kPairKernelGrid;
        fft::Rfft2d fft(m);
        const std::size_t nx = m / 2 + 1;
        auto make = [&](int a, int b) {
            std::vector<std::complex<double>> c(m * nx, 0.0);
            for (std::size_t iy = 0; iy < m; ++iy) {
                const double fy = fft::freq_of(iy, m);
                for (std::size_t kx = 0; kx < nx; ++kx) {
                    const double fx = fft::freq_of(kx, m);
                    const double k2 = fx * fx + fy * fy;
                    if (k2 == 0.0) continue;
                    const double ka = (a == 0) ? fx : fy;
                    const double kb = (b == 0) ? fx : fy;
                    // -grad grad of the k^-6 kernel: k_a k_b / (16 pi^4 |k|^6)
                    c[iy * nx + kx] = ka * kb / (16.0 * kPi * kPi * kPi * kPi * k2 * k2 * k2);
                }
            }
            GridField f(m);
            f.a = fft.inverse(c);
            return f;
        };
        auto pk = std::make_shared<PairKernel>();
        pk->m = m;
        pk->hxx = make(0, 0);
        pk->hxy = make(0, 1);
        pk->hyy = make(1, 1);
        pair_kernel_ = std::move(pk);
    }
    return *pair_kernel_;
}

double FunctionalEvaluator::nonlocal_energy_pairwise(const BoundaryFrame& frame) const {
    const PairKernel& pk = pair_kernel();
    const std::size_t n = frame.ds.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 ni = frame.normal[i] * frame.ds[i];
        // diagonal term plus symmetric off-diagonal sweep
        {
            const double hxx = pk.hxx.a[0], hxy = pk.hxy.a[0], hyy = pk.hyy.a[0];
            acc += hxx * ni.x * ni.x + 2.0 * hxy * ni.x * ni.y + hyy * ni.y * ni.y;
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec2 nj = frame.normal[j] * frame.ds[j];
            const TorusPoint d = TorusPoint::canon(wrap_diff(frame.points[i], frame.points[j]));
            const double hxx = pk.hxx.sample(d);
            const double hxy = pk.hxy.sample(d);
            const double hyy = pk.hyy.sample(d);
            acc += 2.0 * (hxx * ni.x * nj.x + hxy * (ni.x * nj.y + ni.y * nj.x) +
                          hyy * ni.y * nj.y);
        }
    }
    return 4.0 * acc;
}

double FunctionalEvaluator::nonlocal_energy(const BoundarySet& b) const {
    return poisson_.gradient_energy(rasterize_indicator(b, poisson_.m()));
}

EnergyBreakdown FunctionalEvaluator::total_energy(const BoundarySet& b,
                                                  const BoundaryFrame& frame,
                                                  double gamma) const {
    EnergyBreakdown e;
    e.area = frame.length;
    e.gamma = gamma;
    e.nonlocal = nonlocal_energy(b);
    e.j = e.area + gamma * e.nonlocal;
    return e;
}

EnergyBreakdown FunctionalEvaluator::total_energy(const BoundarySet& b, double gamma) const {
    return total_energy(b, build_frame(b), gamma);
}

GridField FunctionalEvaluator::potential(const BoundarySet& b) const {
    return poisson_.solve(rasterize_indicator(b, poisson_.m()));
}

double FunctionalEvaluator::nonlocal_energy_by_pairing(const BoundarySet& b) const {
    const GridField u = rasterize_indicator(b, poisson_.m());
    const GridField v = poisson_.solve(u);
    const double m = u.mean();
    double acc = 0.0;
    for (std::size_t i = 0; i < u.a.size(); ++i) acc += v.a[i] * (u.a[i] - m);
    return acc / static_cast<double>(u.a.size());
}

BoundaryTrace FunctionalEvaluator::boundary_trace(const BoundarySet& b,
                                                  const BoundaryFrame& frame, double gamma,
                                                  bool with_normal_derivative) const {
    BoundaryTrace out;
    out.gamma = gamma;
    out.kappa = frame.kappa;
    const std::size_t n = frame.ds.size();

    const GridField v = potential(b);
    out.v.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.v[i] = v.sample(frame.points[i]);

    if (with_normal_derivative) {
        const LayerQuadrature lq = LayerQuadrature::build(frame, greens_);
        out.dnu_v.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            Vec2 acc{0, 0};
            for (std::size_t j = 0; j < n; ++j) acc += frame.normal[j] * lq.a(i, j);
            out.dnu_v[i] = -2.0 * acc.dot(frame.normal[i]);
        }
    }

    out.residual.resize(n);
    double wsum = 0.0, rsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.residual[i] = frame.kappa[i] + 4.0 * gamma * out.v[i];
        wsum += frame.ds[i];
        rsum += out.residual[i] * frame.ds[i];
    }
    out.lambda = rsum / wsum;
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = out.residual[i] - out.lambda;
        var += d * d * frame.ds[i];
    }
    out.defect = std::sqrt(var / wsum);
    return out;
}

VariationCheck first_variation_check(const FunctionalEvaluator& fe, const BoundarySet& b,
                                     double gamma, const VectorField2& x_field, FdOptions opt) {
    const BoundaryFrame frame = build_frame(b);
    VariationCheck out;

    // formula side
    const bool needs_potential = gamma != 0.0;
    const BoundaryTrace tr = needs_potential
                                 ? fe.boundary_trace(b, frame, gamma, false)
                                 : BoundaryTrace{};
    double acc = 0.0;
    double max_x = 0.0;
    for (std::size_t i = 0; i < frame.ds.size(); ++i) {
        const Vec2 x = x_field(frame.points[i].as_vec());
        max_x = std::max(max_x, x.norm());
        const double res = needs_potential ? tr.residual[i] : frame.kappa[i];
        acc += res * x.dot(frame.normal[i]) * frame.ds[i];
    }
    out.formula = acc;

    // finite-difference side with a Richardson ladder (step ratio 2)
    auto j_of = [&](double t) {
        const BoundarySet moved = advect_boundary(b, x_field, t, opt.rk_steps);
        const BoundaryFrame mf = build_frame(moved);
        if (gamma == 0.0) return mf.length;
        const double nl = opt.pairwise_nonlocal ? fe.nonlocal_energy_pairwise(mf)
                                                : fe.nonlocal_energy(moved);
        return mf.length + gamma * nl;
    };
    double dt = opt.dt0;
    if (dt <= 0.0) {
        double minds = 1e300;
        for (double d : frame.ds) minds = std::min(minds, d);
        dt = std::min(0.05, 8.0 * minds / std::max(max_x, 1e-12));
    }
    double prev_plain = 0.0, prev_rich = 0.0, last_diff = 1e300;
    bool have_prev = false;
    for (int level = 0; level < opt.max_levels; ++level) {
        const double plain = (j_of(dt) - j_of(-dt)) / (2.0 * dt);
        if (have_prev) {
            const double rich = (4.0 * plain - prev_plain) / 3.0;  // halved step each level
            if (level >= 2) {
                last_diff = std::abs(rich - prev_rich);
                const double thresh = std::max(
                    opt.atol, opt.rtol * std::max(std::abs(rich), std::abs(out.formula)));
                if (last_diff <= thresh) {
                    out.fd = rich;
                    return out;
                }
            }
            prev_rich = rich;
        }
        prev_plain = plain;
        have_prev = true;
        dt /= 2.0;
    }
    out.fd = prev_rich;
    const double thresh =
        std::max(opt.atol, opt.rtol * std::max(std::abs(prev_rich), std::abs(out.formula)));
    if (last_diff > 10.0 * thresh) {
        throw NonConvergedDerivative("first-variation Richardson ladder failed to settle");
    }
    return out;
}

}  // namespace flowlab
