#include <cmath>
#include <numeric>

#include "fft_util.hpp"
#include "flowlab/curve.hpp"

namespace flowlab {

namespace {

// Periodic cubic spline on uniform parameter spacing h: second-derivative
// moments from the cyclic tridiagonal system M_{j-1} + 4 M_j + M_{j+1} = rhs_j.
std::vector<double> cyclic_spline_moments(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double fm = f[(j + n - 1) % n], f0 = f[j], fp = f[(j + 1) % n];
        rhs[j] = 6.0 * (fp - 2.0 * f0 + fm) / (h * h);
    }
    // Sherman-Morrison on the cyclic system with diagonal 4, off-diagonals 1.
    std::vector<double> u(n, 0.0);
    u[0] = 1.0;
    u[n - 1] = 1.0;
    auto thomas = [&](std::vector<double> d, std::vector<double> r) {
        std::vector<double> c(n, 1.0);
        for (std::size_t i = 1; i < n; ++i) {
            const double m = 1.0 / d[i - 1];
            d[i] -= m * c[i - 1];
            r[i] -= m * r[i - 1];
        }
        std::vector<double> x(n);
        x[n - 1] = r[n - 1] / d[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) x[i] = (r[i] - c[i] * x[i + 1]) / d[i];
        return x;
    };
    std::vector<double> diag(n, 4.0);
    diag[0] -= 1.0;
    diag[n - 1] -= 1.0;
    auto y = thomas(diag, rhs);
    auto z = thomas(diag, u);
    const double fact = (y[0] + y[n - 1]) / (1.0 + z[0] + z[n - 1]);
    std::vector<double> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = y[i] - fact * z[i];
    return m;
}

struct SplineCurve {
    std::size_t n = 0;
    double h = 0.0;
    Vec2 winding;
    std::vector<double> px, py;  // periodic part samples
    std::vector<double> mx, my;  // spline moments of the periodic part

    Vec2 periodic_at(double u, int deriv) const {
        double uu = u - std::floor(u);
        double t = uu * static_cast<double>(n);
        auto j = static_cast<std::size_t>(t);
        if (j >= n) j = n - 1;
        t -= static_cast<double>(j);
        const std::size_t jp = (j + 1) % n;
        auto comp = [&](const std::vector<double>& f, const std::vector<double>& m) {
            const double A = 1.0 - t, B = t;
            if (deriv == 0) {
                return A * f[j] + B * f[jp] +
                       ((A * A * A - A) * m[j] + (B * B * B - B) * m[jp]) * h * h / 6.0;
            }
            if (deriv == 1) {
                return (f[jp] - f[j]) / h +
                       ((3.0 * B * B - 1.0) * m[jp] - (3.0 * A * A - 1.0) * m[j]) * h / 6.0;
            }
            return A * m[j] + B * m[jp];
        };
        // derivatives are with respect to u = (j + t) h with h = 1/n
        return {comp(px, mx), comp(py, my)};
    }

    Vec2 at(double u) const { return periodic_at(u, 0) + winding * u; }
    Vec2 deriv(double u) const { return periodic_at(u, 1) + winding; }
};

SplineCurve build_spline(const MarkerCurve& c) {
    SplineCurve s;
    s.n = c.size();
    s.h = 1.0 / static_cast<double>(s.n);
    s.winding = {static_cast<double>(c.winding()[0]), static_cast<double>(c.winding()[1])};
    const auto l = c.lift();
    s.px.resize(s.n);
    s.py.resize(s.n);
    for (std::size_t j = 0; j < s.n; ++j) {
        const double u = static_cast<double>(j) * s.h;
        s.px[j] = l[j].x - s.winding.x * u;
        s.py[j] = l[j].y - s.winding.y * u;
    }
    s.mx = cyclic_spline_moments(s.px, s.h);
    s.my = cyclic_spline_moments(s.py, s.h);
    return s;
}

// 8-point Gauss-Legendre nodes/weights on [0,1].
constexpr double kGx[8] = {0.0198550717512319, 0.1016667612931866, 0.2372337950418355,
                           0.4082826787521751, 0.5917173212478249, 0.7627662049581645,
                           0.8983332387068134, 0.9801449282487681};
constexpr double kGw[8] = {0.0506142681451881, 0.1111905172266872, 0.1568533229389436,
                           0.1813418916891810, 0.1813418916891810, 0.1568533229389436,
                           0.1111905172266872, 0.0506142681451881};

double arc_between(const SplineCurve& s, double u0, double u1) {
    double acc = 0.0;
    const double w = u1 - u0;
    for (int g = 0; g < 8; ++g) acc += kGw[g] * s.deriv(u0 + kGx[g] * w).norm();
    return acc * w;
}

MarkerCurve resample_cubic(const MarkerCurve& c, std::size_t n_out) {
    const SplineCurve s = build_spline(c);
    const std::size_t n = s.n;
    std::vector<double> cum(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        cum[j + 1] = cum[j] + arc_between(s, j * s.h, (j + 1) * s.h);
    }
    const double total = cum[n];
    std::vector<TorusPoint> out(n_out);
    out[0] = TorusPoint::canon(s.at(0.0));
    std::size_t seg = 0;
    for (std::size_t k = 1; k < n_out; ++k) {
        const double target = total * static_cast<double>(k) / static_cast<double>(n_out);
        while (seg + 1 < n && cum[seg + 1] < target) ++seg;
        // Newton on s(u) - target within [seg h, (seg+1) h]
        double u = (static_cast<double>(seg) +
                    (target - cum[seg]) / std::max(cum[seg + 1] - cum[seg], 1e-300)) *
                   s.h;
        for (int it = 0; it < 20; ++it) {
            const double f = cum[seg] + arc_between(s, static_cast<double>(seg) * s.h, u) - target;
            const double fp = s.deriv(u).norm();
            const double step = -f / fp;
            u += step;
            u = std::clamp(u, static_cast<double>(seg) * s.h,
                           static_cast<double>(seg + 1) * s.h);
            if (std::abs(step) < 1e-15) break;
        }
        out[k] = TorusPoint::canon(s.at(u));
    }
    return MarkerCurve(std::move(out));
}

MarkerCurve resample_trig(const MarkerCurve& c, std::size_t n_out) {
    const std::size_t n = c.size();
    const Vec2 w{static_cast<double>(c.winding()[0]), static_cast<double>(c.winding()[1])};
    const auto l = c.lift();
    std::vector<double> px(n), py(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double u = static_cast<double>(j) / static_cast<double>(n);
        px[j] = l[j].x - w.x * u;
        py[j] = l[j].y - w.y * u;
    }
    const auto sx = fft::TrigSeries::from_samples(px);
    const auto sy = fft::TrigSeries::from_samples(py);
    auto vel = [&](double u) {
        return Vec2{sx.eval_deriv(u) + w.x, sy.eval_deriv(u) + w.y};
    };
    // speed as a trig series on a 4x refined grid to suppress aliasing
    const std::size_t nf = 4 * n;
    std::vector<double> sp(nf);
    for (std::size_t j = 0; j < nf; ++j) {
        sp[j] = vel(static_cast<double>(j) / static_cast<double>(nf)).norm();
    }
    const auto ss = fft::TrigSeries::from_samples(sp);
    const double total = ss.coeff[0].real();  // mean speed = total length (u-period 1)
    auto arclen = [&](double u) { return total * u + ss.eval_antideriv(u); };

    std::vector<TorusPoint> out(n_out);
    out[0] = TorusPoint::canon(Vec2{sx.eval(0.0), sy.eval(0.0)});
    for (std::size_t k = 1; k < n_out; ++k) {
        const double target = total * static_cast<double>(k) / static_cast<double>(n_out);
        double u = static_cast<double>(k) / static_cast<double>(n_out);
        for (int it = 0; it < 12; ++it) {
            const double step = (arclen(u) - target) / ss.eval(u);
            u -= step;
            if (std::abs(step) < 1e-15) break;
        }
        out[k] = TorusPoint::canon(Vec2{sx.eval(u) + w.x * u, sy.eval(u) + w.y * u});
    }
    return MarkerCurve(std::move(out));
}

}  // namespace

MarkerCurve resample_equal_arclength(const MarkerCurve& c, std::size_t n, ResampleScheme scheme) {
    if (n < 8) throw TooFewNodes("resample target below 8 nodes");
    c.validate_basic();
    return scheme == ResampleScheme::CubicSpline ? resample_cubic(c, n) : resample_trig(c, n);
}

}  // namespace flowlab
