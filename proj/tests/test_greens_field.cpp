#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "flowlab/fixtures.hpp"
#include "flowlab/greens.hpp"
#include "flowlab/grid.hpp"

using namespace flowlab;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Separable Fourier representation: the x1 series is resummed exactly in x2,
// geometric convergence for |x2| away from 0. Independent of the Ewald split.
double greens_separable(const Vec2& d) {
    const double x = wrap_half(d.x);
    const double y = std::abs(wrap_half(d.y));
    double acc = y * y / 2.0 - y / 2.0 + 1.0 / 12.0;
    for (int m = 1; m <= 80; ++m) {
        const double mm = static_cast<double>(m);
        // cosh(2 pi m (1/2 - y)) / sinh(pi m), written with decaying exponentials
        const double e1 = std::exp(-kTwoPi * mm * y);
        const double e2 = std::exp(-kTwoPi * mm * (1.0 - y));
        const double ratio = (e1 + e2) / (1.0 - std::exp(-kTwoPi * mm));
        acc += std::cos(kTwoPi * mm * x) * ratio / (kTwoPi * mm);
    }
    return acc;
}
}  // namespace

TEST_CASE("Ewald value matches the separable Fourier oracle") {
    const GreensEvaluator g;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    for (int t = 0; t < 60; ++t) {
        Vec2 d{ux(rng), 0.0};
        d.y = (t % 2 ? 1.0 : -1.0) * (0.2 + 0.29 * ux(rng));
        CHECK(std::abs(g.value_diff(d) - greens_separable(d)) < 1e-12);
    }
}

TEST_CASE("kernel symmetry on random pairs") {
    const GreensEvaluator g;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const TorusPoint x(u(rng), u(rng)), y(u(rng), u(rng));
        if (torus_dist(x, y) < 1e-6) continue;
        CHECK(std::abs(g.value(x, y) - g.value(y, x)) < 1e-12);
    }
}

TEST_CASE("five-point Laplacian of G equals -1 away from the pole") {
    const GreensEvaluator g;
    const double h = 1e-3;
    const TorusPoint y(0.3, 0.4);
    for (const auto& xv : {Vec2{0.6, 0.7}, Vec2{0.1, 0.9}, Vec2{0.55, 0.35}}) {
        const TorusPoint x(xv.x, xv.y);
        const double lap =
            (g.value(TorusPoint(xv.x + h, xv.y), y) + g.value(TorusPoint(xv.x - h, xv.y), y) +
             g.value(TorusPoint(xv.x, xv.y + h), y) + g.value(TorusPoint(xv.x, xv.y - h), y) -
             4.0 * g.value(x, y)) /
            (h * h);
        CHECK(-lap == doctest::Approx(-1.0).epsilon(1e-4));  // -Delta G = -1 off the pole
    }
}

TEST_CASE("near-field regular part stays bounded") {
    const GreensEvaluator g;
    const TorusPoint y(0.37, 0.58);
    auto reg = [&](double r) {
        return g.value(TorusPoint(y.x1 + r, y.x2), y) + std::log(r) / kTwoPi;
    };
    CHECK(std::abs(reg(1e-3) - reg(1e-4)) < 1e-5);
    // and the limit value agrees with the evaluator's coincidence constant
    CHECK(reg(1e-7) == doctest::Approx(g.coincidence_regular()).epsilon(1e-8));
}

TEST_CASE("gradient: finite differences, antisymmetry, near-field expansion") {
    const GreensEvaluator g;
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double h = 1e-6;
    int checked = 0;
    while (checked < 100) {
        const TorusPoint x(u(rng), u(rng)), y(u(rng), u(rng));
        if (torus_dist(x, y) < 1e-2) continue;
        ++checked;
        const Vec2 grad = g.gradient(x, y);
        const double fdx = (g.value(TorusPoint(x.x1 + h, x.x2), y) -
                            g.value(TorusPoint(x.x1 - h, x.x2), y)) /
                           (2 * h);
        const double fdy = (g.value(TorusPoint(x.x1, x.x2 + h), y) -
                            g.value(TorusPoint(x.x1, x.x2 - h), y)) /
                           (2 * h);
        const double scale = std::max(1.0, grad.norm());
        CHECK(std::abs(grad.x - fdx) / scale < 1e-6);
        CHECK(std::abs(grad.y - fdy) / scale < 1e-6);
        // antisymmetry of the difference kernel
        const Vec2 swapped = g.gradient(y, x);
        CHECK(std::abs(grad.x + swapped.x) < 1e-10);
        CHECK(std::abs(grad.y + swapped.y) < 1e-10);
    }
    // dominant singular part at r = 1e-4
    const TorusPoint y0(0.5, 0.5);
    const Vec2 dir = Vec2{1.0, 0.7}.normalized();
    const TorusPoint x0(0.5 + 1e-4 * dir.x, 0.5 + 1e-4 * dir.y);
    const Vec2 grad = g.gradient(x0, y0);
    const Vec2 sing = wrap_diff(x0, y0) * (-1.0 / (kTwoPi * wrap_diff(x0, y0).norm2()));
    CHECK((grad - sing).norm() / sing.norm() < 0.01);
}

TEST_CASE("resolution convergence: doubling the spectral cutoff is inert") {
    const GreensEvaluator base;
    GreensEvaluator::Params p;
    p.k_spectral = 2 * base.k_spectral();
    p.k_real = base.k_real() + 2;
    const GreensEvaluator fine(p);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    while (checked < 50) {
        const TorusPoint x(u(rng), u(rng)), y(u(rng), u(rng));
        if (torus_dist(x, y) < 1e-3) continue;
        ++checked;
        CHECK(std::abs(base.value(x, y) - fine.value(x, y)) < 1e-11);
    }
}

TEST_CASE("theta fast path equals the Ewald path") {
    const GreensEvaluator g;
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    while (checked < 200) {
        const TorusPoint x(u(rng), u(rng)), y(u(rng), u(rng));
        if (torus_dist(x, y) < 1e-5) continue;
        ++checked;
        CHECK(std::abs(g.value(x, y) - g.value_fast(x, y)) < 5e-12);
        const Vec2 ge = g.gradient(x, y), gt = g.gradient_fast(x, y);
        const double scale = std::max(1.0, ge.norm());
        CHECK((ge - gt).norm() / scale < 1e-9);
    }
}

TEST_CASE("zero mean on the grid") {
    const GreensEvaluator g;
    const TorusPoint y(0.337, 0.613);
    // singularity-subtracted grid quadrature: G - S with S a smoothly cut-off
    // log, then add back the analytic integral of S
    const double r0 = 0.05, r1 = 0.22;
    auto bump = [&](double r) {
        if (r <= r0) return 1.0;
        if (r >= r1) return 0.0;
        const double t = (r - r0) / (r1 - r0);
        return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);  // C^2 smoothstep
    };
    auto mean_sub = [&](std::size_t m) {
        double acc = 0.0;
        for (std::size_t iy = 0; iy < m; ++iy) {
            for (std::size_t ix = 0; ix < m; ++ix) {
                const TorusPoint x(static_cast<double>(ix) / m, static_cast<double>(iy) / m);
                const Vec2 d = wrap_diff(x, y);
                const double r = d.norm();
                const double s = (r < r1 && r > 0) ? -std::log(r) / kTwoPi * bump(r) : 0.0;
                if (r > 0) acc += g.value_fast(x, y) - s;
            }
        }
        return acc / static_cast<double>(m * m);
    };
    double is = 0.0;  // integral of S, radial Simpson quadrature
    {
        const int n = 20000;
        const double dr = r1 / n;
        for (int i = 0; i < n; ++i) {
            const double ra = i * dr, rb = ra + dr, rm = ra + dr / 2;
            auto f = [&](double r) {
                return (r <= 0) ? 0.0 : -std::log(r) / kTwoPi * bump(r) * kTwoPi * r;
            };
            is += dr / 6.0 * (f(ra) + 4.0 * f(rm) + f(rb));
        }
    }
    const double i512 = mean_sub(512) + is;
    const double i1024 = mean_sub(1024) + is;
    const double richardson = (4.0 * i1024 - i512) / 3.0;
    CHECK(std::abs(richardson) < 1e-8);
}

TEST_CASE("poisson: single Fourier mode, zero rhs, spectral residual") {
    const std::size_t m = 64;
    SpectralPoisson pois(m);
    GridField rhs(m);
    for (std::size_t iy = 0; iy < m; ++iy) {
        for (std::size_t ix = 0; ix < m; ++ix) {
            rhs.at(ix, iy) = std::cos(kTwoPi * static_cast<double>(ix) / m);
        }
    }
    const GridField v = pois.solve(rhs);
    for (std::size_t ix = 0; ix < m; ++ix) {
        const double want = std::cos(kTwoPi * static_cast<double>(ix) / m) / (4 * kPi * kPi);
        CHECK(std::abs(v.at(ix, 7) - want) < 1e-12);
    }
    CHECK(std::abs(v.mean()) < 1e-12);

    const GridField zero(m);
    for (double val : pois.solve(zero).a) CHECK(val == 0.0);

    const GridField lap = pois.laplacian(v);
    double maxres = 0.0, scale = 0.0;
    const double mean = rhs.mean();
    for (std::size_t i = 0; i < m * m; ++i) {
        maxres = std::max(maxres, std::abs(-lap.a[i] - (rhs.a[i] - mean)));
        scale = std::max(scale, std::abs(rhs.a[i]));
    }
    CHECK(maxres / scale < 1e-10);
}

TEST_CASE("rasterized stripe: exact fractions and boundary potential") {
    const std::size_t m = 512;
    const auto b = make_stripe(0.5, 64);
    const GridField u = rasterize_indicator(b, m);
    CHECK(std::abs(u.mean()) < 1e-14);  // vol 1/2 exactly
    CHECK(u.at(17, 128) == doctest::Approx(0.0).epsilon(1e-14));  // cut row, fraction 1/2
    CHECK(u.at(17, 200) == doctest::Approx(1.0));
    CHECK(u.at(17, 60) == doctest::Approx(-1.0));

    SpectralPoisson pois(m);
    const GridField v = pois.solve(u);
    // 1D oracle: v = 0 on the boundary lines, extremum 1/32 at the midline
    for (std::size_t ix = 0; ix < m; ix += 37) {
        CHECK(std::abs(v.at(ix, 128)) < 2e-3);
        CHECK(std::abs(v.at(ix, 384)) < 2e-3);
        CHECK(v.at(ix, 256) == doctest::Approx(1.0 / 32.0).epsilon(2e-3 * 32));
    }
}

TEST_CASE("rasterized disk volume converges at second order") {
    auto vol_err = [](std::size_t m) {
        const auto b = make_circle(TorusPoint(0.503, 0.497), 0.2, 512);
        const GridField u = rasterize_indicator(b, m);
        const double vol = 0.5 * (u.mean() + 1.0);
        return std::abs(vol - kPi * 0.04);
    };
    const double e128 = vol_err(128);
    const double e512 = vol_err(512);
    CHECK(e512 < 5e-6);
    CHECK(e512 < e128 / 4.0);
}

TEST_CASE("field file round trip") {
    GridField f(8);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : f.a) v = u(rng);
    std::stringstream ss;
    write_field_file(ss, f);
    const GridField back = read_field_file(ss);
    REQUIRE(back.m == f.m);
    for (std::size_t i = 0; i < f.a.size(); ++i) CHECK(back.a[i] == f.a[i]);
}
