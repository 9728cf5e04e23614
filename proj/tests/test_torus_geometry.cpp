#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "flowlab/curve.hpp"
#include "flowlab/fixtures.hpp"

using namespace flowlab;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Independent turning-number oracle: sum of exterior angles of the polygon lift.
double turning_by_angles(const MarkerCurve& c) {
    const std::size_t n = c.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e0 = wrap_diff(c.node(i), c.node((i + n - 1) % n));
        const Vec2 e1 = wrap_diff(c.node((i + 1) % n), c.node(i));
        acc += std::atan2(e0.cross(e1), e0.dot(e1));
    }
    return acc / (2 * kPi);
}
}  // namespace

TEST_CASE("wrap_diff canonical representative") {
    CHECK(wrap_diff(TorusPoint(0.95, 0.5), TorusPoint(0.05, 0.5)).x == doctest::Approx(-0.10));
    CHECK(wrap_diff(TorusPoint(0.95, 0.5), TorusPoint(0.05, 0.5)).y == doctest::Approx(0.0));
    const TorusPoint p(0.3, 0.3), q(0.1, 0.1);
    CHECK(wrap_diff(p, q).x == doctest::Approx(0.2));
    CHECK(wrap_diff(p, q).y == doctest::Approx(0.2));
    CHECK(wrap_diff(p, p).norm() == 0.0);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const TorusPoint a(u(rng), u(rng));
        // canonicalization is idempotent
        const TorusPoint aa(a.x1, a.x2);
        CHECK(aa.x1 == a.x1);
        CHECK(aa.x2 == a.x2);
        const TorusPoint b(u(rng), u(rng));
        const Vec2 d = wrap_diff(a, b);
        CHECK(d.x >= -0.5);
        CHECK(d.x < 0.5);
        CHECK(d.y >= -0.5);
        CHECK(d.y < 0.5);
    }
}

TEST_CASE("frame of a circle: constant curvature, exact normals") {
    const auto b = make_circle(TorusPoint(0.5, 0.5), 0.2, 256);
    const auto f = build_frame(b.component(0));
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(f.kappa[i] == doctest::Approx(5.0).epsilon(1e-6 / 5.0));
        CHECK(f.tangent[i].norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f.normal[i].norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(f.tangent[i].dot(f.normal[i])) < 1e-12);
    }
    CHECK(f.length == doctest::Approx(2 * kPi * 0.2).epsilon(1e-10));
    CHECK(f.turning == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("frame of a lamella line is flat") {
    const auto b = make_stripe(0.5, 64);
    const auto f = build_frame(b);
    for (double k : f.kappa) CHECK(std::abs(k) < 1e-10);
    CHECK(f.length == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("turning number oracle on a perturbed circle") {
    const auto b = make_circle(TorusPoint(0.5, 0.5), 0.2, 512, {{3, 0.03, 0.4}});
    const auto f = build_frame(b.component(0));
    double total = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) total += f.kappa[i] * f.ds[i];
    CHECK(total == doctest::Approx(2 * kPi).epsilon(1e-8 / (2 * kPi)));
    CHECK(turning_by_angles(b.component(0)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("fd4 frame agrees with spectral frame at fourth order") {
    const auto coarse = make_circle(TorusPoint(0.5, 0.5), 0.2, 128, {{2, 0.02, 0.0}});
    const auto fine = make_circle(TorusPoint(0.5, 0.5), 0.2, 256, {{2, 0.02, 0.0}});
    auto err = [](const BoundarySet& b) {
        const auto fs = build_frame(b.component(0), DerivScheme::Spectral);
        const auto fd = build_frame(b.component(0), DerivScheme::FD4);
        double e = 0.0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            e = std::max(e, std::abs(fs.kappa[i] - fd.kappa[i]));
        }
        return e;
    };
    const double e1 = err(coarse), e2 = err(fine);
    CHECK(e2 < e1 / 12.0);  // ~16x for an O(h^4) scheme
}

TEST_CASE("enclosed volume: disk, stripe, additivity, translation invariance") {
    CHECK(enclosed_volume(make_circle(TorusPoint(0.5, 0.5), 0.2, 512)) ==
          doctest::Approx(kPi * 0.04).epsilon(1e-8));
    CHECK(enclosed_volume(make_stripe(0.5, 64)) == doctest::Approx(0.5).epsilon(1e-12));
    const auto two =
        make_two_circles(TorusPoint(0.3, 0.3), 0.2, TorusPoint(0.75, 0.75), 0.1, 512);
    CHECK(enclosed_volume(two) == doctest::Approx(kPi * (0.04 + 0.01)).epsilon(1e-8));

    const auto base = make_circle(TorusPoint(0.5, 0.5), 0.2, 256);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 20; ++t) {
        const Vec2 eta{u(rng), u(rng)};
        CHECK(std::abs(enclosed_volume(base.translated(eta)) - enclosed_volume(base)) < 1e-12);
    }
}

TEST_CASE("volume of a complement-like oriented circle (hole)") {
    // clockwise circle = boundary of T^2 minus a disk
    auto ccw = make_circle(TorusPoint(0.5, 0.5), 0.2, 128).component(0);
    std::vector<TorusPoint> rev(ccw.nodes().rbegin(), ccw.nodes().rend());
    const BoundarySet hole({MarkerCurve(rev)});
    CHECK(enclosed_volume(hole) == doctest::Approx(1.0 - kPi * 0.04).epsilon(1e-8));
}

TEST_CASE("resample: uniform circle spacing and idempotence") {
    const auto c = make_circle(TorusPoint(0.5, 0.5), 0.2, 64).component(0);
    const auto r = resample_equal_arclength(c, 256);
    const auto f = build_frame(r);
    const double target = 2 * kPi * 0.2 / 256;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double seg = wrap_diff(r.node((i + 1) % 256), r.node(i)).norm();
        CHECK(seg == doctest::Approx(target).epsilon(1e-8 / target));
    }
    CHECK(f.length == doctest::Approx(2 * kPi * 0.2).epsilon(1e-8));

    // already uniform: nodes should not move
    const auto again = resample_equal_arclength(r, 256);
    double maxmove = 0.0;
    for (std::size_t i = 0; i < 256; ++i) {
        maxmove = std::max(maxmove, wrap_diff(again.node(i), r.node(i)).norm());
    }
    CHECK(maxmove < 1e-10);
}

TEST_CASE("resample: non-uniform peanut becomes uniform in one pass") {
    // strongly non-uniform parametrization of a smooth closed curve
    std::vector<TorusPoint> nodes;
    const std::size_t n = 200;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2 * kPi * i / n;
        const double th = t + 0.45 * std::sin(t);  // uneven parameter speed
        const double rho = 0.23 + 0.05 * std::cos(2 * th);
        nodes.emplace_back(0.5 + rho * std::cos(th), 0.5 + rho * std::sin(th));
    }
    const MarkerCurve c{std::move(nodes)};
    const auto r = resample_equal_arclength(c, 256);
    const auto f = build_frame(r);
    double mn = 1e300, mx = 0.0;
    for (double seg : f.ds) {
        mn = std::min(mn, seg);
        mx = std::max(mx, seg);
    }
    CHECK(mx / mn <= 1.0 + 1e-6);
}

TEST_CASE("resample trig scheme preserves enclosed volume to near machine precision") {
    const auto b = make_circle(TorusPoint(0.5, 0.5), 0.3, 256, {{3, 0.02, 0.0}});
    const double v0 = enclosed_volume(b);
    auto cur = b.component(0);
    for (int pass = 0; pass < 50; ++pass) {
        cur = resample_equal_arclength(cur, 256, ResampleScheme::Trig);
    }
    CHECK(std::abs(enclosed_volume(BoundarySet({cur})) - v0) < 1e-11);
}

TEST_CASE("signed distance: radial geometry and projection identity") {
    const auto b = make_circle(TorusPoint(0.5, 0.5), 0.2, 256);
    const auto f = build_frame(b);
    const double tube = tube_halfwidth(b, f);

    auto r1 = signed_distance(b, f, TorusPoint(0.5, 0.75), tube);
    CHECK(r1.d == doctest::Approx(0.05).epsilon(1e-7));
    CHECK(r1.foot.x1 == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(r1.foot.x2 == doctest::Approx(0.7).epsilon(1e-7));
    CHECK(r1.unique);

    auto on = signed_distance(b, f, b.component(0).node(17), tube);
    CHECK(std::abs(on.d) < 1e-9);

    const auto st = make_stripe(0.5, 64);
    const auto sf = build_frame(st);
    auto r2 = signed_distance(st, sf, TorusPoint(0.3, 0.5), tube_halfwidth(st, sf));
    CHECK(r2.d == doctest::Approx(-0.25).epsilon(1e-9));

    // projection identity p = foot + d * nu(foot)
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const TorusPoint p(u(rng), u(rng));
        const auto res = signed_distance(b, f, p, tube);
        const Vec2 back = res.foot.as_vec() + res.normal_at_foot * res.d;
        CHECK(wrap_diff(TorusPoint::canon(back), p).norm() < 1e-8);
    }
}

TEST_CASE("normal graph: identity, concentric offset, cosine readback") {
    const auto ref = make_circle(TorusPoint(0.5, 0.5), 0.2, 256);
    const auto rf = build_frame(ref);

    const auto psi0 = normal_graph(ref, rf, ref);
    for (double t : psi0) CHECK(std::abs(t) < 1e-12);

    const auto bigger = make_circle(TorusPoint(0.5, 0.5), 0.22, 256);
    for (double t : normal_graph(ref, rf, bigger)) {
        CHECK(t == doctest::Approx(0.02).epsilon(1e-6 / 0.02));
    }

    const auto wavy = make_circle(TorusPoint(0.5, 0.5), 0.2, 512, {{3, 0.01, 0.0}});
    const auto psi = normal_graph(ref, rf, wavy);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double th = 2 * kPi * static_cast<double>(i) / 256.0;
        CHECK(std::abs(psi[i] - 0.01 * std::cos(3 * th)) < 1e-4);
    }
}

TEST_CASE("normal graph round trip through offset_along_normals") {
    const auto ref = make_circle(TorusPoint(0.5, 0.5), 0.25, 256);
    const auto rf = build_frame(ref);
    std::vector<double> psi(rf.points.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double th = 2 * kPi * static_cast<double>(i) / 256.0;
        psi[i] = 0.015 * std::cos(2 * th) - 0.008 * std::sin(5 * th);
    }
    const auto target = offset_along_normals(ref, rf, psi);
    const auto back = normal_graph(ref, rf, target);
    const double h = rf.length / 256.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        CHECK(std::abs(back[i] - psi[i]) < 20.0 * h * h);
    }
    // graph detection failure: target far outside the tube
    CHECK_THROWS_AS(normal_graph(ref, rf, make_circle(TorusPoint(0.5, 0.5), 0.04, 64)),
                    NotAGraph);
}

TEST_CASE("self intersection detector") {
    CHECK_FALSE(make_circle(TorusPoint(0.5, 0.5), 0.2, 64).any_self_intersection());
    // figure-eight-like curve crosses itself
    std::vector<TorusPoint> nodes;
    const std::size_t n = 64;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2 * kPi * (i + 0.37) / n;
        nodes.emplace_back(0.5 + 0.2 * std::sin(2 * t), 0.5 + 0.1 * std::sin(t));
    }
    CHECK(MarkerCurve(nodes).self_intersects());
}

TEST_CASE("curve snapshot file round trip") {
    const auto b = make_two_circles(TorusPoint(0.3, 0.3), 0.2, TorusPoint(0.75, 0.75), 0.1, 64);
    std::stringstream ss;
    write_curve_file(ss, b);
    const auto back = read_curve_file(ss);
    REQUIRE(back.num_components() == 2);
    CHECK(enclosed_volume(back) == doctest::Approx(enclosed_volume(b)).epsilon(1e-15));
    for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t i = 0; i < b.component(c).size(); ++i) {
            CHECK(back.component(c).node(i).x1 == b.component(c).node(i).x1);
            CHECK(back.component(c).node(i).x2 == b.component(c).node(i).x2);
        }
    }
    // lamella with winding survives the round trip
    std::stringstream s2;
    write_curve_file(s2, make_stripe(0.5, 64));
    const auto lam = read_curve_file(s2);
    CHECK(lam.component(0).winding()[0] == 1);
    CHECK(enclosed_volume(lam) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("validation errors") {
    std::vector<TorusPoint> few = {TorusPoint(0, 0), TorusPoint(0.1, 0), TorusPoint(0.1, 0.1)};
    CHECK_THROWS_AS(MarkerCurve(few).validate_basic(), TooFewNodes);
    CHECK_THROWS_AS(resample_equal_arclength(
                        make_circle(TorusPoint(0.5, 0.5), 0.2, 64).component(0), 4),
                    TooFewNodes);
    std::vector<TorusPoint> dup(16, TorusPoint(0.5, 0.5));
    CHECK_THROWS_AS(MarkerCurve(dup).validate_basic(), DegenerateCurve);
}

TEST_CASE("kappa converges under refinement") {
    // compare node-wise curvature against the analytic value of the fixture
    auto max_err = [](std::size_t n) {
        const double r = 0.2, a = 0.02;
        const auto b = make_circle(TorusPoint(0.5, 0.5), r, n, {{2, a, 0.0}});
        const auto f = build_frame(b.component(0), DerivScheme::FD4);
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double th = 2 * kPi * static_cast<double>(i) / static_cast<double>(n);
            const double rho = r + a * std::cos(2 * th);
            const double rp = -2 * a * std::sin(2 * th);
            const double rpp = -4 * a * std::cos(2 * th);
            const double kap = (rho * rho + 2 * rp * rp - rho * rpp) /
                               std::pow(rho * rho + rp * rp, 1.5);
            e = std::max(e, std::abs(f.kappa[i] - kap));
        }
        return e;
    };
    CHECK(max_err(256) < max_err(128) / 12.0);
}
