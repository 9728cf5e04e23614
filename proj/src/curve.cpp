#include "flowlab/curve.hpp"

#include <algorithm>
#include <cmath>

#include "fft_util.hpp"

namespace flowlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kDegenerateSegment = 1e-10;

bool segments_cross(const Vec2& a1, const Vec2& a2, const Vec2& b1, const Vec2& b2) {
    const Vec2 r = a2 - a1, s = b2 - b1;
    const double denom = r.cross(s);
    const Vec2 d = b1 - a1;
    if (std::abs(denom) < 1e-16) return false;  // parallel; overlap treated as no crossing
    const double t = d.cross(s) / denom;
    const double u = d.cross(r) / denom;
    const double eps = 1e-12;
    return t > eps && t < 1.0 - eps && u > eps && u < 1.0 - eps;
}
}  // namespace

MarkerCurve::MarkerCurve(std::vector<TorusPoint> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() >= 2) {
        Vec2 acc{0, 0};
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            acc += wrap_diff(nodes_[(i + 1) % nodes_.size()], nodes_[i]);
        }
        winding_ = {static_cast<int>(std::lround(acc.x)), static_cast<int>(std::lround(acc.y))};
    }
}

std::vector<Vec2> MarkerCurve::lift() const {
    std::vector<Vec2> l(nodes_.size());
    if (nodes_.empty()) return l;
    l[0] = nodes_[0].as_vec();
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        l[i] = l[i - 1] + wrap_diff(nodes_[i], nodes_[i - 1]);
    }
    return l;
}

void MarkerCurve::validate_basic() const {
    if (nodes_.size() < 8) throw TooFewNodes("marker curve needs at least 8 nodes");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const double len = wrap_diff(nodes_[(i + 1) % nodes_.size()], nodes_[i]).norm();
        if (len < kDegenerateSegment) throw DegenerateCurve("segment shorter than 1e-10");
    }
}

bool MarkerCurve::self_intersects() const {
    const std::size_t n = nodes_.size();
    if (n < 4) return false;
    std::vector<Vec2> seg_vec(n);
    for (std::size_t i = 0; i < n; ++i) {
        seg_vec[i] = wrap_diff(nodes_[(i + 1) % n], nodes_[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a1 = nodes_[i].as_vec();
        const Vec2 a2 = a1 + seg_vec[i];
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // adjacent around the seam
            // shift segment j so its start is the wrapped representative near a1
            const Vec2 b1 = a1 + wrap_diff(nodes_[j].as_vec(), a1);
            const Vec2 b2 = b1 + seg_vec[j];
            if (segments_cross(a1, a2, b1, b2)) return true;
        }
    }
    return false;
}

MarkerCurve MarkerCurve::translated(const Vec2& eta) const {
    std::vector<TorusPoint> out(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) out[i] = nodes_[i].translated(eta);
    return MarkerCurve(std::move(out));
}

BoundarySet::BoundarySet(std::vector<MarkerCurve> components)
    : components_(std::move(components)) {
    if (components_.empty()) throw InvalidRegion("boundary set has no components");
    for (const auto& c : components_) c.validate_basic();
}

std::size_t BoundarySet::total_nodes() const {
    std::size_t n = 0;
    for (const auto& c : components_) n += c.size();
    return n;
}

BoundarySet BoundarySet::translated(const Vec2& eta) const {
    std::vector<MarkerCurve> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c.translated(eta));
    return BoundarySet(std::move(out));
}

bool BoundarySet::any_self_intersection() const {
    for (const auto& c : components_) {
        if (c.self_intersects()) return true;
    }
    return components_intersect();
}

bool BoundarySet::components_intersect() const {
    for (std::size_t a = 0; a < components_.size(); ++a) {
        for (std::size_t b = a + 1; b < components_.size(); ++b) {
            const auto& ca = components_[a];
            const auto& cb = components_[b];
            for (std::size_t i = 0; i < ca.size(); ++i) {
                const Vec2 a1 = ca.node(i).as_vec();
                const Vec2 a2 = a1 + wrap_diff(ca.node((i + 1) % ca.size()), ca.node(i));
                for (std::size_t j = 0; j < cb.size(); ++j) {
                    const Vec2 b1 = a1 + wrap_diff(cb.node(j).as_vec(), a1);
                    const Vec2 b2 =
                        b1 + wrap_diff(cb.node((j + 1) % cb.size()), cb.node(j));
                    if (segments_cross(a1, a2, b1, b2)) return true;
                }
            }
        }
    }
    return false;
}

namespace {

// Periodic part of the lift: p(u) = lift(u) - winding * u, sampled at u_j = j/N.
void split_lift(const MarkerCurve& c, std::vector<double>& px, std::vector<double>& py) {
    const auto l = c.lift();
    const std::size_t n = l.size();
    const Vec2 w{static_cast<double>(c.winding()[0]), static_cast<double>(c.winding()[1])};
    px.resize(n);
    py.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double u = static_cast<double>(j) / static_cast<double>(n);
        px[j] = l[j].x - w.x * u;
        py[j] = l[j].y - w.y * u;
    }
}

CurveFrame frame_from_derivatives(const std::vector<Vec2>& d1, const std::vector<Vec2>& d2) {
    const std::size_t n = d1.size();
    CurveFrame f;
    f.ds.resize(n);
    f.tangent.resize(n);
    f.normal.resize(n);
    f.kappa.resize(n);
    const double du = 1.0 / static_cast<double>(n);
    double len = 0.0, turn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double speed = d1[i].norm();
        if (speed < kDegenerateSegment) throw DegenerateCurve("vanishing parametrization speed");
        f.ds[i] = speed * du;
        f.tangent[i] = d1[i] / speed;
        f.normal[i] = f.tangent[i].rot_cw();
        f.kappa[i] = d1[i].cross(d2[i]) / (speed * speed * speed);
        len += f.ds[i];
        turn += f.kappa[i] * f.ds[i];
    }
    f.length = len;
    f.turning = turn / kTwoPi;
    return f;
}

}  // namespace

CurveFrame build_frame(const MarkerCurve& c, DerivScheme scheme) {
    c.validate_basic();
    const std::size_t n = c.size();
    std::vector<double> px, py;
    split_lift(c, px, py);
    const Vec2 w{static_cast<double>(c.winding()[0]), static_cast<double>(c.winding()[1])};

    std::vector<Vec2> d1(n), d2(n);
    if (scheme == DerivScheme::Spectral) {
        fft::Rfft1d fft(n);
        auto cx = fft.forward(px);
        auto cy = fft.forward(py);
        auto dx1 = cx, dy1 = cy, dx2 = cx, dy2 = cy;
        for (std::size_t k = 0; k < cx.size(); ++k) {
            const double kk = kTwoPi * static_cast<double>(k);
            const bool nyquist = (2 * k == n);
            const std::complex<double> ik{0.0, nyquist ? 0.0 : kk};
            dx1[k] = cx[k] * ik;
            dy1[k] = cy[k] * ik;
            dx2[k] = cx[k] * (-kk * kk);
            dy2[k] = cy[k] * (-kk * kk);
        }
        auto vx1 = fft.inverse(dx1);
        auto vy1 = fft.inverse(dy1);
        auto vx2 = fft.inverse(dx2);
        auto vy2 = fft.inverse(dy2);
        for (std::size_t i = 0; i < n; ++i) {
            d1[i] = Vec2{vx1[i] + w.x, vy1[i] + w.y};
            d2[i] = Vec2{vx2[i], vy2[i]};
        }
    } else {
        const double du = 1.0 / static_cast<double>(n);
        auto at = [&](const std::vector<double>& p, double wcomp, std::ptrdiff_t i) {
            std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
            std::ptrdiff_t j = ((i % nn) + nn) % nn;
            const double wraps = static_cast<double>((i - j)) / static_cast<double>(nn);
            return p[static_cast<std::size_t>(j)] + wcomp * wraps;
        };
        for (std::size_t s = 0; s < n; ++s) {
            const auto i = static_cast<std::ptrdiff_t>(s);
            const double fx[5] = {at(px, w.x, i - 2), at(px, w.x, i - 1), px[s],
                                  at(px, w.x, i + 1), at(px, w.x, i + 2)};
            const double fy[5] = {at(py, w.y, i - 2), at(py, w.y, i - 1), py[s],
                                  at(py, w.y, i + 1), at(py, w.y, i + 2)};
            d1[s] = Vec2{(fx[0] - 8 * fx[1] + 8 * fx[3] - fx[4]) / (12 * du) + w.x,
                         (fy[0] - 8 * fy[1] + 8 * fy[3] - fy[4]) / (12 * du) + w.y};
            d2[s] = Vec2{(-fx[0] + 16 * fx[1] - 30 * fx[2] + 16 * fx[3] - fx[4]) / (12 * du * du),
                         (-fy[0] + 16 * fy[1] - 30 * fy[2] + 16 * fy[3] - fy[4]) / (12 * du * du)};
        }
    }
    return frame_from_derivatives(d1, d2);
}

BoundaryFrame build_frame(const BoundarySet& b, DerivScheme scheme) {
    BoundaryFrame out;
    out.per_component.reserve(b.num_components());
    std::size_t total = 0;
    for (const auto& c : b.components()) total += c.size();
    out.ds.reserve(total);
    out.kappa.reserve(total);
    out.normal.reserve(total);
    out.tangent.reserve(total);
    out.points.reserve(total);
    out.component_of.reserve(total);
    for (std::size_t k = 0; k < b.num_components(); ++k) {
        const auto& c = b.component(k);
        out.offset.push_back(out.ds.size());
        CurveFrame f = build_frame(c, scheme);
        out.length += f.length;
        for (std::size_t i = 0; i < f.size(); ++i) {
            out.ds.push_back(f.ds[i]);
            out.kappa.push_back(f.kappa[i]);
            out.normal.push_back(f.normal[i]);
            out.tangent.push_back(f.tangent[i]);
            out.points.push_back(c.node(i));
            out.component_of.push_back(k);
        }
        out.per_component.push_back(std::move(f));
    }
    return out;
}

double enclosed_volume(const BoundarySet& b) {
    // A = -closed integral of y dx on a consistent lift of each component,
    // evaluated on the trigonometric interpolant so smooth curves get their
    // exact area. Integer lift ambiguities shift the total by whole periods,
    // removed by the final mod-1 (the parity bookkeeping for components that
    // wind around the torus).
    double area = 0.0;
    for (const auto& c : b.components()) {
        const std::size_t n = c.size();
        std::vector<double> px, py;
        split_lift(c, px, py);
        const Vec2 w{static_cast<double>(c.winding()[0]), static_cast<double>(c.winding()[1])};
        fft::Rfft1d fft(n);
        const auto cx = fft.forward(px);
        const auto cy = fft.forward(py);
        // closed form of -int (wy u + py)(wx + px') du
        double ipp = 0.0;  // int py px' du by Parseval
        for (std::size_t k = 1; k < cx.size(); ++k) {
            if (2 * k == n) continue;
            const double kk = kTwoPi * static_cast<double>(k);
            ipp += 2.0 * kk * (cy[k].imag() * cx[k].real() - cy[k].real() * cx[k].imag());
        }
        area -= w.x * w.y / 2.0 + w.y * (px[0] - cx[0].real()) + w.x * cy[0].real() + ipp;
    }
    double v = area - std::floor(area);
    if (v >= 1.0) v -= 1.0;
    if (v <= 0.0 || v >= 1.0 || !std::isfinite(v)) {
        throw InvalidRegion("enclosed volume not in (0,1)");
    }
    return v;
}

}  // namespace flowlab
