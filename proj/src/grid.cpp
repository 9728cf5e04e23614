#include "flowlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fft_util.hpp"

namespace flowlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double catmull_rom(double fm1, double f0, double f1, double f2, double t) {
    const double a = -0.5 * fm1 + 1.5 * f0 - 1.5 * f1 + 0.5 * f2;
    const double b = fm1 - 2.5 * f0 + 2.0 * f1 - 0.5 * f2;
    const double c = 0.5 * (f1 - fm1);
    return ((a * t + b) * t + c) * t + f0;
}
}  // namespace

double GridField::mean() const {
    double acc = 0.0;
    for (double v : a) acc += v;
    return acc / static_cast<double>(a.size());
}

double GridField::sample(const TorusPoint& p) const {
    const double gx = p.x1 * static_cast<double>(m);
    const double gy = p.x2 * static_cast<double>(m);
    const auto ix = static_cast<long>(std::floor(gx));
    const auto iy = static_cast<long>(std::floor(gy));
    const double tx = gx - static_cast<double>(ix);
    const double ty = gy - static_cast<double>(iy);
    auto wrap = [this](long i) {
        long r = i % static_cast<long>(m);
        if (r < 0) r += static_cast<long>(m);
        return static_cast<std::size_t>(r);
    };
    double col[4];
    for (int j = -1; j <= 2; ++j) {
        const std::size_t yy = wrap(iy + j);
        const double f[4] = {at(wrap(ix - 1), yy), at(wrap(ix), yy), at(wrap(ix + 1), yy),
                             at(wrap(ix + 2), yy)};
        col[j + 1] = catmull_rom(f[0], f[1], f[2], f[3], tx);
    }
    return catmull_rom(col[0], col[1], col[2], col[3], ty);
}

struct SpectralPoisson::Impl {
    fft::Rfft2d fft;
    explicit Impl(std::size_t m) : fft(m) {}
};

SpectralPoisson::SpectralPoisson(std::size_t m) : impl_(std::make_unique<Impl>(m)) {}
SpectralPoisson::~SpectralPoisson() = default;
std::size_t SpectralPoisson::m() const { return impl_->fft.m(); }

GridField SpectralPoisson::solve(const GridField& rhs) const {
    const std::size_t m = impl_->fft.m();
    if (rhs.m != m) throw BadValue("grid size mismatch in Poisson solve");
    auto c = impl_->fft.forward(rhs.a);
    const std::size_t nx = m / 2 + 1;
    for (std::size_t iy = 0; iy < m; ++iy) {
        const double fy = fft::freq_of(iy, m);
        for (std::size_t kx = 0; kx < nx; ++kx) {
            const double fx = fft::freq_of(kx, m);
            const double k2 = fx * fx + fy * fy;
            auto& v = c[iy * nx + kx];
            v = (k2 == 0.0) ? 0.0 : v / (kTwoPi * kTwoPi * k2);
        }
    }
    GridField out(m);
    out.a = impl_->fft.inverse(c);
    return out;
}

double SpectralPoisson::gradient_energy(const GridField& rhs) const {
    const std::size_t m = impl_->fft.m();
    if (rhs.m != m) throw BadValue("grid size mismatch in gradient_energy");
    const auto c = impl_->fft.forward(rhs.a);
    const std::size_t nx = m / 2 + 1;
    double acc = 0.0;
    for (std::size_t iy = 0; iy < m; ++iy) {
        const double fy = fft::freq_of(iy, m);
        for (std::size_t kx = 0; kx < nx; ++kx) {
            const double fx = fft::freq_of(kx, m);
            const double k2 = fx * fx + fy * fy;
            if (k2 == 0.0) continue;
            const double w = (kx == 0 || 2 * kx == m) ? 1.0 : 2.0;
            acc += w * std::norm(c[iy * nx + kx]) / (kTwoPi * kTwoPi * k2);
        }
    }
    return acc;
}

GridField SpectralPoisson::laplacian(const GridField& f) const {
    const std::size_t m = impl_->fft.m();
    auto c = impl_->fft.forward(f.a);
    const std::size_t nx = m / 2 + 1;
    for (std::size_t iy = 0; iy < m; ++iy) {
        const double fy = fft::freq_of(iy, m);
        for (std::size_t kx = 0; kx < nx; ++kx) {
            const double fx = fft::freq_of(kx, m);
            c[iy * nx + kx] *= -kTwoPi * kTwoPi * (fx * fx + fy * fy);
        }
    }
    GridField out(m);
    out.a = impl_->fft.inverse(c);
    return out;
}

namespace {

// Fraction of the square [-h/2,h/2]^2 lying in the half-plane
// { p : dot(p, n) <= -d }, i.e. on the inside when d is the signed distance
// of the cell center (positive outside E).
double halfplane_cell_fraction(double d, const Vec2& n, double h) {
    Vec2 poly[8] = {{-h / 2, -h / 2}, {h / 2, -h / 2}, {h / 2, h / 2}, {-h / 2, h / 2}};
    int np = 4;
    Vec2 out[8];
    int no = 0;
    auto side = [&](const Vec2& p) { return -(p.dot(n) + d); };  // >= 0 means inside E
    for (int i = 0; i < np; ++i) {
        const Vec2 a = poly[i], b = poly[(i + 1) % np];
        const double sa = side(a), sb = side(b);
        if (sa >= 0) out[no++] = a;
        if ((sa >= 0) != (sb >= 0)) {
            const double t = sa / (sa - sb);
            out[no++] = a + (b - a) * t;
        }
    }
    if (no < 3) return 0.0;
    double area = 0.0;
    for (int i = 0; i < no; ++i) area += out[i].cross(out[(i + 1) % no]);
    return 0.5 * area / (h * h);
}

struct CutCell {
    double dist = 1e300;  // unsigned distance to the nearest segment
    double d = 0.0;       // signed distance (positive outside E)
    Vec2 n;               // outward normal of the nearest segment
};

}  // namespace

GridField rasterize_indicator(const BoundarySet& b, std::size_t m) {
    const double h = 1.0 / static_cast<double>(m);
    GridField u(m);
    std::vector<signed char> known(m * m, 0);

    // Pass 1: stamp cells near each boundary segment with the local linear
    // interface (signed distance + outward normal of the closest segment).
    std::vector<CutCell> cut(m * m);
    const double stamp_r = 1.6 * h;
    for (const auto& comp : b.components()) {
        const std::size_t n = comp.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a = comp.node(i).as_vec();
            const Vec2 e = wrap_diff(comp.node((i + 1) % n), comp.node(i));
            const Vec2 nu = e.normalized().rot_cw();
            const double lox = std::min(a.x, a.x + e.x) - stamp_r;
            const double hix = std::max(a.x, a.x + e.x) + stamp_r;
            const double loy = std::min(a.y, a.y + e.y) - stamp_r;
            const double hiy = std::max(a.y, a.y + e.y) + stamp_r;
            const auto ix0 = static_cast<long>(std::ceil(lox / h));
            const auto ix1 = static_cast<long>(std::floor(hix / h));
            const auto iy0 = static_cast<long>(std::ceil(loy / h));
            const auto iy1 = static_cast<long>(std::floor(hiy / h));
            for (long iy = iy0; iy <= iy1; ++iy) {
                const std::size_t wy =
                    static_cast<std::size_t>(((iy % static_cast<long>(m)) + m) % m);
                for (long ix = ix0; ix <= ix1; ++ix) {
                    const std::size_t wx =
                        static_cast<std::size_t>(((ix % static_cast<long>(m)) + m) % m);
                    const Vec2 c{static_cast<double>(ix) * h, static_cast<double>(iy) * h};
                    const Vec2 r = c - a;
                    const double t = std::clamp(r.dot(e) / e.norm2(), 0.0, 1.0);
                    const Vec2 foot = a + e * t;
                    const double dist = (c - foot).norm();
                    auto& cc = cut[wy * m + wx];
                    if (dist < cc.dist) {
                        cc.dist = dist;
                        cc.d = (c - foot).dot(nu);
                        cc.n = nu;
                    }
                }
            }
        }
    }
    const double cut_band = 0.7072 * h;  // half-diagonal: farther cells are uncut
    for (std::size_t idx = 0; idx < m * m; ++idx) {
        if (cut[idx].dist > 1e299) continue;
        const auto& cc = cut[idx];
        double frac;
        if (std::abs(cc.d) >= cut_band) {
            frac = cc.d < 0 ? 1.0 : 0.0;
        } else {
            frac = halfplane_cell_fraction(cc.d, cc.n, h);
        }
        u.a[idx] = 2.0 * frac - 1.0;
        known[idx] = 1;
    }

    // Pass 2: parity fill along rows. Crossings of the row line flip the
    // state between adjacent cell centers; each row is anchored by one
    // closest-segment query at an unstamped cell.
    std::vector<double> xs;
    for (std::size_t iy = 0; iy < m; ++iy) {
        bool need = false;
        for (std::size_t ix = 0; ix < m && !need; ++ix) need = !known[iy * m + ix];
        if (!need) continue;
        const double y = static_cast<double>(iy) * h;
        xs.clear();
        for (const auto& comp : b.components()) {
            const std::size_t n = comp.size();
            for (std::size_t i = 0; i < n; ++i) {
                const Vec2 a = comp.node(i).as_vec();
                const Vec2 e = wrap_diff(comp.node((i + 1) % n), comp.node(i));
                if (e.y == 0.0) continue;
                const double dy = wrap_half(y - a.y);
                const double s = dy / e.y;
                if (s >= 0.0 && s < 1.0) xs.push_back(wrap01(a.x + s * e.x));
            }
        }
        std::sort(xs.begin(), xs.end());

        // anchor: first unstamped cell, inside/outside by nearest segment
        std::size_t ax = 0;
        while (ax < m && known[iy * m + ax]) ++ax;
        const Vec2 ap{static_cast<double>(ax) * h, y};
        double best_d = 1e300;
        double sgn = 1.0;
        for (const auto& comp : b.components()) {
            const std::size_t n = comp.size();
            for (std::size_t i = 0; i < n; ++i) {
                const Vec2 a = ap + wrap_diff(comp.node(i).as_vec(), ap);
                const Vec2 e = wrap_diff(comp.node((i + 1) % n), comp.node(i));
                const Vec2 r = ap - a;
                const double t = std::clamp(r.dot(e) / e.norm2(), 0.0, 1.0);
                const Vec2 foot = a + e * t;
                const double dist = (ap - foot).norm();
                if (dist < best_d) {
                    best_d = dist;
                    sgn = (ap - foot).dot(e.normalized().rot_cw());
                }
            }
        }
        bool inside = sgn < 0.0;

        // crossings between centers ix and ix+1 live in (ix*h, (ix+1)*h]
        auto count_in = [&](double lo, double hi) {
            const auto i0 = std::lower_bound(xs.begin(), xs.end(), lo) - xs.begin();
            const auto i1 = std::upper_bound(xs.begin(), xs.end(), hi) - xs.begin();
            return static_cast<int>(i1 - i0);
        };
        bool state = inside;
        for (std::size_t k = 0; k <= m; ++k) {
            const std::size_t ix = (ax + k) % m;
            if (!known[iy * m + ix]) {
                u.a[iy * m + ix] = state ? 1.0 : -1.0;
                known[iy * m + ix] = 1;
            }
            // flip between this center and the next
            const double lo = static_cast<double>(ax + k) * h;
            double hi = lo + h;
            int c = 0;
            if (hi <= 1.0 + 1e-15) {
                c = count_in(std::nextafter(lo, 2.0), hi);
            } else {
                c = count_in(std::nextafter(lo, 2.0), 1.0) + count_in(0.0, hi - 1.0);
            }
            if (c % 2) state = !state;
        }
    }
    return u;
}

void write_field_file(std::ostream& os, const GridField& f) {
    os << "torus-field v1 M=" << f.m << "\n";
    char buf[32];
    for (double v : f.a) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        os << buf << "\n";
    }
}

void write_field_file(const std::string& path, const GridField& f) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open for writing: " + path);
    write_field_file(os, f);
}

GridField read_field_file(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw BadValue("empty field file");
    std::istringstream h(line);
    std::string magic, version, kv;
    h >> magic >> version >> kv;
    if (magic != "torus-field" || version != "v1" || kv.rfind("M=", 0) != 0) {
        throw BadValue("bad field file header: " + line);
    }
    GridField f(std::stoul(kv.substr(2)));
    for (auto& v : f.a) {
        if (!(is >> v)) throw BadValue("truncated field file");
    }
    return f;
}

}  // namespace flowlab
