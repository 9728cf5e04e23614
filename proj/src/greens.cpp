#include "flowlab/greens.hpp"

#include <cmath>

namespace flowlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kSingular = 1e-14;

double exp_int_e1(double x) { return -std::expint(-x); }

// theta_1(u, q) with q = exp(-pi), the nome of the unit square lattice.
// Five terms reach ~1e-12 relative accuracy on the fundamental strip.
constexpr int kThetaTerms = 5;
struct ThetaTables {
    double a[kThetaTerms];
    ThetaTables() {
        for (int n = 0; n < kThetaTerms; ++n) {
            const double e = (n + 0.5) * (n + 0.5);
            a[n] = ((n % 2) ? -2.0 : 2.0) * std::exp(-kPi * e);
        }
    }
};
const ThetaTables kTheta;

std::complex<double> theta1(const std::complex<double>& u) {
    std::complex<double> acc = 0.0;
    for (int n = 0; n < kThetaTerms; ++n) {
        acc += kTheta.a[n] * std::sin(static_cast<double>(2 * n + 1) * u);
    }
    return acc;
}

std::complex<double> theta1_deriv(const std::complex<double>& u) {
    std::complex<double> acc = 0.0;
    for (int n = 0; n < kThetaTerms; ++n) {
        acc += kTheta.a[n] * static_cast<double>(2 * n + 1) *
               std::cos(static_cast<double>(2 * n + 1) * u);
    }
    return acc;
}
}  // namespace

GreensEvaluator::GreensEvaluator(Params p) : sigma_(p.sigma) {
    if (sigma_ <= 0.0 || sigma_ >= 1.0) throw BadValue("Ewald width must be in (0,1)");
    // E1(r^2/sigma^2) below ~1e-19 once r > sigma*sqrt(42)
    const double r_cut = sigma_ * std::sqrt(42.0);
    r_cut2_ = r_cut * r_cut;
    k_real_ = (p.k_real > 0) ? p.k_real : static_cast<int>(std::ceil(r_cut + 0.75));
    for (int i = -k_real_; i <= k_real_; ++i) {
        for (int j = -k_real_; j <= k_real_; ++j) {
            const Vec2 n{static_cast<double>(i), static_cast<double>(j)};
            if ((n.norm() - 0.75) <= r_cut) images_.push_back(n);
        }
    }
    // exp(-pi^2 sigma^2 k^2)/(4 pi^2 k^2) below ~1e-18
    k_spectral_ = (p.k_spectral > 0)
                      ? p.k_spectral
                      : static_cast<int>(std::ceil(std::sqrt(41.0) / (kPi * sigma_)));
    for (int i = -k_spectral_; i <= k_spectral_; ++i) {
        for (int j = -k_spectral_; j <= k_spectral_; ++j) {
            const double k2 = static_cast<double>(i * i + j * j);
            if (k2 == 0.0 || k2 > static_cast<double>(k_spectral_ * k_spectral_)) continue;
            modes_.push_back({static_cast<double>(i), static_cast<double>(j),
                              std::exp(-kPi * kPi * sigma_ * sigma_ * k2) /
                                  (4.0 * kPi * kPi * k2)});
        }
    }
    self_energy_ = -sigma_ * sigma_ / 4.0;

    // coincidence limit of G + log r / (2 pi): the n=0 image contributes the
    // E1 expansion constant, all other pieces are smooth at r=0
    double acc = -(kEulerGamma - 2.0 * std::log(sigma_)) / (4.0 * kPi);
    for (const auto& n : images_) {
        const double n2 = n.norm2();
        if (n2 > 0.0 && n2 <= r_cut2_) acc += exp_int_e1(n2 / (sigma_ * sigma_)) / (4.0 * kPi);
    }
    for (const auto& m : modes_) acc += m.coef;
    regular_const_ = acc + self_energy_;

    // calibrate the theta-path constant against the Ewald value away from the pole
    theta_offset_ = 0.0;
    double off = 0.0;
    const Vec2 probes[3] = {{0.5, 0.5}, {0.25, 0.5}, {0.5, 0.25}};
    for (const auto& d : probes) off += value_diff(d) - value_fast_diff(d);
    theta_offset_ = off / 3.0;
}

double GreensEvaluator::ewald_real(const Vec2& d) const {
    double acc = 0.0;
    const double inv_s2 = 1.0 / (sigma_ * sigma_);
    for (const auto& n : images_) {
        const double r2 = (d + n).norm2();
        if (r2 <= r_cut2_) acc += exp_int_e1(r2 * inv_s2);
    }
    return acc / (4.0 * kPi);
}

double GreensEvaluator::ewald_spectral(const Vec2& d) const {
    double acc = 0.0;
    for (const auto& m : modes_) {
        acc += m.coef * std::cos(kTwoPi * (m.k1 * d.x + m.k2 * d.y));
    }
    return acc;
}

double GreensEvaluator::value_diff(const Vec2& d) const {
    if (d.norm2() < kSingular * kSingular) throw SingularArgument("G(x,x) is undefined");
    return ewald_real(d) + ewald_spectral(d) + self_energy_;
}

double GreensEvaluator::value(const TorusPoint& x, const TorusPoint& y) const {
    return value_diff(wrap_diff(x, y));
}

Vec2 GreensEvaluator::gradient(const TorusPoint& x, const TorusPoint& y) const {
    const Vec2 d = wrap_diff(x, y);
    if (d.norm2() < kSingular * kSingular) throw SingularArgument("grad G(x,x) is undefined");
    Vec2 acc{0, 0};
    const double inv_s2 = 1.0 / (sigma_ * sigma_);
    for (const auto& n : images_) {
        const Vec2 r = d + n;
        const double r2 = r.norm2();
        if (r2 <= r_cut2_) acc -= r * (std::exp(-r2 * inv_s2) / (kTwoPi * r2));
    }
    for (const auto& m : modes_) {
        const double s = std::sin(kTwoPi * (m.k1 * d.x + m.k2 * d.y));
        const double w = m.coef * kTwoPi * s;
        acc -= Vec2{m.k1, m.k2} * w;
    }
    return acc;
}

double GreensEvaluator::value_fast_diff(const Vec2& d) const {
    if (d.norm2() < kSingular * kSingular) throw SingularArgument("G(x,x) is undefined");
    const std::complex<double> u{kPi * d.x, kPi * d.y};
    const double m = std::abs(theta1(u));
    return -std::log(m) / kTwoPi + 0.5 * d.y * d.y + theta_offset_;
}

double GreensEvaluator::value_fast(const TorusPoint& x, const TorusPoint& y) const {
    return value_fast_diff(wrap_diff(x, y));
}

Vec2 GreensEvaluator::gradient_fast_diff(const Vec2& d) const {
    if (d.norm2() < kSingular * kSingular) throw SingularArgument("grad G(x,x) is undefined");
    const std::complex<double> u{kPi * d.x, kPi * d.y};
    const std::complex<double> psi = theta1_deriv(u) / theta1(u);
    return {-0.5 * psi.real(), 0.5 * psi.imag() + d.y};
}

Vec2 GreensEvaluator::gradient_fast(const TorusPoint& x, const TorusPoint& y) const {
    return gradient_fast_diff(wrap_diff(x, y));
}

}  // namespace flowlab
