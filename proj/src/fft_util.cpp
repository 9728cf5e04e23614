#include "fft_util.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace flowlab::fft {

namespace {
// FFTW's planner is not thread-safe; execution through the plan's own buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

Rfft1d::Rfft1d(std::size_t n) : n_(n) {
    if (n < 2) throw std::invalid_argument("Rfft1d: n < 2");
    real_buf_ = fftw_alloc_real(n_);
    cplx_buf_ = fftw_alloc_complex(n_ / 2 + 1);
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n_), real_buf_,
                                     static_cast<fftw_complex*>(cplx_buf_), FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_c2r_1d(static_cast<int>(n_),
                                     static_cast<fftw_complex*>(cplx_buf_), real_buf_,
                                     FFTW_ESTIMATE);
}

Rfft1d::~Rfft1d() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(real_buf_);
    fftw_free(cplx_buf_);
}

std::vector<std::complex<double>> Rfft1d::forward(const std::vector<double>& f) const {
    if (f.size() != n_) throw std::invalid_argument("Rfft1d::forward size mismatch");
    for (std::size_t i = 0; i < n_; ++i) real_buf_[i] = f[i];
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    auto* c = static_cast<fftw_complex*>(cplx_buf_);
    std::vector<std::complex<double>> out(n_ / 2 + 1);
    const double inv = 1.0 / static_cast<double>(n_);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = {c[k][0] * inv, c[k][1] * inv};
    return out;
}

std::vector<double> Rfft1d::inverse(const std::vector<std::complex<double>>& c) const {
    if (c.size() != n_ / 2 + 1) throw std::invalid_argument("Rfft1d::inverse size mismatch");
    auto* cb = static_cast<fftw_complex*>(cplx_buf_);
    for (std::size_t k = 0; k < c.size(); ++k) {
        cb[k][0] = c[k].real();
        cb[k][1] = c[k].imag();
    }
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
    return std::vector<double>(real_buf_, real_buf_ + n_);
}

Rfft2d::Rfft2d(std::size_t m) : m_(m) {
    if (m < 2) throw std::invalid_argument("Rfft2d: m < 2");
    real_buf_ = fftw_alloc_real(m_ * m_);
    cplx_buf_ = fftw_alloc_complex(m_ * (m_ / 2 + 1));
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_fwd_ = fftw_plan_dft_r2c_2d(static_cast<int>(m_), static_cast<int>(m_), real_buf_,
                                     static_cast<fftw_complex*>(cplx_buf_), FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_c2r_2d(static_cast<int>(m_), static_cast<int>(m_),
                                     static_cast<fftw_complex*>(cplx_buf_), real_buf_,
                                     FFTW_ESTIMATE);
}

Rfft2d::~Rfft2d() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(real_buf_);
    fftw_free(cplx_buf_);
}

std::vector<std::complex<double>> Rfft2d::forward(const std::vector<double>& f) const {
    if (f.size() != m_ * m_) throw std::invalid_argument("Rfft2d::forward size mismatch");
    for (std::size_t i = 0; i < f.size(); ++i) real_buf_[i] = f[i];
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    auto* c = static_cast<fftw_complex*>(cplx_buf_);
    const std::size_t nc = m_ * (m_ / 2 + 1);
    std::vector<std::complex<double>> out(nc);
    const double inv = 1.0 / static_cast<double>(m_ * m_);
    for (std::size_t k = 0; k < nc; ++k) out[k] = {c[k][0] * inv, c[k][1] * inv};
    return out;
}

std::vector<double> Rfft2d::inverse(const std::vector<std::complex<double>>& c) const {
    const std::size_t nc = m_ * (m_ / 2 + 1);
    if (c.size() != nc) throw std::invalid_argument("Rfft2d::inverse size mismatch");
    auto* cb = static_cast<fftw_complex*>(cplx_buf_);
    for (std::size_t k = 0; k < nc; ++k) {
        cb[k][0] = c[k].real();
        cb[k][1] = c[k].imag();
    }
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
    return std::vector<double>(real_buf_, real_buf_ + m_ * m_);
}

TrigSeries TrigSeries::from_samples(const std::vector<double>& f) {
    Rfft1d fft(f.size());
    TrigSeries s;
    s.n = f.size();
    s.coeff = fft.forward(f);
    return s;
}

double TrigSeries::eval(double u) const {
    double acc = coeff[0].real();
    const std::size_t kmax = coeff.size() - 1;
    for (std::size_t k = 1; k <= kmax; ++k) {
        const double ang = kTwoPi * static_cast<double>(k) * u;
        const double w = (2 * k == n) ? 1.0 : 2.0;  // Nyquist bin is not doubled
        acc += w * (coeff[k].real() * std::cos(ang) - coeff[k].imag() * std::sin(ang));
    }
    return acc;
}

double TrigSeries::eval_deriv(double u) const {
    double acc = 0.0;
    const std::size_t kmax = coeff.size() - 1;
    for (std::size_t k = 1; k <= kmax; ++k) {
        if (2 * k == n) continue;  // drop the Nyquist mode in odd derivatives
        const double ang = kTwoPi * static_cast<double>(k) * u;
        const double w = kTwoPi * static_cast<double>(k);
        acc += -2.0 * w * (coeff[k].real() * std::sin(ang) + coeff[k].imag() * std::cos(ang));
    }
    return acc;
}

double TrigSeries::eval_deriv2(double u) const {
    double acc = 0.0;
    const std::size_t kmax = coeff.size() - 1;
    for (std::size_t k = 1; k <= kmax; ++k) {
        const double ang = kTwoPi * static_cast<double>(k) * u;
        const double w2 = kTwoPi * kTwoPi * static_cast<double>(k) * static_cast<double>(k);
        const double wr = (2 * k == n) ? 1.0 : 2.0;
        acc += -wr * w2 * (coeff[k].real() * std::cos(ang) - coeff[k].imag() * std::sin(ang));
    }
    return acc;
}

double TrigSeries::eval_antideriv(double u) const {
    double acc = 0.0;
    const std::size_t kmax = coeff.size() - 1;
    for (std::size_t k = 1; k <= kmax; ++k) {
        if (2 * k == n) continue;
        const double w = kTwoPi * static_cast<double>(k);
        const double ang = w * u;
        // integral of 2(Re cos - Im sin) is 2(Re sin + Im cos)/w; anchored at u=0
        acc += 2.0 / w *
               (coeff[k].real() * std::sin(ang) + coeff[k].imag() * (std::cos(ang) - 1.0));
    }
    return acc;
}

}  // namespace flowlab::fft
