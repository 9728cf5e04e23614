#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace flowlab::fft {

/// 1-D real FFT of length n. Forward fills n/2+1 complex coefficients
/// normalized so that coeff[k] = (1/n) sum_j f_j exp(-2 pi i j k / n).
class Rfft1d {
public:
    explicit Rfft1d(std::size_t n);
    ~Rfft1d();
    Rfft1d(const Rfft1d&) = delete;
    Rfft1d& operator=(const Rfft1d&) = delete;

    std::size_t n() const { return n_; }
    std::vector<std::complex<double>> forward(const std::vector<double>& f) const;
    std::vector<double> inverse(const std::vector<std::complex<double>>& c) const;

private:
    std::size_t n_;
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
    double* real_buf_ = nullptr;
    void* cplx_buf_ = nullptr;
};

/// 2-D real FFT on an M x M grid, same normalization (division by M^2 on the
/// forward transform). Row-major layout a[iy*M + ix].
class Rfft2d {
public:
    explicit Rfft2d(std::size_t m);
    ~Rfft2d();
    Rfft2d(const Rfft2d&) = delete;
    Rfft2d& operator=(const Rfft2d&) = delete;

    std::size_t m() const { return m_; }
    std::vector<std::complex<double>> forward(const std::vector<double>& f) const;
    std::vector<double> inverse(const std::vector<std::complex<double>>& c) const;

private:
    std::size_t m_;
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
    double* real_buf_ = nullptr;
    void* cplx_buf_ = nullptr;
};

/// Signed integer frequency for index k of an n-point transform.
inline int freq_of(std::size_t k, std::size_t n) {
    return (2 * k <= n) ? static_cast<int>(k) : static_cast<int>(k) - static_cast<int>(n);
}

/// Trigonometric interpolant of n uniform periodic samples on [0,1).
struct TrigSeries {
    std::size_t n = 0;
    std::vector<std::complex<double>> coeff;  // size n/2+1, normalized

    static TrigSeries from_samples(const std::vector<double>& f);
    double eval(double u) const;
    double eval_deriv(double u) const;   // d/du
    double eval_deriv2(double u) const;  // d^2/du^2
    /// Antiderivative of the zero-mean part: F(u) with F' = f - mean(f), F(0)=0.
    double eval_antideriv(double u) const;
};

}  // namespace flowlab::fft
