#pragma once

#include <complex>
#include <vector>

#include "crz/errors.hpp"

namespace crz::spectral {

using Complex = std::complex<double>;

/// True iff n is a power of two (n >= 1).
bool is_pow2(std::size_t n);

/// In-place radix-2 FFT, X_k = sum_j x_j exp(-2 pi i j k / n). n must be a
/// power of two.
void fft(std::vector<Complex>& x);

/// Inverse of fft (includes the 1/n factor).
void ifft(std::vector<Complex>& x);

/// Discrete periodic conjugation operator on a uniform grid: the Fourier
/// multiplier -i*sgn(k) with the mean and the Nyquist mode annihilated.
/// Maps cos(k s) to sin(k s); for a real u it returns the boundary values of
/// the harmonic conjugate (normalized to vanish at the origin).
std::vector<double> conjugate_periodic(const std::vector<double>& u);

/// Samples of the derivative of the trigonometric interpolant (Fourier
/// multiplier ik, Nyquist annihilated).
std::vector<double> derivative_periodic(const std::vector<double>& u);
std::vector<Complex> derivative_periodic(const std::vector<Complex>& u);

/// Trigonometric interpolant of samples on the uniform grid s_j = 2 pi j / n,
/// evaluable anywhere. Construction refines the samples onto an 8x finer grid
/// with a zero-padded FFT (exact for the interpolant); evaluation uses a local
/// 8-point barycentric stencil on the fine grid, which reproduces the
/// interpolant to well below double roundoff for the bandwidths used here.
class TrigInterpolant {
public:
    TrigInterpolant() = default;
    explicit TrigInterpolant(const std::vector<double>& samples);

    double operator()(double s) const;
    std::size_t source_size() const { return n_; }

private:
    std::size_t n_ = 0;      // source grid size
    std::size_t fine_ = 0;   // refined grid size (8n)
    std::vector<double> y_;  // samples on the refined grid
};

} // namespace crz::spectral
