#include "crz/spectral.hpp"

#include <cmath>
#include <numbers>

namespace crz::spectral {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_pow2(std::size_t n, const char* who) {
    if (!is_pow2(n)) {
        throw InvalidInputError(std::string(who) + ": grid size must be a power of two");
    }
}

void transform(std::vector<Complex>& x, int sign) {
    const std::size_t n = x.size();
    check_pow2(n, "fft");
    if (n == 1) return;

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * kTwoPi / static_cast<double>(len);
        const Complex wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                Complex u = x[i + j];
                Complex v = x[i + j + len / 2] * w;
                x[i + j] = u + v;
                x[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}
} // namespace

bool is_pow2(std::size_t n) {
    return n >= 1 && (n & (n - 1)) == 0;
}

void fft(std::vector<Complex>& x) {
    transform(x, -1);
}

void ifft(std::vector<Complex>& x) {
    transform(x, +1);
    const double inv = 1.0 / static_cast<double>(x.size());
    for (auto& v : x) v *= inv;
}

std::vector<double> conjugate_periodic(const std::vector<double>& u) {
    const std::size_t n = u.size();
    check_pow2(n, "conjugate_periodic");
    std::vector<Complex> x(u.begin(), u.end());
    fft(x);
    x[0] = 0.0;
    if (n >= 2) x[n / 2] = 0.0;
    const Complex mi(0.0, -1.0), pi(0.0, 1.0);
    for (std::size_t k = 1; k < n / 2; ++k) x[k] *= mi;
    for (std::size_t k = n / 2 + 1; k < n; ++k) x[k] *= pi;
    ifft(x);
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = x[j].real();
    return v;
}

std::vector<Complex> derivative_periodic(const std::vector<Complex>& u) {
    const std::size_t n = u.size();
    check_pow2(n, "derivative_periodic");
    std::vector<Complex> x = u;
    fft(x);
    x[0] = 0.0;
    if (n >= 2) x[n / 2] = 0.0; // no odd-man-out Nyquist derivative
    for (std::size_t k = 1; k < n / 2; ++k) x[k] *= Complex(0.0, static_cast<double>(k));
    for (std::size_t k = n / 2 + 1; k < n; ++k) {
        x[k] *= Complex(0.0, static_cast<double>(k) - static_cast<double>(n));
    }
    ifft(x);
    return x;
}

std::vector<double> derivative_periodic(const std::vector<double>& u) {
    std::vector<Complex> x(u.begin(), u.end());
    x = derivative_periodic(x);
    std::vector<double> v(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) v[j] = x[j].real();
    return v;
}

TrigInterpolant::TrigInterpolant(const std::vector<double>& samples) {
    n_ = samples.size();
    check_pow2(n_, "TrigInterpolant");
    fine_ = 8 * n_;
    std::vector<Complex> x(samples.begin(), samples.end());
    fft(x);
    std::vector<Complex> pad(fine_, Complex(0.0, 0.0));
    // Spread coefficients, splitting the Nyquist mode symmetrically so the
    // refined samples stay real.
    pad[0] = x[0];
    for (std::size_t k = 1; k < n_ / 2; ++k) {
        pad[k] = x[k];
        pad[fine_ - k] = x[n_ - k];
    }
    if (n_ >= 2) {
        pad[n_ / 2] = 0.5 * x[n_ / 2];
        pad[fine_ - n_ / 2] = 0.5 * x[n_ / 2];
    }
    ifft(pad);
    const double scale = static_cast<double>(fine_) / static_cast<double>(n_);
    y_.resize(fine_);
    for (std::size_t j = 0; j < fine_; ++j) y_[j] = pad[j].real() * scale;
}

double TrigInterpolant::operator()(double s) const {
    if (n_ == 0) throw InvalidInputError("TrigInterpolant: empty interpolant");
    const double h = kTwoPi / static_cast<double>(fine_);
    double pos = s / h;
    // Reduce to [0, fine) with exact periodicity.
    pos -= std::floor(pos / static_cast<double>(fine_)) * static_cast<double>(fine_);
    const double base = std::floor(pos);
    double frac = pos - base;
    std::size_t i0 = static_cast<std::size_t>(base);
    if (i0 >= fine_) { i0 = 0; frac = 0.0; } // guard against pos == fine_

    if (frac < 1e-13) return y_[i0];
    if (frac > 1.0 - 1e-13) return y_[(i0 + 1) % fine_];

    // Centered 8-point barycentric Lagrange stencil at offsets -3..4 around
    // the cell, with equispaced weights (-1)^j C(7, j).
    static const double w[8] = {-1.0, 7.0, -21.0, 35.0, -35.0, 21.0, -7.0, 1.0};
    double num = 0.0, den = 0.0;
    const long nf = static_cast<long>(fine_);
    for (int j = 0; j < 8; ++j) {
        const double dx = frac - static_cast<double>(j - 3);
        const double c = w[j] / dx;
        const long idx = (static_cast<long>(i0) + j - 3 + nf) % nf;
        num += c * y_[static_cast<std::size_t>(idx)];
        den += c;
    }
    return num / den;
}

} // namespace crz::spectral
