#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "crz/rand.hpp"
#include "crz/spectral.hpp"

using crz::spectral::Complex;
namespace sp = crz::spectral;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("fft: delta, pure modes, roundtrip, Parseval") {
    const std::size_t n = 64;

    // Delta at 0 transforms to all-ones.
    std::vector<Complex> delta(n, Complex(0, 0));
    delta[0] = Complex(1, 0);
    sp::fft(delta);
    for (const Complex& v : delta) CHECK(std::abs(v - Complex(1, 0)) <= 1e-14);

    // e^{i k0 s} concentrates at bin k0 with weight n.
    const int k0 = 5;
    std::vector<Complex> mode(n);
    for (std::size_t j = 0; j < n; ++j) mode[j] = std::polar(1.0, k0 * kTwoPi * j / n);
    sp::fft(mode);
    for (std::size_t k = 0; k < n; ++k) {
        const double expect = (k == static_cast<std::size_t>(k0)) ? static_cast<double>(n) : 0.0;
        CHECK(std::abs(mode[k] - Complex(expect, 0)) <= 1e-11);
    }

    // Roundtrip and Parseval on seeded noise.
    std::mt19937_64 gen(314);
    std::vector<Complex> x(n);
    double energy = 0.0;
    for (auto& v : x) {
        v = Complex(2 * crz::rng::canonical(gen) - 1, 2 * crz::rng::canonical(gen) - 1);
        energy += std::norm(v);
    }
    std::vector<Complex> y = x;
    sp::fft(y);
    double coeff_energy = 0.0;
    for (const auto& v : y) coeff_energy += std::norm(v);
    CHECK(coeff_energy / n == doctest::Approx(energy).epsilon(1e-13));
    sp::ifft(y);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(y[j] - x[j]) <= 1e-13);
}

TEST_CASE("conjugation operator: cos k s -> sin k s, kills constants") {
    const std::size_t n = 128;
    for (int k : {1, 2, 3, 7}) {
        std::vector<double> u(n), expect(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double s = kTwoPi * j / n;
            u[j] = std::cos(k * s);
            expect[j] = std::sin(k * s);
        }
        const std::vector<double> v = sp::conjugate_periodic(u);
        for (std::size_t j = 0; j < n; ++j) CHECK(v[j] == doctest::Approx(expect[j]).epsilon(1e-12));
    }

    std::vector<double> c(n, 3.7);
    for (double v : sp::conjugate_periodic(c)) CHECK(std::abs(v) <= 1e-13);

    // sin k s -> -cos k s (zero-mean part).
    std::vector<double> u(n), expect(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double s = kTwoPi * j / n;
        u[j] = std::sin(3 * s);
        expect[j] = -std::cos(3 * s);
    }
    const std::vector<double> v = sp::conjugate_periodic(u);
    for (std::size_t j = 0; j < n; ++j) CHECK(v[j] == doctest::Approx(expect[j]).epsilon(1e-12));
}

TEST_CASE("spectral derivative") {
    const std::size_t n = 128;
    std::vector<double> u(n), expect(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double s = kTwoPi * j / n;
        u[j] = std::cos(3 * s) + 0.5 * std::sin(5 * s);
        expect[j] = -3.0 * std::sin(3 * s) + 2.5 * std::cos(5 * s);
    }
    const std::vector<double> du = sp::derivative_periodic(u);
    for (std::size_t j = 0; j < n; ++j) CHECK(du[j] == doctest::Approx(expect[j]).epsilon(1e-11));

    std::vector<Complex> z(n);
    for (std::size_t j = 0; j < n; ++j) z[j] = std::polar(1.0, kTwoPi * j / n * 2.0);
    const std::vector<Complex> dz = sp::derivative_periodic(z);
    for (std::size_t j = 0; j < n; ++j) {
        const Complex expect_z = Complex(0, 2) * std::polar(1.0, kTwoPi * j / n * 2.0);
        CHECK(std::abs(dz[j] - expect_z) <= 1e-11);
    }
}

TEST_CASE("trigonometric interpolation of a smooth periodic function") {
    const std::size_t n = 128;
    auto f = [](double s) { return std::exp(std::cos(s)) + 0.3 * std::sin(2 * s); };
    std::vector<double> samples(n);
    for (std::size_t j = 0; j < n; ++j) samples[j] = f(kTwoPi * j / n);
    const sp::TrigInterpolant interp(samples);

    // Exact at the grid.
    for (std::size_t j = 0; j < n; j += 7) {
        CHECK(interp(kTwoPi * j / n) == doctest::Approx(samples[j]).epsilon(1e-13));
    }
    // Off-grid agreement: exp(cos s) has super-geometric coefficient decay,
    // so 128 samples resolve it to machine precision.
    for (int i = 0; i < 200; ++i) {
        const double s = kTwoPi * (i + 0.383) / 200.0;
        CHECK(interp(s) == doctest::Approx(f(s)).epsilon(1e-11));
    }
    // 2pi-periodic extension in both directions.
    CHECK(interp(0.7 + kTwoPi) == doctest::Approx(interp(0.7)).epsilon(1e-13));
    CHECK(interp(0.7 - 3 * kTwoPi) == doctest::Approx(interp(0.7)).epsilon(1e-13));
}
