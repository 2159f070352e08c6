#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "crz/errors.hpp"
#include "crz/linalg.hpp"
#include "crz/rand.hpp"

using crz::CMatrix;
using crz::Complex;
using crz::CVector;

namespace {

CMatrix random_matrix(int n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a(i, j) = Complex(2.0 * crz::rng::canonical(gen) - 1.0,
                              2.0 * crz::rng::canonical(gen) - 1.0);
        }
    }
    return a;
}

} // namespace

TEST_CASE("operator norm: hand values") {
    CMatrix a1(1, 1);
    a1(0, 0) = Complex(-3.0, 0.0);
    CHECK(crz::operator_norm(a1) == doctest::Approx(3.0).epsilon(1e-14));

    CMatrix a2 = CMatrix::Zero(2, 2);
    a2(0, 1) = Complex(2.0, 0.0);
    CHECK(crz::operator_norm(a2) == doctest::Approx(2.0).epsilon(1e-14));

    // Unitary: norm exactly 1.
    CMatrix u(2, 2);
    const double r = std::sqrt(0.5);
    u << Complex(r, 0), Complex(r, 0), Complex(-r, 0), Complex(r, 0);
    CHECK(crz::operator_norm(u) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("operator norm agrees with the Gram eigenvalue route") {
    for (int n : {2, 3, 5, 8}) {
        const CMatrix a = random_matrix(n, 1000 + static_cast<std::uint64_t>(n));
        const double nv = crz::operator_norm(a);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(a.adjoint() * a);
        const double gram = std::sqrt(es.eigenvalues().maxCoeff());
        CHECK(nv == doctest::Approx(gram).epsilon(1e-12));
    }
}

TEST_CASE("top singular pair: defining relations and phase convention") {
    const CMatrix a = random_matrix(4, 42);
    const crz::SingularPair sp = crz::top_singular_pair(a);
    CHECK(sp.value == doctest::Approx(crz::operator_norm(a)).epsilon(1e-12));
    CHECK((a * sp.right - sp.value * sp.left).norm() <= 1e-12 * sp.value);
    CHECK((a.adjoint() * sp.left - sp.value * sp.right).norm() <= 1e-12 * sp.value);
    CHECK(std::abs(sp.right.norm() - 1.0) <= 1e-12);
    CHECK(std::abs(sp.left.norm() - 1.0) <= 1e-12);

    // Deterministic phase: the dominant component of the right vector is
    // real and positive.
    Eigen::Index imax = 0;
    sp.right.cwiseAbs().maxCoeff(&imax);
    CHECK(sp.right(imax).imag() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(sp.right(imax).real() > 0.0);
}

TEST_CASE("top singular pair rejects the zero matrix") {
    const CMatrix z = CMatrix::Zero(3, 3);
    CHECK_THROWS_AS(crz::top_singular_pair(z), crz::DegenerateInputError);
}

TEST_CASE("hermitian max eigenpair") {
    CMatrix a = CMatrix::Zero(3, 3);
    a(0, 0) = 2.0;
    a(1, 1) = -1.0;
    a(2, 2) = 0.5;
    const crz::EigenPair ep = crz::hermitian_max_eigenpair(a);
    CHECK(ep.value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK((a * ep.vector - ep.value * ep.vector).norm() <= 1e-12);

    // Non-Hermitian input is symmetrized first.
    const CMatrix b = random_matrix(4, 7);
    const crz::EigenPair eb = crz::hermitian_max_eigenpair(b);
    const CMatrix h = 0.5 * (b + b.adjoint());
    CHECK((h * eb.vector - eb.value * eb.vector).norm() <= 1e-11);
}

TEST_CASE("shifted solve: residual and singular detection") {
    const CMatrix a = random_matrix(4, 9);
    const CMatrix b = CMatrix::Identity(4, 4);
    const Complex tau(5.0, 1.0); // far outside the spectrum of a unit-scale matrix
    const CMatrix x = crz::solve_shifted(a, tau, b);
    const CMatrix shifted = tau * CMatrix::Identity(4, 4) - a;
    CHECK((shifted * x - b).norm() <= 1e-10);

    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    CHECK_THROWS_AS(crz::solve_shifted(d, Complex(2.0, 0.0), CMatrix::Identity(2, 2)),
                    crz::SingularShiftError);
    try {
        crz::solve_shifted(d, Complex(2.0, 0.0), CMatrix::Identity(2, 2));
    } catch (const crz::SingularShiftError& e) {
        CHECK(e.distance_to_spectrum <= 1e-8);
    }
}
