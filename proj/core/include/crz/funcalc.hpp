#pragma once

#include <vector>

#include "crz/conformal.hpp"
#include "crz/linalg.hpp"

namespace crz {

/// Contour quadrature data on the boundary of the numerical range, always
/// parameterized through the conformal map: tau(s) = sigma(e^{is}) on the
/// uniform s-grid. With this parameterization the extremal boundary data
/// phi(tau(s))^k = e^{iks} is exact and the inverse map never has to be
/// evaluated on the boundary.
struct ContourData {
    std::vector<Complex> nodes;    ///< tau(s_j) = sigma(e^{is_j})
    std::vector<Complex> dnodes;   ///< spectral derivative tau'(s_j)
    std::vector<Complex> f_values; ///< scalar factor f(tau(s_j)) of the integrand
};

/// Builds the contour from a solved disk map; f_values is initialized to 1.
ContourData make_contour(const DiskMap& map);

/// The same contour resampled at m uniform parameter nodes using the map's
/// stored boundary interpolants. Refines the trapezoid quadrature (whose
/// error is pole-driven, ~|phi(lambda1)|^m) without re-solving the map.
ContourData make_contour(const DiskMap& map, int m);

/// Boundary samples of w^k along the contour parameterization: e^{i k s_j}.
std::vector<Complex> power_f_values(int n, int k);

/// (1/2pi i) * contour integral of f(tau) (tau I - A)^{-1} dtau by the
/// periodic trapezoidal rule; nodes must stay away from the spectrum of A.
/// Summation is sequential in node order (deterministic).
CMatrix cauchy_apply(const ContourData& cd, const CMatrix& a);

/// The conjugate-Cauchy transform g0(A). Expects cd.f_values to hold the
/// conjugated extremal boundary data conj(e^{iks}) = e^{-iks}.
CMatrix g0_matrix(const ContourData& cd, const CMatrix& a);

/// The double-layer-type operator
///   S0(A) = (1/2pi i) * integral of f(tau) ((tau-A)^{-1} dtau - (conj(tau)-A*)^{-1} dconj(tau)),
/// conjugate leg evaluated with conj(nodes), conj(dnodes) and A*.
CMatrix s0_matrix(const ContourData& cd, const CMatrix& a);

} // namespace crz
