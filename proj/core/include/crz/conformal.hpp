#pragma once

#include <vector>

#include "crz/choi.hpp"
#include "crz/numrange.hpp"
#include "crz/spectral.hpp"

namespace crz {

/// Discrete Riemann map data for sigma : unit disk -> interior of W, with
/// sigma(0) = 0 and sigma'(0) = c1 > 0 (phi is the inverse direction).
///
/// t_of_s is the boundary correspondence: sigma(e^{is_j}) has polar angle
/// t(s_j) on the target curve, s_j = 2 pi j / n. coeffs holds the power
/// series coefficients c_0..c_{n/2} of sigma read off the node transform.
struct DiskMap {
    int n = 0;
    int symmetry_order = 1;
    std::vector<double> t_of_s;
    std::vector<Complex> coeffs;
    std::vector<Complex> nodes; ///< sigma(e^{i s_j})
    double c1 = 0.0;
    double residual = 0.0;           ///< final sup-norm correspondence defect
    double analyticity_defect = 0.0; ///< relative negative-index energy of the node transform
    double symmetry_defect = 0.0;    ///< max |c_k| over k != 1 (mod order), relative to max |c_k|

    // Interpolants kept for evaluation: log rho as a function of the target
    // polar angle, and t(s) - s as a function of s.
    spectral::TrigInterpolant log_rho;
    spectral::TrigInterpolant t_shift;
};

/// Scalars tying the map to the shift family: phi(M) = c M.
struct MapScalars {
    Complex lambda1{0.0, 0.0};
    Complex phi_lambda1{0.0, 0.0};
    Complex c{0.0, 0.0};              ///< phi(lambda1)/lambda1, or 1/c1 when lambda1 = 0
    Complex beta0{0.0, 0.0};          ///< beta(0) = sigma'(0) = c1
    Complex beta_at_lambda1{0.0, 0.0};///< lambda1/phi(lambda1)
    double h0_at_lambda1 = 0.0;       ///< (beta(l1)^k - beta(0)^k)/beta(l1)^k
    int k_star = 0;                   ///< argmax over 1..d-1 of |c|^k ||M^k|| (0 if all < 1)
};

struct GammaProfiles {
    std::vector<double> angles;          ///< m points of [0, pi/d]
    std::vector<double> boundary_modulus;///< |sigma(e^{it})| there (expected nonincreasing)
    std::vector<double> radii;           ///< m points of (0, 1)
    std::vector<double> radial_ratio;    ///< sigma(x)/x there (expected nondecreasing)
};

/// Solve the boundary correspondence for the sampled convex curve and package
/// the map. d is the rotation symmetry order of the curve (1 if none).
///
/// The correspondence equation t(s) = s + K[log rho(t)](s) (K the conjugation
/// operator) is solved by the damped fixed-point iteration where it
/// contracts; steep radial profiles (max |d log rho / dt| > ~0.8, e.g.
/// eccentric ellipses) fall back to an inexact Newton solve of the same
/// discrete system, continued in a homotopy parameter scaling log rho.
/// Throws MapFailureError when the defect cannot be driven to 1e-12.
DiskMap solve_map(const BoundaryCurve& bc, int d);

/// Inverse boundary correspondence: the disk angle s with t(s) = angle,
/// found by bisection on the increasing function s + shift(s). Gives
/// phi at boundary points, where eval_phi's interior Newton cannot go.
double boundary_preimage_angle(const DiskMap& map, double angle);

/// Series evaluation of sigma on |w| <= 1 (boundary correspondence on |w|=1).
Complex eval_sigma(const DiskMap& map, Complex w);

/// Newton inversion: phi(z) for z strictly interior (polar margin >= 1e-6,
/// relative to the local radius).
Complex eval_phi(const DiskMap& map, Complex z);

/// Derivative sigma'(w) of the series, |w| < 1.
Complex eval_sigma_prime(const DiskMap& map, Complex w);

/// Map scalars for canonicalized weights (see MapScalars).
MapScalars map_scalars(const DiskMap& map, const WeightVector& wv);

/// Sampled monotonicity profiles of the boundary modulus and sigma(x)/x.
GammaProfiles gamma_profile(const DiskMap& map, int d, int m);

} // namespace crz
