#pragma once

#include <vector>

#include "crz/linalg.hpp"

namespace crz {

/// Sampled boundary of the numerical range W(A) of a matrix whose numerical
/// range contains 0 in its interior.
///
/// theta[i] = 2 pi i / n. support[i] is the support function
/// h(theta) = max eig((e^{-i theta} A + e^{i theta} A^*)/2), rho[i] the radial
/// distance of the boundary along direction theta[i], reconstructed from the
/// support samples by the polar envelope
///   rho(t) = min over |theta - t| < pi/2 of h(theta)/cos(t - theta),
/// and points[i] = rho[i] e^{i theta[i]}.
struct BoundaryCurve {
    int n = 0;
    std::vector<double> theta;
    std::vector<double> support;
    std::vector<double> rho;
    std::vector<Complex> points;

    double min_rho() const;
    double max_rho() const;
    double mean_rho() const;
};

struct SymmetryReport {
    int order = 1;                  ///< tested rotation order d
    double rotation_defect = 0.0;   ///< sup |rho(t) - rho(t - 2 pi/d)|
    double reflection_defect = 0.0; ///< sup |rho(t) - rho(-t)|
    bool is_disk = false;           ///< rho constant to 1e-9 (relative)
    double disk_radius = 0.0;       ///< mean rho when is_disk
};

/// Sample W(A)'s boundary on n uniform angles (n a power of two, >= 256).
/// Throws GeometryError when 0 is not interior (min support <= 0).
BoundaryCurve boundary(const CMatrix& a, int n);

/// Rotation/reflection symmetry defects of a sampled boundary.
SymmetryReport symmetry_report(const BoundaryCurve& curve, int order);

/// Symmetric Hausdorff distance between two finite point sets.
double hausdorff(const std::vector<Complex>& p, const std::vector<Complex>& q);

} // namespace crz
