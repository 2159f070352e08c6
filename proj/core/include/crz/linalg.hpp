#pragma once

#include <complex>
#include <Eigen/Dense>

#include "crz/errors.hpp"

namespace crz {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Spectral norm (largest singular value).
double operator_norm(const CMatrix& a);

struct SingularPair {
    double value = 0.0; ///< largest singular value
    CVector left;       ///< unit vector u with a * right = value * u
    CVector right;      ///< unit vector x maximizing |a x|
};

/// Top singular triple of a nonzero matrix.
/// Throws DegenerateInputError when a == 0 (the maximizer is not unique).
SingularPair top_singular_pair(const CMatrix& a);

struct EigenPair {
    double value = 0.0;
    CVector vector; ///< unit eigenvector
};

/// Largest eigenvalue (and eigenvector) of a Hermitian matrix.
/// Hermiticity is the caller's contract; the input is symmetrized internally
/// to keep roundoff from leaking into the solver.
EigenPair hermitian_max_eigenpair(const CMatrix& a);

/// Solve (tau*I - a) x = b column by column.
/// Throws SingularShiftError, carrying the distance from tau to the nearest
/// eigenvalue, when the shifted matrix is singular to working precision.
CMatrix solve_shifted(const CMatrix& a, Complex tau, const CMatrix& b);

} // namespace crz
