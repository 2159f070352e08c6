#include "crz/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <sstream>

namespace crz {

namespace {

void require_square_finite(const CMatrix& a, const char* who) {
    if (a.rows() == 0 || a.rows() != a.cols()) {
        std::ostringstream os;
        os << who << ": expected a nonempty square matrix, got " << a.rows() << "x" << a.cols();
        throw InvalidInputError(os.str());
    }
    if (!a.allFinite()) {
        throw InvalidInputError(std::string(who) + ": matrix has non-finite entries");
    }
}

} // namespace

double operator_norm(const CMatrix& a) {
    require_square_finite(a, "operator_norm");
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues()(0);
}

SingularPair top_singular_pair(const CMatrix& a) {
    require_square_finite(a, "top_singular_pair");
    if (a.norm() == 0.0) {
        throw DegenerateInputError("top_singular_pair: zero matrix has no distinguished singular pair");
    }
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SingularPair p;
    p.value = svd.singularValues()(0);
    p.left = svd.matrixU().col(0);
    p.right = svd.matrixV().col(0);
    // Fix the overall phase so results are reproducible: make the largest
    // component of the right vector real positive.
    Eigen::Index imax = 0;
    p.right.cwiseAbs().maxCoeff(&imax);
    Complex phase = p.right(imax) / std::abs(p.right(imax));
    p.right /= phase;
    p.left /= phase;
    return p;
}

EigenPair hermitian_max_eigenpair(const CMatrix& a) {
    require_square_finite(a, "hermitian_max_eigenpair");
    CMatrix h = (a + a.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success) {
        throw DegenerateInputError("hermitian_max_eigenpair: eigensolver failed to converge");
    }
    EigenPair p;
    const Eigen::Index last = h.rows() - 1; // eigenvalues are ascending
    p.value = es.eigenvalues()(last);
    p.vector = es.eigenvectors().col(last);
    Eigen::Index imax = 0;
    p.vector.cwiseAbs().maxCoeff(&imax);
    Complex phase = p.vector(imax) / std::abs(p.vector(imax));
    p.vector /= phase;
    return p;
}

CMatrix solve_shifted(const CMatrix& a, Complex tau, const CMatrix& b) {
    require_square_finite(a, "solve_shifted");
    if (b.rows() != a.rows()) {
        throw InvalidInputError("solve_shifted: right-hand side row count mismatch");
    }
    CMatrix shifted = -a;
    shifted.diagonal().array() += tau;
    Eigen::PartialPivLU<CMatrix> lu(shifted);
    CMatrix x = lu.solve(b);

    // LU with partial pivoting does not signal rank deficiency; vet the
    // solution by its residual instead, scaled to the problem size.
    double scale = shifted.cwiseAbs().maxCoeff();
    double bnorm = b.norm();
    double resid = (shifted * x - b).norm();
    if (!x.allFinite() || resid > 1e-8 * std::max(1.0, scale) * std::max(1.0, bnorm)) {
        Eigen::ComplexEigenSolver<CMatrix> es(a, /*computeEigenvectors=*/false);
        double dist = std::numeric_limits<double>::infinity();
        if (es.info() == Eigen::Success) {
            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
                dist = std::min(dist, std::abs(es.eigenvalues()(i) - tau));
            }
        }
        std::ostringstream os;
        os << "solve_shifted: shift tau = (" << tau.real() << ", " << tau.imag()
           << ") is within " << dist << " of the spectrum";
        throw SingularShiftError(os.str(), dist);
    }
    return x;
}

} // namespace crz
