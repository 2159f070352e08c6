#pragma once

#include <vector>

#include "crz/linalg.hpp"

namespace crz {

/// Weight list (alpha_1, ..., alpha_d), d >= 2, of a cyclic weighted shift.
/// Entry convention for the associated matrix M:
///   M e_{j+1} = alpha_{j+1} e_j  (1 <= j <= d-1),   M e_1 = alpha_1 e_d,
/// i.e. the superdiagonal carries alpha_2..alpha_d and the bottom-left corner
/// carries alpha_1. M^d = (prod alpha) I.
class WeightVector {
public:
    explicit WeightVector(std::vector<Complex> weights);

    int d() const { return static_cast<int>(w_.size()); }
    const std::vector<Complex>& weights() const { return w_; }
    const Complex& operator[](int j) const { return w_[static_cast<std::size_t>(j)]; }

    Complex product() const;
    double min_abs() const;
    double max_abs() const;

private:
    std::vector<Complex> w_;
};

/// Cyclic partial products pi[j][k] = alpha_{j+1} alpha_{j+2} ... alpha_{j+k}
/// (indices mod d, 0-based row j, window length k, pi[j][0] = 1).
struct PartialProducts {
    int d = 0;
    std::vector<std::vector<Complex>> pi; ///< d rows, each with d entries k = 0..d-1
};

/// Diagonal unitary data bringing M(alpha) to e^{i theta} M(|alpha|).
struct Canonicalization {
    std::vector<double> magnitudes; ///< |alpha_j|
    double theta = 0.0;             ///< arg(prod alpha)/d, principal branch
    CVector u;                      ///< diagonal of the unitary U
};

/// Positive diagonal similarity certificate. The diagonal matrix Y with
/// Y_{ii} = x_{(i mod d)+1} (1-based) satisfies ||Y^{-1} M Y|| <= 1 whenever
/// prod |alpha| <= 1.
struct ScalingWitness {
    std::vector<double> x; ///< d positive scalars, min equal to 1
    double cond = 0.0;     ///< max x / min x = max x
};

/// Power-bound value; finite == false encodes +infinity (prod |alpha| > 1).
struct PsiValue {
    bool finite = true;
    double value = 0.0;
};

CMatrix build_matrix(const WeightVector& wv);

Canonicalization canonicalize(const WeightVector& wv);

/// True iff all |alpha_j| agree to 1e-12 (the normal case: M is then a scalar
/// multiple of a cyclic permutation).
bool is_normal_weights(const WeightVector& wv);

/// Eigenvalues lambda_j = lambda_1 e^{2 pi i (j-1)/d}, lambda_1 the principal
/// d-th root of prod alpha.
std::vector<Complex> eigenvalues(const WeightVector& wv);

PartialProducts partial_products(const WeightVector& wv);

/// ||M^k|| for k = 0..d-1; equals max_j |pi[j][k]|.
std::vector<double> power_norms(const WeightVector& wv);

/// Witness for the similarity bound; requires prod |alpha| <= 1 (within
/// roundoff), otherwise throws UnboundedPsiError.
ScalingWitness scaling_witness(const WeightVector& wv);

/// Build the diagonal of Y from a witness (size d).
RVector witness_diagonal(const ScalingWitness& sw);

/// Power bound of M over the closed unit disk:
/// max over k >= 0 of ||M^k||, which collapses to k = 0..d-1 when
/// prod |alpha| <= 1 and diverges otherwise.
PsiValue psi_disk(const WeightVector& wv);

} // namespace crz
