#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crz/linalg.hpp"

namespace crz {

/// Finite Blaschke product B(z) = rotation * prod (z - a_j)/(1 - conj(a_j) z),
/// zeros strictly inside the unit disk; unimodular on the unit circle.
struct BlaschkeProduct {
    std::vector<Complex> zeros;
    Complex rotation = Complex(1.0, 0.0);
};

/// The four-parameter 4x4 family: rows (1, a, 0, c), (0, i, ic, 0),
/// (0, 0, -1, -a), (0, 0, 0, -i) with c = sqrt(2a^2 / (2 + a^2));
/// eigenvalues 1, i, -1, -i for every a >= 0.
struct Family4Params {
    double a = 0.0;
    double c = 0.0;
    explicit Family4Params(double a_value);
};

struct MaximizeResult {
    BlaschkeProduct best;
    double value = 0.0;           ///< max ||B(A)|| found
    int max_power_k = 1;          ///< argmax_k ||A^k||, k = 1..max_degree
    double max_power_value = 0.0; ///< the power lower bound
    bool budget_exhausted = false;
};

/// One row of the family experiment; failures are captured, not thrown.
struct Family4Row {
    double a = 0.0;
    double c = 0.0;
    double rotation_defect = 0.0;
    double phi_identity_residual = 0.0;
    int max_power_k = 0;
    double max_power_value = 0.0;
    double max_blaschke_value = 0.0;
    double gap = 0.0;
    std::vector<Complex> zeros;
    bool ok = false;
    std::string error;
};

Complex eval_scalar(const BlaschkeProduct& b, Complex z);

/// Functional calculus for rational inner functions:
/// rotation * prod (A - a_j I)(I - conj(a_j) A)^{-1}.
CMatrix eval_on_matrix(const BlaschkeProduct& b, const CMatrix& a);

/// max over a uniform boundary grid of | |B(e^{is})| - 1 |.
double boundary_modulus_defect(const BlaschkeProduct& b, int grid);

/// Multistart simplex search for max ||B(A)|| over Blaschke products of
/// degree 1..max_degree. Zeros are parameterized by the smooth surjection
/// w -> w/(1+|w|) of the plane onto the open disk, keeping the search
/// unconstrained. Each degree starts from the all-zeros power product plus
/// `budget` seeded random draws; the returned maximum never falls below
/// max_k ||A^k|| and never decreases when budget grows (per-start seeding
/// is independent of budget).
MaximizeResult maximize(const CMatrix& a, int max_degree, int budget, std::uint64_t seed);

CMatrix build_family4(const Family4Params& p);

/// For each a: rotation invariance of the numerical range, the phi(A) = cA
/// reduction through contour calculus (boundary correspondence for a = 0,
/// where the eigenvalues lie on the boundary), and the power-vs-Blaschke
/// maximization. Per-instance failures are recorded in the row.
std::vector<Family4Row> family4_experiment(const std::vector<double>& a_grid, int n,
                                           int budget, std::uint64_t seed);

std::string family4_csv_header();
std::string family4_csv_row(const Family4Row& row);

} // namespace crz
