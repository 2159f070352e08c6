#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crz/choi.hpp"
#include "crz/linalg.hpp"

namespace crz {

/// Accuracy ladder used by the pipeline. Each stage's error compounds into
/// the next, so the gates widen from geometry to the final chain checks.
struct Tolerances {
    double geometry = 1e-8;            ///< boundary reconstruction
    double map = 1e-8;                 ///< conformal map defects
    double quadrature = 1e-6;          ///< contour functional calculus
    double chain = 1e-6;               ///< inequality chain slack
    double chain_flagged = 1e-4;       ///< widened chain slack on flagged runs
    double near_normal_margin = 1e-4;  ///< relative eigenvalue depth below which
                                       ///< the map is distrusted (flag)
    double surrogate_margin = 1e-6;    ///< depth below which the map is skipped
    int max_quad_grid = 8192;          ///< grid-doubling cap for quadrature reach
    int max_map_grid = 32768;          ///< grid-doubling cap for map solve/defects
};

/// One verified instance: the power bound, the similarity witness, the
/// extremal-pair data from the contour calculus, and the inequality chain.
/// Flags mark instances where a numerical stage left its trusted regime;
/// "disk" and "normal" are structural markers ("disk" is informational only).
struct PsiReport {
    int d = 0;
    std::vector<Complex> weights_raw; ///< weights as given
    std::vector<double> weights;      ///< canonical magnitudes (similarity-invariant)
    bool is_normal = false;
    bool is_disk = false;
    int n_grid = 0;                   ///< boundary/quadrature grid actually used

    int k_star = 0;                   ///< maximizing power index (1..d-1; 0 on short-circuits)
    double psi = 0.0;                 ///< max(1, max_k |c|^k ||M^k||)
    double psi_lower_bound = 0.0;     ///< ||(cM)^{k*}|| — admissible scalar polynomial
    double psi_cb_witness_cond = 0.0; ///< cond of the diagonal witness on cM
    double h0_lambda1 = 0.0;          ///< 1 - (beta(0)/beta(lambda1))^{k*}
    double s0_norm = 0.0;
    double f0_norm = 0.0;
    double extremal_orthogonality = 0.0; ///< |<f0(M) x0, x0>|, x0 top right singular vector
    double identity_residual = 0.0;      ///< ||f0(M) - S0(M) + g0(M)*||
    double h0_identity_residual = 0.0;   ///< ||f0(M) g0(M) - h0(lambda1) I||
    double bound_value = 0.0;            ///< 1 + sqrt(1 - h0(lambda1))
    double two_margin = 0.0;             ///< 2 - psi

    double lambda1 = 0.0;             ///< canonical leading eigenvalue (real, >= 0)
    double phi_lambda1 = 0.0;         ///< its image in the disk (real, >= 0)
    double c_scalar = 0.0;            ///< the reduction factor c in phi(M) = cM
    double c1 = 0.0;                  ///< sigma'(0)
    double interior_margin = 0.0;     ///< (rho(0) - lambda1) / (2 max rho)
    double disk_radius = 0.0;         ///< mean boundary radius
    double map_residual = 0.0;
    double analyticity_defect = 0.0;
    double symmetry_defect = 0.0;
    double monotone_boundary_slack = 0.0; ///< max increase of |sigma(e^{it})| on [0, pi/d]
    double monotone_radial_slack = 0.0;   ///< max decrease of |sigma(x)|/x on (0,1)

    std::uint64_t seed = 0;           ///< batch bookkeeping (0 when not drawn)
    int instance_index = -1;

    std::vector<std::string> flags;
    std::vector<std::string> failures; ///< populated by check_report
    bool passed = true;

    bool has_flag(const std::string& f) const;
    /// True when any flag voids the quantitative invariants ("disk" does not).
    bool excluded() const;
};

/// Inequality-chain ledger: psi^2 <= 2 psi - h0 and psi <= 1 + sqrt(1 - h0).
struct ChainLedger {
    bool ok = false;
    double margin_quadratic = 0.0; ///< (2 psi - h0) - psi^2
    double margin_sqrt = 0.0;      ///< (1 + sqrt(1-h0)) - psi
    double tol_used = 0.0;
};

/// Closed-form three-weight family whose numerical range is the unit disk.
struct Remark2Row {
    double phi_angle = 0.0;
    double psi_computed = 0.0;
    double psi_formula = 0.0;          ///< 2 max(sin, cos, sin 2*angle)
    double deviation = 0.0;            ///< |computed - formula|
    double hausdorff_to_circle = 0.0;  ///< max_j | rho(theta_j) - 1 |
};

/// Full pipeline: canonicalize, short-circuit normal matrices, otherwise
/// boundary -> conformal map -> scalars -> powers/witness -> contour
/// calculus -> monotonicity profiles. The grid is escalated (doubling up to
/// the Tolerances caps) when the map has not converged or the leading
/// eigenvalue sits too deep toward the boundary for the requested quadrature
/// accuracy; at the caps the report is flagged "map-residual" or
/// "quad-limited". Map failures escalate too, then degrade to a flagged
/// surrogate report instead of aborting.
PsiReport verify_choi(const WeightVector& wv, int n, const Tolerances& tol);

/// |<f0m x0, x0>| / ||f0m|| with x0 the top right singular vector.
double extremal_orthogonality(const CMatrix& f0m);

/// Evaluates the inequality chain with the ladder tolerance (widened when
/// the report carries a distrust flag).
ChainLedger chain_check(const PsiReport& r);

/// Verifies the closed-form disk family at one angle in [0, pi/2].
Remark2Row remark2_report(double phi_angle, int n);

/// Runs every report invariant, appends human-readable failure entries and
/// sets r.passed. Returns r.passed.
bool check_report(PsiReport& r, const Tolerances& tol);

/// JSON serialization (schema_version, all fields, tolerances).
std::string report_to_json(const PsiReport& r, const Tolerances& tol);

/// CSV support for batch runs: stable column list + one row per report.
std::string report_csv_header();
std::string report_csv_row(const PsiReport& r);

} // namespace crz
