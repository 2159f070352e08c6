#include "crz/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "crz/conformal.hpp"
#include "crz/errors.hpp"
#include "crz/funcalc.hpp"
#include "crz/numrange.hpp"

namespace crz {

namespace {

// Predicted quadrature decay q^n must clear this before the contour
// calculus is trusted at grid n (two orders under the 1e-6 gate).
constexpr double kQuadReach = 1e-8;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

void add_flag(PsiReport& r, const std::string& f) {
    if (!r.has_flag(f)) r.flags.push_back(f);
}

CMatrix matrix_power(const CMatrix& a, int k) {
    CMatrix out = CMatrix::Identity(a.rows(), a.cols());
    for (int i = 0; i < k; ++i) out = out * a;
    return out;
}

WeightVector magnitude_weights(const std::vector<double>& mags) {
    std::vector<Complex> w(mags.size());
    for (std::size_t j = 0; j < mags.size(); ++j) w[j] = Complex(mags[j], 0.0);
    return WeightVector(std::move(w));
}

struct PowerPick {
    int k_star = 1;
    double value = 0.0; ///< |c|^{k*} ||M^{k*}||
};

PowerPick pick_power(double cabs, const std::vector<double>& norms, int d) {
    PowerPick p;
    p.value = -1.0;
    for (int k = 1; k < d; ++k) {
        const double v = std::pow(cabs, k) * norms[static_cast<std::size_t>(k)];
        if (v > p.value) { p.value = v; p.k_star = k; }
    }
    return p;
}

} // namespace

bool PsiReport::has_flag(const std::string& f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

bool PsiReport::excluded() const {
    static const char* kExcluding[] = {"normal",      "near-normal", "surrogate",
                                       "map-failure", "map-residual", "quad-limited",
                                       "k0"};
    for (const char* f : kExcluding) {
        if (has_flag(f)) return true;
    }
    return false;
}

double extremal_orthogonality(const CMatrix& f0m) {
    const SingularPair sp = top_singular_pair(f0m); // throws on the zero matrix
    const Complex inner = (sp.right.adjoint() * (f0m * sp.right))(0, 0);
    return std::abs(inner) / sp.value;
}

PsiReport verify_choi(const WeightVector& wv, int n, const Tolerances& tol) {
    PsiReport r;
    r.d = wv.d();
    r.weights_raw = wv.weights();

    const Canonicalization canon = canonicalize(wv);
    r.weights = canon.magnitudes;
    const WeightVector abs_wv = magnitude_weights(canon.magnitudes);
    const std::vector<double> norms = power_norms(abs_wv);
    r.lambda1 = eigenvalues(abs_wv)[0].real();
    r.n_grid = n;

    if (is_normal_weights(abs_wv)) {
        // Scalar multiple of a cyclic permutation: unitarily diagonalizable,
        // so every admissible function acts spectrally and the bound is 1.
        r.is_normal = true;
        add_flag(r, "normal");
        r.k_star = 0;
        r.psi = 1.0;
        r.psi_lower_bound = 1.0;
        r.psi_cb_witness_cond = 1.0;
        r.h0_lambda1 = 1.0;
        r.bound_value = 1.0;
        r.two_margin = 1.0;
        r.disk_radius = canon.magnitudes[0];
        return r;
    }

    const CMatrix m = build_matrix(abs_wv);

    const int n_max = std::max(tol.max_quad_grid, n);
    const int n_map_max = std::max(tol.max_map_grid, n_max);
    int n_cur = n;
    bool surrogate = false;
    bool have_map = false;
    BoundaryCurve bc;
    DiskMap map;
    MapScalars scalars;

    while (true) {
        bc = boundary(m, n_cur);
        r.interior_margin = (bc.rho[0] - r.lambda1) / (2.0 * bc.max_rho());
        if (r.interior_margin < tol.surrogate_margin) {
            add_flag(r, "near-normal");
            surrogate = true;
            break;
        }
        if (r.interior_margin < tol.near_normal_margin) add_flag(r, "near-normal");
        bool map_failed = false;
        try {
            map = solve_map(bc, r.d);
            scalars = map_scalars(map, abs_wv);
        } catch (const MapFailureError&) {
            map_failed = true;
        } catch (const InversionError&) {
            map_failed = true;
        } catch (const DomainError&) {
            add_flag(r, "near-normal");
            surrogate = true;
            break;
        }
        if (map_failed) {
            // Eccentric ranges crowd the boundary correspondence; the discrete
            // system only has a clean (monotone) solution once the grid
            // resolves the crowded parametrization, so retry finer.
            if (n_cur < n_map_max) {
                n_cur *= 2;
                continue;
            }
            add_flag(r, "map-failure");
            surrogate = true;
            break;
        }
        have_map = true;
        // Escalate while the map's own spectral tail is unresolved (crowded
        // curves resolve slowly, but each doubling gains an accelerating
        // factor). The quadrature grid is handled separately below.
        const bool map_clean = map.analyticity_defect <= tol.map &&
                               map.symmetry_defect <= tol.map;
        if (!map_clean && n_cur < n_map_max) {
            n_cur *= 2;
            continue;
        }
        break;
    }
    // Contour quadrature reach: the trapezoid error decays like q^m with q
    // the disk-depth of the leading eigenvalue, so pick the node count from
    // q and resample the solved map (no re-solve needed).
    int n_quad = n_cur;
    if (!surrogate && have_map) {
        const double q = std::abs(scalars.phi_lambda1);
        while (n_quad < n_max && std::pow(q, n_quad) > kQuadReach) n_quad *= 2;
        if (std::pow(q, n_quad) > kQuadReach) add_flag(r, "quad-limited");
    }
    r.n_grid = n_quad;
    r.disk_radius = bc.mean_rho();
    r.is_disk = (bc.max_rho() - bc.min_rho()) <= 1e-9 * bc.max_rho();
    if (r.is_disk) add_flag(r, "disk");

    double cabs = 0.0;
    if (!surrogate && have_map) {
        r.map_residual = map.residual;
        r.analyticity_defect = map.analyticity_defect;
        r.symmetry_defect = map.symmetry_defect;
        if (map.analyticity_defect > tol.map || map.symmetry_defect > tol.map) {
            add_flag(r, "map-residual");
        }
        r.c1 = map.c1;
        r.phi_lambda1 = std::abs(scalars.phi_lambda1);
        cabs = std::abs(scalars.c);
        r.h0_lambda1 = scalars.h0_at_lambda1;
    } else {
        // Flagged stand-in: enclose the range in the disk of its outer radius.
        // The enclosure makes the stand-in a genuine upper bound (the power
        // inequality gives ||M^k|| <= 2 max_rho^k), so the 2-bound survives
        // even here; the finer invariants are voided by the flags.
        add_flag(r, "surrogate");
        cabs = 1.0 / bc.max_rho();
        if (r.lambda1 > 0.0) cabs = std::min(cabs, 0.999 / r.lambda1);
        r.h0_lambda1 = 0.0;
    }
    r.c_scalar = cabs;

    const PowerPick pick = pick_power(cabs, norms, r.d);
    r.k_star = pick.k_star;
    r.psi_lower_bound = pick.value;
    r.psi = std::max(1.0, pick.value);
    if (pick.value < 1.0) add_flag(r, "k0");
    r.two_margin = 2.0 - r.psi;
    r.bound_value = 1.0 + std::sqrt(std::max(0.0, 1.0 - r.h0_lambda1));

    {
        std::vector<Complex> cw(static_cast<std::size_t>(r.d));
        for (int j = 0; j < r.d; ++j) {
            cw[static_cast<std::size_t>(j)] = Complex(cabs * r.weights[static_cast<std::size_t>(j)], 0.0);
        }
        const ScalingWitness sw = scaling_witness(WeightVector(std::move(cw)));
        r.psi_cb_witness_cond = sw.cond;
    }

    if (!surrogate && have_map) {
        const CMatrix cm = cabs * m;
        const CMatrix f0m = matrix_power(cm, r.k_star);
        r.f0_norm = operator_norm(f0m);
        r.extremal_orthogonality = extremal_orthogonality(f0m) * r.f0_norm;

        ContourData cd = make_contour(map, n_quad);
        cd.f_values = power_f_values(n_quad, r.k_star);
        const CMatrix s0 = s0_matrix(cd, m);
        cd.f_values = power_f_values(n_quad, -r.k_star);
        const CMatrix g0 = g0_matrix(cd, m);

        r.s0_norm = operator_norm(s0);
        r.identity_residual = operator_norm(f0m - s0 + g0.adjoint());
        const CMatrix h0_eye = r.h0_lambda1 * CMatrix::Identity(r.d, r.d);
        r.h0_identity_residual = operator_norm(f0m * g0 - h0_eye);

        const GammaProfiles gp = gamma_profile(map, r.d, 64);
        for (std::size_t i = 1; i < gp.boundary_modulus.size(); ++i) {
            r.monotone_boundary_slack = std::max(
                r.monotone_boundary_slack, gp.boundary_modulus[i] - gp.boundary_modulus[i - 1]);
            r.monotone_radial_slack = std::max(
                r.monotone_radial_slack, gp.radial_ratio[i - 1] - gp.radial_ratio[i]);
        }
        r.monotone_boundary_slack = std::max(0.0, r.monotone_boundary_slack);
        r.monotone_radial_slack = std::max(0.0, r.monotone_radial_slack);
    }

    return r;
}

ChainLedger chain_check(const PsiReport& r) {
    // Tolerance ladder: flagged instances (near-normal and the other distrust
    // flags) are checked with the widened slack.
    Tolerances tol;
    ChainLedger cl;
    cl.tol_used = r.excluded() ? tol.chain_flagged : tol.chain;
    cl.margin_quadratic = (2.0 * r.psi - r.h0_lambda1) - r.psi * r.psi;
    cl.margin_sqrt = r.bound_value - r.psi;
    cl.ok = cl.margin_quadratic >= -cl.tol_used && cl.margin_sqrt >= -cl.tol_used;
    return cl;
}

Remark2Row remark2_report(double phi_angle, int n) {
    if (phi_angle < -1e-12 || phi_angle > std::numbers::pi / 2 + 1e-12) {
        throw InvalidInputError("remark2_report: angle must lie in [0, pi/2]");
    }
    Remark2Row row;
    row.phi_angle = phi_angle;

    const double sv = std::sin(phi_angle);
    const double cv = std::cos(phi_angle);
    const WeightVector wv(
        {Complex(2.0 * sv, 0.0), Complex(2.0 * cv, 0.0), Complex(0.0, 0.0)});

    const BoundaryCurve bc = boundary(build_matrix(wv), n);
    for (double rho : bc.rho) {
        row.hausdorff_to_circle = std::max(row.hausdorff_to_circle, std::abs(rho - 1.0));
    }

    const PsiValue pv = psi_disk(wv);
    row.psi_computed = pv.value;
    row.psi_formula = 2.0 * std::max({sv, cv, std::sin(2.0 * phi_angle)});
    row.deviation = std::abs(row.psi_computed - row.psi_formula);
    return row;
}

bool check_report(PsiReport& r, const Tolerances& tol) {
    r.failures.clear();
    auto fail = [&r](const std::string& what) { r.failures.push_back(what); };
    const bool excluded = r.excluded();

    if (r.psi < 1.0 - 1e-12) fail("psi below 1: " + fmt(r.psi));
    if (r.h0_lambda1 < -1e-8) fail("h0(lambda1) negative: " + fmt(r.h0_lambda1));
    if (r.psi > r.bound_value + tol.chain) {
        fail("psi " + fmt(r.psi) + " exceeds 1+sqrt(1-h0) = " + fmt(r.bound_value));
    }
    const ChainLedger cl = chain_check(r);
    if (!cl.ok) {
        fail("inequality chain violated: quadratic margin " + fmt(cl.margin_quadratic) +
             ", sqrt margin " + fmt(cl.margin_sqrt) + ", tol " + fmt(cl.tol_used));
    }

    double prod = 1.0, mn = std::numeric_limits<double>::infinity();
    for (double w : r.weights) {
        prod *= w;
        mn = std::min(mn, w);
    }
    if (mn >= 0.05 && prod >= 0.05 && r.two_margin <= 0.0) {
        fail("strict bound violated: 2 - psi = " + fmt(r.two_margin) +
             " with min|alpha| = " + fmt(mn) + ", product = " + fmt(prod));
    }

    if (!excluded) {
        if (r.psi > 2.0 + 1e-5) fail("psi exceeds 2: " + fmt(r.psi));
        if (std::abs(r.psi - r.f0_norm) > 1e-7) {
            fail("psi " + fmt(r.psi) + " != ||f0(M)|| " + fmt(r.f0_norm));
        }
        if (r.f0_norm > r.s0_norm + 1e-6) {
            fail("||f0(M)|| " + fmt(r.f0_norm) + " exceeds ||S0(M)|| " + fmt(r.s0_norm));
        }
        if (r.s0_norm > 2.0 + 1e-6) fail("||S0(M)|| exceeds 2: " + fmt(r.s0_norm));
        if (r.identity_residual > tol.quadrature) {
            fail("f0 = S0 - g0* residual " + fmt(r.identity_residual));
        }
        if (r.h0_identity_residual > tol.quadrature) {
            fail("f0*g0 = h0*I residual " + fmt(r.h0_identity_residual));
        }
        if (r.extremal_orthogonality > 1e-5 * r.psi) {
            fail("extremal pair not orthogonal: " + fmt(r.extremal_orthogonality));
        }
        const double gap = r.psi_cb_witness_cond - r.psi_lower_bound;
        if (gap > 1e-9 * r.psi) {
            fail("witness squeeze gap " + fmt(gap) + " exceeds 1e-9 * psi");
        }
        if (r.monotone_boundary_slack > 1e-9) {
            fail("boundary modulus not nonincreasing: slack " + fmt(r.monotone_boundary_slack));
        }
        if (r.monotone_radial_slack > 1e-9) {
            fail("radial ratio not nondecreasing: slack " + fmt(r.monotone_radial_slack));
        }
        if (r.symmetry_defect > tol.map) {
            fail("coefficient symmetry defect " + fmt(r.symmetry_defect));
        }
    }

    r.passed = r.failures.empty();
    return r.passed;
}

std::string report_to_json(const PsiReport& r, const Tolerances& tol) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["d"] = r.d;
    {
        nlohmann::ordered_json w = nlohmann::ordered_json::array();
        for (const Complex& v : r.weights_raw) w.push_back({v.real(), v.imag()});
        j["weights_raw"] = std::move(w);
    }
    j["weights"] = r.weights;
    j["is_normal"] = r.is_normal;
    j["is_disk"] = r.is_disk;
    j["n_grid"] = r.n_grid;
    j["k_star"] = r.k_star;
    j["psi"] = r.psi;
    j["psi_lower_bound"] = r.psi_lower_bound;
    j["psi_cb_witness_cond"] = r.psi_cb_witness_cond;
    j["h0_lambda1"] = r.h0_lambda1;
    j["s0_norm"] = r.s0_norm;
    j["f0_norm"] = r.f0_norm;
    j["extremal_orthogonality"] = r.extremal_orthogonality;
    j["identity_residual"] = r.identity_residual;
    j["h0_identity_residual"] = r.h0_identity_residual;
    j["bound_value"] = r.bound_value;
    j["two_margin"] = r.two_margin;
    j["lambda1"] = r.lambda1;
    j["phi_lambda1"] = r.phi_lambda1;
    j["c_scalar"] = r.c_scalar;
    j["c1"] = r.c1;
    j["interior_margin"] = r.interior_margin;
    j["disk_radius"] = r.disk_radius;
    j["map_residual"] = r.map_residual;
    j["analyticity_defect"] = r.analyticity_defect;
    j["symmetry_defect"] = r.symmetry_defect;
    j["monotone_boundary_slack"] = r.monotone_boundary_slack;
    j["monotone_radial_slack"] = r.monotone_radial_slack;
    j["seed"] = r.seed;
    j["instance_index"] = r.instance_index;
    j["flags"] = r.flags;
    j["failures"] = r.failures;
    j["passed"] = r.passed;
    j["tolerances"] = {{"geometry", tol.geometry},
                       {"map", tol.map},
                       {"quadrature", tol.quadrature},
                       {"chain", tol.chain},
                       {"chain_flagged", tol.chain_flagged},
                       {"near_normal_margin", tol.near_normal_margin},
                       {"surrogate_margin", tol.surrogate_margin},
                       {"max_quad_grid", tol.max_quad_grid},
                       {"max_map_grid", tol.max_map_grid}};
    return j.dump(2) + "\n";
}

std::string report_csv_header() {
    return "index,d,seed,weights,is_normal,is_disk,n_grid,k_star,psi,psi_lower_bound,"
           "psi_cb_witness_cond,h0_lambda1,s0_norm,f0_norm,extremal_orthogonality,"
           "identity_residual,h0_identity_residual,bound_value,two_margin,lambda1,"
           "c_scalar,c1,interior_margin,map_residual,analyticity_defect,symmetry_defect,"
           "monotone_boundary_slack,monotone_radial_slack,flags,passed";
}

std::string report_csv_row(const PsiReport& r) {
    std::ostringstream os;
    os << r.instance_index << ',' << r.d << ',' << r.seed << ',';
    for (std::size_t i = 0; i < r.weights.size(); ++i) {
        if (i) os << ';';
        os << fmt(r.weights[i]);
    }
    os << ',' << (r.is_normal ? 1 : 0) << ',' << (r.is_disk ? 1 : 0) << ',' << r.n_grid << ','
       << r.k_star << ',' << fmt(r.psi) << ',' << fmt(r.psi_lower_bound) << ','
       << fmt(r.psi_cb_witness_cond) << ',' << fmt(r.h0_lambda1) << ',' << fmt(r.s0_norm) << ','
       << fmt(r.f0_norm) << ',' << fmt(r.extremal_orthogonality) << ','
       << fmt(r.identity_residual) << ',' << fmt(r.h0_identity_residual) << ','
       << fmt(r.bound_value) << ',' << fmt(r.two_margin) << ',' << fmt(r.lambda1) << ','
       << fmt(r.c_scalar) << ',' << fmt(r.c1) << ',' << fmt(r.interior_margin) << ','
       << fmt(r.map_residual) << ',' << fmt(r.analyticity_defect) << ','
       << fmt(r.symmetry_defect) << ',' << fmt(r.monotone_boundary_slack) << ','
       << fmt(r.monotone_radial_slack) << ',';
    for (std::size_t i = 0; i < r.flags.size(); ++i) {
        if (i) os << ';';
        os << r.flags[i];
    }
    os << ',' << (r.passed ? 1 : 0);
    return os.str();
}

} // namespace crz
