#include "crz/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include <Eigen/LU>

#include "crz/conformal.hpp"
#include "crz/errors.hpp"
#include "crz/funcalc.hpp"
#include "crz/numrange.hpp"
#include "crz/rand.hpp"

namespace crz {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

void require_zeros_inside(const BlaschkeProduct& b) {
    for (const Complex& z : b.zeros) {
        if (!(std::abs(z) < 1.0 - 1e-12)) {
            throw InvalidInputError("Blaschke zero not strictly inside the unit disk");
        }
    }
}

/// Smooth surjection of the plane onto the open unit disk.
Complex plane_to_disk(double re, double im) {
    const Complex w(re, im);
    return w / (1.0 + std::abs(w));
}

Complex disk_to_plane(Complex z) {
    return z / (1.0 - std::abs(z));
}

std::vector<Complex> params_to_zeros(const std::vector<double>& p) {
    std::vector<Complex> zeros(p.size() / 2);
    for (std::size_t j = 0; j < zeros.size(); ++j) {
        zeros[j] = plane_to_disk(p[2 * j], p[2 * j + 1]);
    }
    return zeros;
}

/// Derivative-free simplex minimization (reflection/expansion/contraction/
/// shrink), deterministic for a fixed start. Every trial point goes through
/// `f`, so the caller can track a global best there. Returns true when the
/// f-spread dropped below ftol within the budget.
bool nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                 const std::vector<double>& x0, double step, double ftol, int max_evals) {
    const std::size_t p = x0.size();
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };

    std::vector<std::vector<double>> xs(p + 1, x0);
    std::vector<double> fs(p + 1);
    for (std::size_t i = 1; i <= p; ++i) xs[i][i - 1] += step;
    for (std::size_t i = 0; i <= p; ++i) fs[i] = eval(xs[i]);

    std::vector<std::size_t> order(p + 1);
    while (true) {
        for (std::size_t i = 0; i <= p; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
        const std::size_t best = order[0], worst = order[p], second = order[p - 1];
        if (fs[worst] - fs[best] <= ftol) return true;
        if (evals >= max_evals) return false;

        std::vector<double> centroid(p, 0.0);
        for (std::size_t i = 0; i <= p; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < p; ++k) centroid[k] += xs[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(p);

        auto along = [&](double coef) {
            std::vector<double> x(p);
            for (std::size_t k = 0; k < p; ++k) {
                x[k] = centroid[k] + coef * (centroid[k] - xs[worst][k]);
            }
            return x;
        };

        const std::vector<double> xr = along(1.0);
        const double fr = eval(xr);
        if (fr < fs[best]) {
            const std::vector<double> xe = along(2.0);
            const double fe = eval(xe);
            if (fe < fr) { xs[worst] = xe; fs[worst] = fe; }
            else { xs[worst] = xr; fs[worst] = fr; }
            continue;
        }
        if (fr < fs[second]) {
            xs[worst] = xr;
            fs[worst] = fr;
            continue;
        }
        const bool outside = fr < fs[worst];
        const std::vector<double> xc = along(outside ? 0.5 : -0.5);
        const double fc = eval(xc);
        if ((outside && fc <= fr) || (!outside && fc < fs[worst])) {
            xs[worst] = xc;
            fs[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= p; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < p; ++k) {
                xs[i][k] = xs[best][k] + 0.5 * (xs[i][k] - xs[best][k]);
            }
            fs[i] = eval(xs[i]);
        }
    }
}

} // namespace

Family4Params::Family4Params(double a_value) : a(a_value) {
    if (a < 0.0 || !std::isfinite(a)) {
        throw InvalidInputError("family parameter a must be finite and >= 0");
    }
    c = std::sqrt(2.0 * a * a / (2.0 + a * a));
}

Complex eval_scalar(const BlaschkeProduct& b, Complex z) {
    require_zeros_inside(b);
    Complex out = b.rotation;
    for (const Complex& a : b.zeros) {
        out *= (z - a) / (1.0 - std::conj(a) * z);
    }
    return out;
}

CMatrix eval_on_matrix(const BlaschkeProduct& b, const CMatrix& a) {
    require_zeros_inside(b);
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw InvalidInputError("eval_on_matrix: matrix must be square and nonempty");
    }
    const Eigen::Index d = a.rows();
    const CMatrix eye = CMatrix::Identity(d, d);
    CMatrix out = b.rotation * eye;
    for (const Complex& zero : b.zeros) {
        const CMatrix numer = a - zero * eye;
        const CMatrix denom = eye - std::conj(zero) * a;
        const Eigen::PartialPivLU<CMatrix> lu(denom);
        // Numerator and denominator commute (both are polynomials in a), so
        // the left solve realizes the two-sided factor.
        const CMatrix factor = lu.solve(numer);
        const double scale = std::max(1.0, numer.norm());
        if (!factor.allFinite() || (denom * factor - numer).norm() > 1e-8 * scale) {
            throw SingularFactorError("Blaschke factor inversion failed: 1/conj(zero) "
                                      "meets the spectrum");
        }
        out = out * factor;
    }
    return out;
}

double boundary_modulus_defect(const BlaschkeProduct& b, int grid) {
    if (grid < 1) throw InvalidInputError("boundary_modulus_defect: grid must be positive");
    double defect = 0.0;
    for (int j = 0; j < grid; ++j) {
        const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * j / grid);
        defect = std::max(defect, std::abs(std::abs(eval_scalar(b, z)) - 1.0));
    }
    return defect;
}

MaximizeResult maximize(const CMatrix& a, int max_degree, int budget, std::uint64_t seed) {
    if (a.rows() != a.cols() || a.rows() < 2) {
        throw InvalidInputError("maximize: matrix must be square, dimension >= 2");
    }
    if (max_degree < 1 || max_degree > static_cast<int>(a.rows()) - 1) {
        throw InvalidInputError("maximize: max_degree must lie in [1, dim-1]");
    }
    if (budget < 0) throw InvalidInputError("maximize: budget must be >= 0");

    MaximizeResult res;
    {
        CMatrix pw = a;
        for (int k = 1; k <= max_degree; ++k) {
            const double nv = operator_norm(pw);
            if (nv > res.max_power_value) {
                res.max_power_value = nv;
                res.max_power_k = k;
            }
            if (k < max_degree) pw = pw * a;
        }
    }
    res.value = res.max_power_value;
    res.best.zeros.assign(static_cast<std::size_t>(res.max_power_k), Complex(0.0, 0.0));

    for (int m = 1; m <= max_degree; ++m) {
        auto objective = [&](const std::vector<double>& p) {
            BlaschkeProduct b;
            b.zeros = params_to_zeros(p);
            double nv;
            try {
                nv = operator_norm(eval_on_matrix(b, a));
            } catch (const Error&) {
                return 1e6; // outside the usable region; steer away
            }
            if (nv > res.value) {
                res.value = nv;
                res.best = b;
            }
            return -nv;
        };

        // Start 0: the power product z^m. Starts 1..budget: seeded draws,
        // keyed by (m, start) only, so growing the budget keeps old starts.
        for (int start = 0; start <= budget; ++start) {
            std::vector<double> x0(2 * static_cast<std::size_t>(m), 0.0);
            if (start > 0) {
                std::mt19937_64 gen(rng::mix(seed, static_cast<std::uint64_t>(m),
                                             static_cast<std::uint64_t>(start)));
                for (int j = 0; j < m; ++j) {
                    const double r = 0.8 * std::sqrt(rng::canonical(gen));
                    const double ang = 2.0 * std::numbers::pi * rng::canonical(gen);
                    const Complex w = disk_to_plane(std::polar(r, ang));
                    x0[2 * static_cast<std::size_t>(j)] = w.real();
                    x0[2 * static_cast<std::size_t>(j) + 1] = w.imag();
                }
            }
            if (!nelder_mead(objective, x0, 0.25, 1e-10, 2000)) {
                res.budget_exhausted = true;
            }
        }
    }
    return res;
}

CMatrix build_family4(const Family4Params& p) {
    CMatrix a = CMatrix::Zero(4, 4);
    const Complex i(0.0, 1.0);
    a(0, 0) = 1.0;  a(0, 1) = p.a;      a(0, 3) = p.c;
    a(1, 1) = i;    a(1, 2) = i * p.c;
    a(2, 2) = -1.0; a(2, 3) = -p.a;
    a(3, 3) = -i;
    return a;
}

std::vector<Family4Row> family4_experiment(const std::vector<double>& a_grid, int n,
                                           int budget, std::uint64_t seed) {
    std::vector<Family4Row> rows;
    rows.reserve(a_grid.size());
    for (std::size_t idx = 0; idx < a_grid.size(); ++idx) {
        Family4Row row;
        try {
            const Family4Params p(a_grid[idx]);
            row.a = p.a;
            row.c = p.c;
            const CMatrix a4 = build_family4(p);

            const BoundaryCurve bc = boundary(a4, n);
            row.rotation_defect = symmetry_report(bc, 4).rotation_defect;

            const DiskMap map = solve_map(bc, 4);
            Complex c_scalar;
            if (p.a == 0.0) {
                // Normal member: the eigenvalues are the corners of the
                // boundary, so phi is evaluated through the boundary
                // correspondence and the calculus acts spectrally
                // (the matrix is diagonal).
                c_scalar = std::polar(1.0, boundary_preimage_angle(map, 0.0));
                double resid = 0.0;
                for (int j = 0; j < 4; ++j) {
                    const double ang = j * std::numbers::pi / 2.0;
                    const Complex lam = std::polar(1.0, ang);
                    const Complex phi_lam =
                        std::polar(1.0, boundary_preimage_angle(map, ang));
                    resid = std::max(resid, std::abs(phi_lam - c_scalar * lam));
                }
                row.phi_identity_residual = resid;
            } else {
                c_scalar = eval_phi(map, Complex(1.0, 0.0));
                ContourData cd = make_contour(map);
                cd.f_values = power_f_values(map.n, 1);
                const CMatrix phi_a = cauchy_apply(cd, a4);
                row.phi_identity_residual = operator_norm(phi_a - c_scalar * a4);
            }

            const CMatrix ca = c_scalar * a4;
            const MaximizeResult mr =
                maximize(ca, 3, budget, rng::mix(seed, 0xFA4, static_cast<std::uint64_t>(idx)));
            row.max_power_k = mr.max_power_k;
            row.max_power_value = mr.max_power_value;
            row.max_blaschke_value = mr.value;
            row.gap = mr.value - mr.max_power_value;
            row.zeros = mr.best.zeros;
            row.ok = true;
        } catch (const std::exception& e) {
            row.a = a_grid[idx];
            row.ok = false;
            row.error = e.what();
            std::replace(row.error.begin(), row.error.end(), ',', ';');
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string family4_csv_header() {
    return "a,c,rotation_defect,phi_identity_residual,max_power_k,max_power_value,"
           "max_blaschke_value,gap,zeros,ok,error";
}

std::string family4_csv_row(const Family4Row& row) {
    std::ostringstream os;
    os << fmt(row.a) << ',' << fmt(row.c) << ',' << fmt(row.rotation_defect) << ','
       << fmt(row.phi_identity_residual) << ',' << row.max_power_k << ','
       << fmt(row.max_power_value) << ',' << fmt(row.max_blaschke_value) << ','
       << fmt(row.gap) << ',';
    for (std::size_t i = 0; i < row.zeros.size(); ++i) {
        if (i) os << ';';
        os << fmt(row.zeros[i].real()) << ':' << fmt(row.zeros[i].imag());
    }
    os << ',' << (row.ok ? 1 : 0) << ',' << row.error;
    return os.str();
}

} // namespace crz
