#include "crz/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>

namespace crz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCorrTol = 1e-12;    // sup-norm target for the correspondence defect
constexpr double kFastPathEps = 0.95; // max |d log rho/dt| handled by damped iteration

using spectral::TrigInterpolant;

std::vector<double> uniform_grid(int n) {
    std::vector<double> s(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) s[static_cast<std::size_t>(j)] = kTwoPi * j / n;
    return s;
}

/// Fixed-point residual F_j = s_j + lam*K[log rho(t)]_j - t_j.
std::vector<double> correspondence_residual(const std::vector<double>& t,
                                            const std::vector<double>& s,
                                            const TrigInterpolant& logrho,
                                            double lam) {
    const std::size_t n = t.size();
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = logrho(t[j]);
    std::vector<double> v = spectral::conjugate_periodic(u);
    std::vector<double> f(n);
    for (std::size_t j = 0; j < n; ++j) f[j] = s[j] + lam * v[j] - t[j];
    return f;
}

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Full GMRES for (I - lam*K*diag(a)) x = b with the operator applied by FFT.
std::vector<double> gmres_linearized(const std::vector<double>& a, double lam,
                                     const std::vector<double>& b, int maxit, double rtol) {
    const std::size_t n = b.size();
    auto apply = [&](const std::vector<double>& v) {
        std::vector<double> av(n);
        for (std::size_t j = 0; j < n; ++j) av[j] = a[j] * v[j];
        av = spectral::conjugate_periodic(av);
        for (std::size_t j = 0; j < n; ++j) av[j] = v[j] - lam * av[j];
        return av;
    };
    auto dot = [&](const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += x[j] * y[j];
        return s;
    };

    const double beta = std::sqrt(dot(b, b));
    std::vector<double> x(n, 0.0);
    if (beta == 0.0) return x;

    const int m = std::min<int>(maxit, static_cast<int>(n));
    std::vector<std::vector<double>> v;
    v.reserve(static_cast<std::size_t>(m) + 1);
    {
        std::vector<double> v0(n);
        for (std::size_t j = 0; j < n; ++j) v0[j] = b[j] / beta;
        v.push_back(std::move(v0));
    }
    std::vector<std::vector<double>> h(static_cast<std::size_t>(m) + 1,
                                       std::vector<double>(static_cast<std::size_t>(m), 0.0));
    std::vector<double> cs(static_cast<std::size_t>(m), 0.0), sn(static_cast<std::size_t>(m), 0.0);
    std::vector<double> g(static_cast<std::size_t>(m) + 1, 0.0);
    g[0] = beta;

    int used = 0;
    for (int k = 0; k < m; ++k) {
        std::vector<double> w = apply(v[static_cast<std::size_t>(k)]);
        // Modified Gram-Schmidt with one re-orthogonalization pass.
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i <= k; ++i) {
                const double hik = dot(w, v[static_cast<std::size_t>(i)]);
                if (pass == 0) h[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = hik;
                else h[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] += hik;
                for (std::size_t j = 0; j < n; ++j) w[j] -= hik * v[static_cast<std::size_t>(i)][j];
            }
        }
        const double hnext = std::sqrt(dot(w, w));
        h[static_cast<std::size_t>(k) + 1][static_cast<std::size_t>(k)] = hnext;

        // Apply accumulated Givens rotations, then zero the subdiagonal.
        for (int i = 0; i < k; ++i) {
            const double t1 = cs[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                              sn[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(k)];
            const double t2 = -sn[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                              cs[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(k)];
            h[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = t1;
            h[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(k)] = t2;
        }
        const double denom = std::hypot(h[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)], hnext);
        if (denom == 0.0) { used = k; break; }
        cs[static_cast<std::size_t>(k)] = h[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] / denom;
        sn[static_cast<std::size_t>(k)] = hnext / denom;
        h[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = denom;
        h[static_cast<std::size_t>(k) + 1][static_cast<std::size_t>(k)] = 0.0;
        g[static_cast<std::size_t>(k) + 1] = -sn[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(k)];
        g[static_cast<std::size_t>(k)] = cs[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(k)];

        used = k + 1;
        const double resid = std::abs(g[static_cast<std::size_t>(k) + 1]);
        if (resid <= rtol * beta) break;
        if (hnext <= 1e-14 * beta) break; // happy breakdown
        std::vector<double> vk(n);
        for (std::size_t j = 0; j < n; ++j) vk[j] = w[j] / hnext;
        v.push_back(std::move(vk));
    }

    // Back substitution and solution assembly.
    std::vector<double> y(static_cast<std::size_t>(used), 0.0);
    for (int i = used - 1; i >= 0; --i) {
        double sum = g[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < used; ++j) {
            sum -= h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(j)];
        }
        y[static_cast<std::size_t>(i)] = sum / h[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < used; ++i) {
        for (std::size_t j = 0; j < n; ++j) x[j] += y[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)][j];
    }
    return x;
}

/// Inexact Newton on t - s - lam*K[log rho(t)] = 0 with Armijo backtracking.
/// Returns the achieved sup-norm defect.
double newton_correspondence(std::vector<double>& t, const std::vector<double>& s,
                             const TrigInterpolant& logrho, const TrigInterpolant& dlogrho,
                             double lam, double tol, int max_newton) {
    const std::size_t n = t.size();
    std::vector<double> f = correspondence_residual(t, s, logrho, lam);
    double res = sup_norm(f);
    for (int it = 0; it < max_newton && res > tol; ++it) {
        std::vector<double> a(n);
        for (std::size_t j = 0; j < n; ++j) a[j] = dlogrho(t[j]);
        const std::vector<double> delta = gmres_linearized(a, lam, f, 400, 1e-6);

        double alpha = 1.0;
        bool accepted = false;
        std::vector<double> tnew(n), fnew;
        for (int ls = 0; ls < 30; ++ls) {
            for (std::size_t j = 0; j < n; ++j) tnew[j] = t[j] + alpha * delta[j];
            fnew = correspondence_residual(tnew, s, logrho, lam);
            const double rnew = sup_norm(fnew);
            if (rnew <= res * (1.0 - 1e-4 * alpha) || rnew <= tol) {
                t.swap(tnew);
                f.swap(fnew);
                res = rnew;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) break; // stalled; caller inspects the defect
    }
    return res;
}

struct CorrespondenceResult {
    std::vector<double> t;
    double residual = 0.0;
};

/// Smallest forward difference of the discrete correspondence, including the
/// cyclic wrap (t[0] + 2 pi - t[n-1]). Negative values mean a fold.
double min_cyclic_diff(const std::vector<double>& t) {
    const std::size_t n = t.size();
    double mind = t[0] + kTwoPi - t[n - 1];
    for (std::size_t j = 0; j + 1 < n; ++j) mind = std::min(mind, t[j + 1] - t[j]);
    return mind;
}

/// True iff the discrete correspondence is increasing (cyclically, up to the
/// 2 pi winding). A fold means the discrete solution is unusable even if the
/// pointwise residual is small.
bool is_monotone(const std::vector<double>& t) {
    return min_cyclic_diff(t) >= -1e-12;
}

/// L2 isotonic projection (pool adjacent violators): the closest
/// nondecreasing sequence. Used to nudge a marginally folded iterate back
/// into the monotone basin before a final Newton polish.
void project_monotone(std::vector<double>& t) {
    const std::size_t n = t.size();
    std::vector<double> level(n), weight(n);
    std::vector<std::size_t> count(n);
    std::size_t m = 0;
    for (std::size_t j = 0; j < n; ++j) {
        level[m] = t[j];
        weight[m] = 1.0;
        count[m] = 1;
        ++m;
        while (m > 1 && level[m - 2] > level[m - 1]) {
            const double w = weight[m - 2] + weight[m - 1];
            level[m - 2] = (weight[m - 2] * level[m - 2] + weight[m - 1] * level[m - 1]) / w;
            weight[m - 2] = w;
            count[m - 2] += count[m - 1];
            --m;
        }
    }
    std::size_t pos = 0;
    for (std::size_t b = 0; b < m; ++b) {
        for (std::size_t i = 0; i < count[b]; ++i) t[pos++] = level[b];
    }
}

CorrespondenceResult solve_correspondence(int n, const TrigInterpolant& logrho,
                                          const TrigInterpolant& dlogrho, double eps_hat) {
    const std::vector<double> s = uniform_grid(n);
    CorrespondenceResult out;

    // Strategy ladder; accept the first converged AND monotone solution.
    // 1. Damped fixed-point iteration (the linearized operator has norm
    //    eps_hat, so this converges whenever eps_hat < 1).
    if (eps_hat <= kFastPathEps) {
        out.t = s;
        double omega = 0.5;
        double prev = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 800; ++it) {
            const std::vector<double> f = correspondence_residual(out.t, s, logrho, 1.0);
            const double res = sup_norm(f);
            if (res <= kCorrTol) {
                out.residual = res;
                if (is_monotone(out.t)) return out;
                break;
            }
            if (res > prev) omega = std::max(omega / 2.0, 1.0 / 64.0);
            prev = res;
            for (int j = 0; j < n; ++j) {
                out.t[static_cast<std::size_t>(j)] += omega * f[static_cast<std::size_t>(j)];
            }
        }
    }

    // 2./3. Newton with homotopy in the radial amplitude (log rho scaled by
    // lam), warm-starting each stage; retry with finer stages on failure.
    //
    // Crowded curves can make the tracked discrete branch fold (the minimal
    // forward difference of t slides through zero as lam grows) even though
    // the pointwise defect converges. A fold that survives an isotonic
    // projection plus re-polish is structural at this grid size: finer lam
    // stages land on the identical folded solution, so give up immediately
    // rather than grind through the rest of the ladder.
    const bool debug = std::getenv("CRZ_CORR_DEBUG") != nullptr;
    constexpr double kDecisiveFold = -1e-6;
    double res = std::numeric_limits<double>::infinity();
    for (const double factor : {1.25, 1.06}) {
        out.t = s;
        std::vector<double> lams;
        double lam = std::min(kFastPathEps / std::max(eps_hat, 1e-12), 0.8);
        while (lam < 1.0) { lams.push_back(lam); lam *= factor; }
        lams.push_back(1.0);
        for (double stage : lams) {
            const double tol = (stage == 1.0) ? kCorrTol : 1e-9;
            res = newton_correspondence(out.t, s, logrho, dlogrho, stage, tol, 50);
            double mind = min_cyclic_diff(out.t);
            if (debug) {
                std::fprintf(stderr, "  corr: factor=%.2f lam=%.4f res=%.3e mind=%+.3e n=%d\n",
                             factor, stage, res, mind, n);
            }
            if (res <= std::max(tol, 1e-8) && mind < kDecisiveFold) {
                project_monotone(out.t);
                res = newton_correspondence(out.t, s, logrho, dlogrho, stage, tol, 25);
                mind = min_cyclic_diff(out.t);
                if (debug) {
                    std::fprintf(stderr, "  corr: projected re-polish res=%.3e mind=%+.3e\n",
                                 res, mind);
                }
                if (res <= std::max(tol, 1e-8) && mind < kDecisiveFold) {
                    throw MapFailureError(
                        "solve_map: boundary correspondence is not monotone", res);
                }
            }
        }
        out.residual = res;
        if (res <= kCorrTol) {
            if (is_monotone(out.t)) return out;
            // Marginal fold at full amplitude: one projected re-polish.
            project_monotone(out.t);
            res = newton_correspondence(out.t, s, logrho, dlogrho, 1.0, kCorrTol, 25);
            out.residual = res;
            if (res <= kCorrTol && is_monotone(out.t)) return out;
        }
    }

    if (res > kCorrTol) {
        std::ostringstream os;
        os << "solve_map: correspondence defect " << out.residual << " did not reach " << kCorrTol;
        throw MapFailureError(os.str(), out.residual);
    }
    throw MapFailureError("solve_map: boundary correspondence is not monotone", out.residual);
}

} // namespace

DiskMap solve_map(const BoundaryCurve& bc, int d) {
    if (d < 1) throw InvalidInputError("solve_map: symmetry order must be >= 1");
    const int n = bc.n;
    if (n < 256 || !spectral::is_pow2(static_cast<std::size_t>(n))) {
        throw InvalidInputError("solve_map: boundary grid must be a power of two >= 256");
    }

    std::vector<double> logrho(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        logrho[static_cast<std::size_t>(j)] = std::log(bc.rho[static_cast<std::size_t>(j)]);
    }

    DiskMap map;
    map.n = n;
    map.symmetry_order = d;
    map.log_rho = TrigInterpolant(logrho);
    const TrigInterpolant dlogrho(spectral::derivative_periodic(logrho));

    double eps_hat = 0.0;
    {
        const std::vector<double> dl = spectral::derivative_periodic(logrho);
        for (double v : dl) eps_hat = std::max(eps_hat, std::abs(v));
    }

    CorrespondenceResult corr = solve_correspondence(n, map.log_rho, dlogrho, eps_hat);
    map.t_of_s = std::move(corr.t);
    map.residual = corr.residual;

    auto build_nodes = [&](const std::vector<double>& t) {
        std::vector<Complex> nodes(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const double tj = t[static_cast<std::size_t>(j)];
            nodes[static_cast<std::size_t>(j)] = std::polar(std::exp(map.log_rho(tj)), tj);
        }
        return nodes;
    };
    map.nodes = build_nodes(map.t_of_s);

    auto transform_coeffs = [&](const std::vector<Complex>& nodes) {
        std::vector<Complex> f = nodes;
        spectral::fft(f);
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& v : f) v *= inv;
        return f;
    };
    std::vector<Complex> full = transform_coeffs(map.nodes);

    // Rotate the disk variable so that c1 is real positive. The zero-mean
    // normalization of the conjugation operator keeps arg(c1) at roundoff
    // already; resample only if a visible rotation is ever needed.
    const double eta = -std::arg(full[1]);
    if (std::abs(eta) > 1e-12) {
        const std::vector<double> s = uniform_grid(n);
        std::vector<double> shift(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            shift[static_cast<std::size_t>(j)] =
                map.t_of_s[static_cast<std::size_t>(j)] - s[static_cast<std::size_t>(j)];
        }
        const TrigInterpolant shift_interp(shift);
        for (int j = 0; j < n; ++j) {
            const double sj = s[static_cast<std::size_t>(j)] + eta;
            map.t_of_s[static_cast<std::size_t>(j)] = sj + shift_interp(sj) - eta;
        }
        // t_of_s now holds t(s + eta) - eta + eta = t against the rotated
        // variable; rebuild nodes and coefficients from it.
        for (int j = 0; j < n; ++j) map.t_of_s[static_cast<std::size_t>(j)] += eta;
        map.nodes = build_nodes(map.t_of_s);
        full = transform_coeffs(map.nodes);
    }

    map.coeffs.assign(full.begin(), full.begin() + n / 2 + 1);
    map.c1 = std::abs(map.coeffs[1]);
    map.coeffs[1] = Complex(map.c1, 0.0);

    double neg_energy = 0.0, total_energy = 0.0;
    for (int k = 0; k < n; ++k) {
        const double e = std::norm(full[static_cast<std::size_t>(k)]);
        total_energy += e;
        if (k > n / 2) neg_energy += e;
    }
    map.analyticity_defect = total_energy > 0.0 ? std::sqrt(neg_energy / total_energy) : 0.0;

    double cmax = 0.0, off = 0.0;
    for (int k = 0; k <= n / 2; ++k) {
        const double m = std::abs(map.coeffs[static_cast<std::size_t>(k)]);
        cmax = std::max(cmax, m);
        if (k % d != 1 % d) off = std::max(off, m);
    }
    map.symmetry_defect = cmax > 0.0 ? off / cmax : 0.0;

    std::vector<double> shift(static_cast<std::size_t>(n));
    const std::vector<double> s = uniform_grid(n);
    for (int j = 0; j < n; ++j) {
        shift[static_cast<std::size_t>(j)] =
            map.t_of_s[static_cast<std::size_t>(j)] - s[static_cast<std::size_t>(j)];
    }
    map.t_shift = TrigInterpolant(shift);
    return map;
}

Complex eval_sigma(const DiskMap& map, Complex w) {
    const double r = std::abs(w);
    if (r > 1.0 + 1e-12) {
        throw DomainError("eval_sigma: |w| > 1");
    }
    if (r >= 1.0 - 1e-12) {
        const double sv = std::arg(w);
        const double t = sv + map.t_shift(sv);
        return std::polar(std::exp(map.log_rho(t)), t);
    }
    Complex acc(0.0, 0.0);
    for (std::size_t k = map.coeffs.size(); k-- > 0;) {
        acc = acc * w + map.coeffs[k];
    }
    return acc;
}

Complex eval_sigma_prime(const DiskMap& map, Complex w) {
    if (std::abs(w) > 1.0 + 1e-12) {
        throw DomainError("eval_sigma_prime: |w| > 1");
    }
    Complex acc(0.0, 0.0);
    for (std::size_t k = map.coeffs.size(); k-- > 1;) {
        acc = acc * w + static_cast<double>(k) * map.coeffs[k];
    }
    return acc;
}

namespace {

bool newton_invert(const DiskMap& map, Complex z, Complex w0, double tol, Complex& out) {
    Complex w = w0;
    for (int it = 0; it < 80; ++it) {
        const Complex f = eval_sigma(map, w) - z;
        if (std::abs(f) <= tol) { out = w; return true; }
        const Complex dp = eval_sigma_prime(map, w);
        if (std::abs(dp) < 1e-300) return false;
        Complex step = f / dp;
        Complex wn = w - step;
        int guard = 0;
        while (std::abs(wn) >= 1.0 - 1e-13 && guard++ < 50) {
            step *= 0.5;
            wn = w - step;
        }
        if (guard >= 50) return false;
        w = wn;
    }
    return false;
}

} // namespace

double boundary_preimage_angle(const DiskMap& map, double angle) {
    double lo = angle - std::numbers::pi, hi = angle + std::numbers::pi;
    for (int it = 0; it < 120; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double tv = mid + map.t_shift(mid);
        if (tv < angle) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

Complex eval_phi(const DiskMap& map, Complex z) {
    if (std::abs(z) == 0.0) return Complex(0.0, 0.0);
    const double targ = std::arg(z);
    const double rho_t = std::exp(map.log_rho(targ));
    const double margin = 1.0 - std::abs(z) / rho_t;
    if (margin < 1e-6) {
        std::ostringstream os;
        os << "eval_phi: z has polar margin " << margin << " < 1e-6, not strictly interior";
        throw DomainError(os.str());
    }
    const double tol = 1e-12 * std::max(1.0, std::abs(z));

    Complex w;
    Complex w0 = z / map.c1;
    if (std::abs(w0) > 0.9) w0 *= 0.9 / std::abs(w0);
    if (newton_invert(map, z, w0, tol, w)) return w;

    // Boundary-guided start: invert the correspondence at arg z, then scale
    // radially.
    const double s0 = boundary_preimage_angle(map, targ);
    w0 = std::polar(std::min(std::abs(z) / rho_t, 1.0 - 1e-6), s0);
    if (newton_invert(map, z, w0, tol, w)) return w;

    std::ostringstream os;
    os << "eval_phi: Newton iteration failed for z = (" << z.real() << ", " << z.imag()
       << "), margin " << margin;
    throw InversionError(os.str());
}

MapScalars map_scalars(const DiskMap& map, const WeightVector& wv) {
    MapScalars ms;
    const std::vector<Complex> lam = eigenvalues(wv);
    ms.lambda1 = lam[0];
    ms.beta0 = Complex(map.c1, 0.0);

    if (std::abs(ms.lambda1) > 0.0) {
        ms.phi_lambda1 = eval_phi(map, ms.lambda1);
        ms.c = ms.phi_lambda1 / ms.lambda1;
        ms.beta_at_lambda1 = ms.lambda1 / ms.phi_lambda1;
    } else {
        // W is a disk (every zero-product shift is a direct sum of nilpotent
        // chains); beta is constant and phi scales by 1/c1.
        ms.phi_lambda1 = Complex(0.0, 0.0);
        ms.c = Complex(1.0 / map.c1, 0.0);
        ms.beta_at_lambda1 = ms.beta0;
    }

    const std::vector<double> norms = power_norms(wv);
    const double cabs = std::abs(ms.c);
    int kbest = 1;
    double vbest = -1.0;
    for (int k = 1; k < wv.d(); ++k) {
        const double v = std::pow(cabs, k) * norms[static_cast<std::size_t>(k)];
        if (v > vbest) { vbest = v; kbest = k; }
    }
    ms.k_star = kbest;

    const Complex ratio = ms.beta0 / ms.beta_at_lambda1;
    ms.h0_at_lambda1 = 1.0 - std::pow(ratio, ms.k_star).real();
    return ms;
}

GammaProfiles gamma_profile(const DiskMap& map, int d, int m) {
    if (d < 1 || m < 2) throw InvalidInputError("gamma_profile: need d >= 1 and m >= 2");
    GammaProfiles gp;
    gp.angles.resize(static_cast<std::size_t>(m));
    gp.boundary_modulus.resize(static_cast<std::size_t>(m));
    gp.radii.resize(static_cast<std::size_t>(m));
    gp.radial_ratio.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const double sv = (std::numbers::pi / d) * i / (m - 1);
        const double t = sv + map.t_shift(sv);
        gp.angles[static_cast<std::size_t>(i)] = sv;
        gp.boundary_modulus[static_cast<std::size_t>(i)] = std::exp(map.log_rho(t));

        const double x = static_cast<double>(i + 1) / (m + 1);
        gp.radii[static_cast<std::size_t>(i)] = x;
        gp.radial_ratio[static_cast<std::size_t>(i)] = std::abs(eval_sigma(map, Complex(x, 0.0))) / x;
    }
    return gp;
}

} // namespace crz
