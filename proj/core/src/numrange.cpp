#include "crz/numrange.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "crz/spectral.hpp"

namespace crz {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDiskTol = 1e-9;

// Relative spectral-tail threshold deciding whether the sampled support
// function is smooth enough for the envelope inversion. Smooth strictly
// convex boundaries measure below 1e-9 here; polygonal/kinked ones measure
// 1e-4 and larger.
constexpr double kEnvelopeTailTol = 1e-7;

/// Envelope reconstruction of the radial profile: the boundary point with
/// outward normal angle phi is z(phi) = (h(phi) + i h'(phi)) e^{i phi}, so the
/// polar radius at angle psi(phi) = phi + atan2(h', h) equals sqrt(h^2+h'^2).
/// Inverts the strictly increasing angle map psi per grid ray with a
/// bracketed Newton iteration. Returns false when the support samples are not
/// smooth enough (spectral tail, non-monotone envelope angles), in which case
/// the caller falls back to the half-plane intersection formula.
bool envelope_rho(const std::vector<double>& support, std::vector<double>& rho) {
    const int n = static_cast<int>(support.size());

    // Spectral tail of the support samples: top-quarter mode energy.
    {
        std::vector<Complex> f(support.begin(), support.end());
        spectral::fft(f);
        double tail = 0.0, total = 0.0;
        for (int k = 0; k < n; ++k) {
            const double e = std::norm(f[static_cast<std::size_t>(k)]);
            total += e;
            const int kk = std::min(k, n - k);
            if (kk > n / 4) tail += e;
        }
        if (total <= 0.0 || std::sqrt(tail / total) > kEnvelopeTailTol) return false;
    }

    const std::vector<double> dh = spectral::derivative_periodic(support);
    const std::vector<double> d2h = spectral::derivative_periodic(dh);

    // Envelope angles on the grid; strict monotonicity certifies a smooth
    // strictly convex boundary (psi' = h (h + h'') / (h^2 + h'^2) > 0).
    std::vector<double> psi(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j < n; ++j) {
        psi[static_cast<std::size_t>(j)] =
            kTwoPi * j / n + std::atan2(dh[static_cast<std::size_t>(j)],
                                        support[static_cast<std::size_t>(j)]);
    }
    psi[static_cast<std::size_t>(n)] = psi[0] + kTwoPi;
    for (int j = 0; j < n; ++j) {
        if (!(psi[static_cast<std::size_t>(j) + 1] > psi[static_cast<std::size_t>(j)])) {
            return false;
        }
    }

    const spectral::TrigInterpolant hI(support);
    const spectral::TrigInterpolant dhI(dh);
    const spectral::TrigInterpolant d2hI(d2h);
    const double gtol = 1e-13 + 1e-16 * n;

    for (int i = 0; i < n; ++i) {
        // Bring the ray angle into [psi_0, psi_0 + 2pi) and bracket it.
        double target = kTwoPi * i / n;
        while (target < psi[0]) target += kTwoPi;
        while (target >= psi[0] + kTwoPi) target -= kTwoPi;
        const auto it = std::upper_bound(psi.begin(), psi.end(), target);
        const int j = static_cast<int>(it - psi.begin()) - 1;
        double lo = kTwoPi * j / n;
        double hi = kTwoPi * (j + 1) / n;
        double glo = psi[static_cast<std::size_t>(j)] - target;
        double ghi = psi[static_cast<std::size_t>(j) + 1] - target;

        // Linear inverse interpolation start, then Newton with a bisection
        // guard; the bracket never loses the sign change.
        double phi = lo + (hi - lo) * (-glo) / (ghi - glo);
        double g = 0.0;
        for (int it2 = 0; it2 < 80; ++it2) {
            const double hv = hI(phi);
            const double dv = dhI(phi);
            g = phi + std::atan2(dv, hv) - target;
            if (std::abs(g) <= gtol) break;
            if (g > 0.0) { hi = phi; ghi = g; } else { lo = phi; glo = g; }
            if (hi - lo <= 4e-16 * (1.0 + std::abs(lo))) break;
            const double denom = hv * hv + dv * dv;
            const double dpsi = hv * (hv + d2hI(phi)) / denom;
            double next = dpsi > 0.0 ? phi - g / dpsi : lo;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            phi = next;
        }
        if (std::abs(g) > 1e-9) return false;
        rho[static_cast<std::size_t>(i)] = std::hypot(hI(phi), dhI(phi));
    }
    return true;
}
} // namespace

double BoundaryCurve::min_rho() const {
    return *std::min_element(rho.begin(), rho.end());
}

double BoundaryCurve::max_rho() const {
    return *std::max_element(rho.begin(), rho.end());
}

double BoundaryCurve::mean_rho() const {
    double s = 0.0;
    for (double v : rho) s += v;
    return s / static_cast<double>(rho.size());
}

BoundaryCurve boundary(const CMatrix& a, int n) {
    if (a.rows() == 0 || a.rows() != a.cols() || !a.allFinite()) {
        throw InvalidInputError("boundary: expected a nonempty finite square matrix");
    }
    if (n < 256 || !spectral::is_pow2(static_cast<std::size_t>(n))) {
        throw InvalidInputError("boundary: grid size must be a power of two >= 256");
    }

    BoundaryCurve c;
    c.n = n;
    c.theta.resize(static_cast<std::size_t>(n));
    c.support.resize(static_cast<std::size_t>(n));
    c.rho.resize(static_cast<std::size_t>(n));
    c.points.resize(static_cast<std::size_t>(n));

    Eigen::SelfAdjointEigenSolver<CMatrix> es;
    const CMatrix astar = a.adjoint();
    for (int i = 0; i < n; ++i) {
        const double t = kTwoPi * i / n;
        c.theta[static_cast<std::size_t>(i)] = t;
        const Complex w = std::polar(1.0, -t);
        CMatrix h = (w * a + std::conj(w) * astar) / 2.0;
        es.compute(h, Eigen::EigenvaluesOnly);
        c.support[static_cast<std::size_t>(i)] = es.eigenvalues()(a.rows() - 1);
    }

    const double hmin = *std::min_element(c.support.begin(), c.support.end());
    const double hmax = *std::max_element(c.support.begin(), c.support.end());
    if (hmax <= 0.0 || hmin <= 1e-12 * hmax) {
        std::ostringstream os;
        os << "boundary: 0 is not interior to the numerical range (degenerate or offset; "
           << "min support = " << hmin << ")";
        throw GeometryError(os.str());
    }

    // Radial profile. Smooth strictly convex support data admits the exact
    // envelope inversion; otherwise (polygonal/kinked support, e.g. normal
    // matrices) fall back to the robust intersection of supporting half
    // planes: for each ray, the nearest crossing among all half-plane
    // boundaries whose normal is within pi/2 of the ray.
    if (!envelope_rho(c.support, c.rho)) {
        const int quarter = n / 4; // |t - theta| < pi/2 window in grid steps
        for (int i = 0; i < n; ++i) {
            double r = std::numeric_limits<double>::infinity();
            for (int off = -(quarter - 1); off <= quarter - 1; ++off) {
                const int j = (i + off + n) % n;
                const double cosv = std::cos(kTwoPi * off / n);
                r = std::min(r, c.support[static_cast<std::size_t>(j)] / cosv);
            }
            c.rho[static_cast<std::size_t>(i)] = r;
        }
    }
    for (int i = 0; i < n; ++i) {
        c.points[static_cast<std::size_t>(i)] =
            std::polar(c.rho[static_cast<std::size_t>(i)], c.theta[static_cast<std::size_t>(i)]);
    }
    return c;
}

SymmetryReport symmetry_report(const BoundaryCurve& curve, int order) {
    if (order < 1) throw InvalidInputError("symmetry_report: order must be >= 1");
    const int n = curve.n;
    SymmetryReport rep;
    rep.order = order;

    double rot = 0.0;
    if (n % order == 0) {
        const int shift = n / order;
        for (int i = 0; i < n; ++i) {
            rot = std::max(rot, std::abs(curve.rho[static_cast<std::size_t>(i)] -
                                         curve.rho[static_cast<std::size_t>((i + shift) % n)]));
        }
    } else {
        const spectral::TrigInterpolant interp(curve.rho);
        for (int i = 0; i < n; ++i) {
            const double shifted = interp(curve.theta[static_cast<std::size_t>(i)] - kTwoPi / order);
            rot = std::max(rot, std::abs(curve.rho[static_cast<std::size_t>(i)] - shifted));
        }
    }
    rep.rotation_defect = rot;

    // rho(-theta_i) lands exactly on the grid at index (n - i) mod n.
    double refl = 0.0;
    for (int i = 0; i < n; ++i) {
        refl = std::max(refl, std::abs(curve.rho[static_cast<std::size_t>(i)] -
                                       curve.rho[static_cast<std::size_t>((n - i) % n)]));
    }
    rep.reflection_defect = refl;

    const double mean = curve.mean_rho();
    rep.is_disk = (curve.max_rho() - curve.min_rho()) <= kDiskTol * mean;
    rep.disk_radius = rep.is_disk ? mean : 0.0;
    return rep;
}

double hausdorff(const std::vector<Complex>& p, const std::vector<Complex>& q) {
    if (p.empty() || q.empty()) {
        throw InvalidInputError("hausdorff: point sets must be nonempty");
    }
    auto one_sided = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
        double worst = 0.0;
        for (const Complex& a : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Complex& b : to) best = std::min(best, std::abs(a - b));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(p, q), one_sided(q, p));
}

} // namespace crz
