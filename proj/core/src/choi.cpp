#include "crz/choi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace crz {

namespace {
constexpr double kNormalTol = 1e-12;
// Slack for the prod |alpha| <= 1 precondition: products assembled from
// rescaled draws or from |phi(lambda_1)| can land a few ulps above 1.
constexpr double kProductTol = 1e-12;
} // namespace

WeightVector::WeightVector(std::vector<Complex> weights) : w_(std::move(weights)) {
    if (w_.size() < 2) {
        throw InvalidInputError("WeightVector: need at least two weights");
    }
    for (const Complex& a : w_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw InvalidInputError("WeightVector: weights must be finite");
        }
    }
}

Complex WeightVector::product() const {
    Complex p(1.0, 0.0);
    for (const Complex& a : w_) p *= a;
    return p;
}

double WeightVector::min_abs() const {
    double m = std::numeric_limits<double>::infinity();
    for (const Complex& a : w_) m = std::min(m, std::abs(a));
    return m;
}

double WeightVector::max_abs() const {
    double m = 0.0;
    for (const Complex& a : w_) m = std::max(m, std::abs(a));
    return m;
}

CMatrix build_matrix(const WeightVector& wv) {
    const int d = wv.d();
    CMatrix m = CMatrix::Zero(d, d);
    for (int c = 1; c < d; ++c) m(c - 1, c) = wv[c];
    m(d - 1, 0) = wv[0];
    return m;
}

bool is_normal_weights(const WeightVector& wv) {
    return wv.max_abs() - wv.min_abs() <= kNormalTol;
}

Canonicalization canonicalize(const WeightVector& wv) {
    const int d = wv.d();
    Canonicalization out;
    out.magnitudes.resize(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) out.magnitudes[static_cast<std::size_t>(j)] = std::abs(wv[j]);
    out.theta = std::arg(wv.product()) / d;

    // U = diag(e^{i psi}). Entry alpha_c sits between basis vectors c-1 and c
    // (corner: between d-1 and 0), and conjugation multiplies it by
    // e^{i(psi_c - psi_{c-1})}. Zero weights impose no constraint, so cut the
    // cycle at a zero edge when one exists; otherwise the corner constraint is
    // consistent automatically by the choice of theta.
    std::vector<double> psi(static_cast<std::size_t>(d), 0.0);
    int cut = 0;
    for (int e = 0; e < d; ++e) {
        if (std::abs(wv[e]) == 0.0) { cut = e; break; }
    }
    for (int step = 1; step < d; ++step) {
        const int v = (cut + step) % d;
        const int prev = (v + d - 1) % d;
        if (std::abs(wv[v]) != 0.0) {
            psi[static_cast<std::size_t>(v)] =
                psi[static_cast<std::size_t>(prev)] + out.theta - std::arg(wv[v]);
        } else {
            psi[static_cast<std::size_t>(v)] = psi[static_cast<std::size_t>(prev)];
        }
    }

    out.u.resize(d);
    for (int j = 0; j < d; ++j) {
        out.u(j) = std::polar(1.0, psi[static_cast<std::size_t>(j)]);
    }
    return out;
}

std::vector<Complex> eigenvalues(const WeightVector& wv) {
    const int d = wv.d();
    const Complex p = wv.product();
    std::vector<Complex> lam(static_cast<std::size_t>(d), Complex(0.0, 0.0));
    if (std::abs(p) == 0.0) return lam;
    const double r = std::pow(std::abs(p), 1.0 / d);
    const double phase = std::arg(p) / d;
    for (int j = 0; j < d; ++j) {
        lam[static_cast<std::size_t>(j)] =
            std::polar(r, phase + 2.0 * std::numbers::pi * j / d);
    }
    return lam;
}

PartialProducts partial_products(const WeightVector& wv) {
    const int d = wv.d();
    PartialProducts pp;
    pp.d = d;
    pp.pi.assign(static_cast<std::size_t>(d),
                 std::vector<Complex>(static_cast<std::size_t>(d), Complex(1.0, 0.0)));
    for (int j = 0; j < d; ++j) {
        Complex acc(1.0, 0.0);
        for (int k = 1; k < d; ++k) {
            acc *= wv[(j + k - 1) % d]; // window alpha_{j+1} .. alpha_{j+k}, 1-based
            pp.pi[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = acc;
        }
    }
    return pp;
}

std::vector<double> power_norms(const WeightVector& wv) {
    const PartialProducts pp = partial_products(wv);
    const int d = wv.d();
    std::vector<double> norms(static_cast<std::size_t>(d), 0.0);
    for (int k = 0; k < d; ++k) {
        double m = 0.0;
        for (int j = 0; j < d; ++j) {
            m = std::max(m, std::abs(pp.pi[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]));
        }
        norms[static_cast<std::size_t>(k)] = m;
    }
    return norms;
}

ScalingWitness scaling_witness(const WeightVector& wv) {
    const double prod = std::abs(wv.product());
    if (prod > 1.0 + kProductTol) {
        std::ostringstream os;
        os << "scaling_witness: prod |alpha| = " << prod << " exceeds 1, no bounded witness";
        throw UnboundedPsiError(os.str());
    }
    const PartialProducts pp = partial_products(wv);
    const int d = wv.d();
    ScalingWitness sw;
    sw.x.resize(static_cast<std::size_t>(d));
    double xmax = 0.0;
    for (int j = 0; j < d; ++j) {
        double xj = 1.0;
        for (int k = 1; k < d; ++k) {
            xj = std::max(xj, std::abs(pp.pi[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]));
        }
        sw.x[static_cast<std::size_t>(j)] = xj;
        xmax = std::max(xmax, xj);
    }
    // min_j x_j = 1 whenever prod <= 1: the slot right after a maximal window
    // cannot start any window of product > 1.
    sw.cond = xmax;
    return sw;
}

RVector witness_diagonal(const ScalingWitness& sw) {
    const int d = static_cast<int>(sw.x.size());
    RVector y(d);
    // Conjugating entry alpha_c (between rows c-1 and c) by Y multiplies it by
    // y_c / y_{c-1}; setting y_r = x[(r+1) mod d] makes every conjugated entry
    // a ratio of cyclic window products bounded by 1.
    for (int i = 0; i < d; ++i) y(i) = sw.x[static_cast<std::size_t>((i + 1) % d)];
    return y;
}

PsiValue psi_disk(const WeightVector& wv) {
    PsiValue out;
    if (std::abs(wv.product()) > 1.0 + kProductTol) {
        out.finite = false;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    const std::vector<double> norms = power_norms(wv);
    out.value = 1.0;
    for (double v : norms) out.value = std::max(out.value, v);
    return out;
}

} // namespace crz
