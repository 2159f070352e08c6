#include "crz/funcalc.hpp"

#include <numbers>

#include "crz/errors.hpp"
#include "crz/spectral.hpp"

namespace crz {

namespace {

void require_contour_matrix(const ContourData& cd, const CMatrix& a) {
    if (cd.nodes.empty() || cd.nodes.size() != cd.dnodes.size() ||
        cd.nodes.size() != cd.f_values.size()) {
        throw InvalidInputError("contour quadrature: node/derivative/value sizes disagree");
    }
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw InvalidInputError("contour quadrature: matrix must be square and nonempty");
    }
}

} // namespace

ContourData make_contour(const DiskMap& map) {
    return make_contour(map, map.n);
}

ContourData make_contour(const DiskMap& map, int m) {
    if (m <= 0) throw InvalidInputError("make_contour: node count must be positive");
    ContourData cd;
    if (m == map.n) {
        cd.nodes = map.nodes;
    } else {
        cd.nodes.resize(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            const double s = 2.0 * std::numbers::pi * j / m;
            const double t = s + map.t_shift(s);
            cd.nodes[static_cast<std::size_t>(j)] = std::polar(std::exp(map.log_rho(t)), t);
        }
    }
    cd.dnodes = spectral::derivative_periodic(cd.nodes);
    cd.f_values.assign(cd.nodes.size(), Complex(1.0, 0.0));
    return cd;
}

std::vector<Complex> power_f_values(int n, int k) {
    if (n <= 0) throw InvalidInputError("power_f_values: n must be positive");
    std::vector<Complex> f(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        f[static_cast<std::size_t>(j)] = std::polar(1.0, k * (2.0 * std::numbers::pi * j / n));
    }
    return f;
}

CMatrix cauchy_apply(const ContourData& cd, const CMatrix& a) {
    require_contour_matrix(cd, a);
    const Eigen::Index d = a.rows();
    const std::size_t n = cd.nodes.size();
    const CMatrix eye = CMatrix::Identity(d, d);
    CMatrix sum = CMatrix::Zero(d, d);
    for (std::size_t j = 0; j < n; ++j) {
        const CMatrix res = solve_shifted(a, cd.nodes[j], eye);
        sum += (cd.f_values[j] * cd.dnodes[j]) * res;
    }
    // (1/2pi i) * (2pi/n) = 1/(i n) = -i/n.
    return sum * (Complex(0.0, -1.0) / static_cast<double>(n));
}

CMatrix g0_matrix(const ContourData& cd, const CMatrix& a) {
    return cauchy_apply(cd, a);
}

CMatrix s0_matrix(const ContourData& cd, const CMatrix& a) {
    require_contour_matrix(cd, a);
    const Eigen::Index d = a.rows();
    const std::size_t n = cd.nodes.size();
    const CMatrix eye = CMatrix::Identity(d, d);
    const CMatrix astar = a.adjoint();
    CMatrix sum = CMatrix::Zero(d, d);
    for (std::size_t j = 0; j < n; ++j) {
        const CMatrix res = solve_shifted(a, cd.nodes[j], eye);
        const CMatrix res_conj = solve_shifted(astar, std::conj(cd.nodes[j]), eye);
        sum += cd.f_values[j] * (cd.dnodes[j] * res - std::conj(cd.dnodes[j]) * res_conj);
    }
    return sum * (Complex(0.0, -1.0) / static_cast<double>(n));
}

} // namespace crz
