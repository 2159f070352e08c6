#include "crz/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "crz/blaschke.hpp"
#include "crz/choi.hpp"
#include "crz/conformal.hpp"
#include "crz/errors.hpp"
#include "crz/numrange.hpp"
#include "crz/rand.hpp"

namespace crz {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

std::filesystem::path resolve_output(const RunConfig& cfg) {
    if (!cfg.out_path.empty()) return std::filesystem::path(cfg.out_path);
    std::filesystem::path dir;
    if (!cfg.out_dir.empty()) {
        dir = cfg.out_dir;
    } else if (const char* env = std::getenv("CRZX_OUT_DIR")) {
        dir = env;
    } else {
        dir = ".";
    }
    return dir / default_output_name(cfg);
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp.string() + " for writing");
        os << content;
        if (!os.flush()) throw Error("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error("cannot rename " + tmp.string() + " to " + path.string());
}

WeightVector require_weights(const RunConfig& cfg) {
    if (cfg.weights.empty()) {
        throw InvalidInputError("command '" + cfg.command + "' requires --weights");
    }
    return WeightVector(cfg.weights);
}

int run_psi(const RunConfig& cfg, const std::filesystem::path& path) {
    const WeightVector wv = require_weights(cfg);
    PsiReport r = verify_choi(wv, cfg.n, cfg.tol);
    check_report(r, cfg.tol);
    std::string content;
    if (cfg.format == "csv") {
        content = report_csv_header() + "\n" + report_csv_row(r) + "\n";
    } else {
        content = report_to_json(r, cfg.tol);
    }
    atomic_write(path, content);
    if (!r.passed) {
        std::fprintf(stderr, "crzx psi: %zu invariant failure(s); report at %s\n",
                     r.failures.size(), path.string().c_str());
        for (const std::string& f : r.failures) std::fprintf(stderr, "  %s\n", f.c_str());
        return 1;
    }
    return 0;
}

int run_sweep(const RunConfig& cfg, const std::filesystem::path& path) {
    if (cfg.d < 2) throw InvalidInputError("sweep: --d must be >= 2");
    if (cfg.count < 1) throw InvalidInputError("sweep: --count must be >= 1");
    std::ostringstream csv;
    csv << report_csv_header() << '\n';
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    int failed = 0;
    for (int i = 0; i < cfg.count; ++i) {
        const WeightVector wv(draw_weights(cfg.d, cfg.seed, i));
        PsiReport r = verify_choi(wv, cfg.n, cfg.tol);
        r.seed = cfg.seed;
        r.instance_index = i;
        check_report(r, cfg.tol);
        csv << report_csv_row(r) << '\n';
        if (!r.passed) {
            ++failed;
            failures.push_back(nlohmann::ordered_json::parse(report_to_json(r, cfg.tol)));
        }
    }
    atomic_write(path, csv.str());
    if (failed > 0) {
        const std::filesystem::path dump = path.string() + ".failures.json";
        atomic_write(dump, failures.dump(2) + "\n");
        std::fprintf(stderr, "crzx sweep: %d/%d instance(s) failed invariants; dumps at %s\n",
                     failed, cfg.count, dump.string().c_str());
        return 1;
    }
    return 0;
}

int run_remark2(const RunConfig& cfg, const std::filesystem::path& path) {
    if (cfg.grid < 2) throw InvalidInputError("remark2: --grid must be >= 2");
    std::ostringstream csv;
    csv << "phi_angle,psi_computed,psi_formula,deviation,hausdorff_to_circle\n";
    int failed = 0;
    for (int i = 0; i < cfg.grid; ++i) {
        const double angle = (std::numbers::pi / 2.0) * i / (cfg.grid - 1);
        const Remark2Row row = remark2_report(angle, cfg.n);
        csv << fmt(row.phi_angle) << ',' << fmt(row.psi_computed) << ','
            << fmt(row.psi_formula) << ',' << fmt(row.deviation) << ','
            << fmt(row.hausdorff_to_circle) << '\n';
        if (row.deviation > 1e-8 || row.hausdorff_to_circle > 1e-7) {
            ++failed;
            std::fprintf(stderr,
                         "crzx remark2: angle %s: psi deviation %s, circle distance %s\n",
                         fmt(angle).c_str(), fmt(row.deviation).c_str(),
                         fmt(row.hausdorff_to_circle).c_str());
        }
    }
    atomic_write(path, csv.str());
    return failed > 0 ? 1 : 0;
}

int run_family4(const RunConfig& cfg, const std::filesystem::path& path) {
    const std::vector<Family4Row> rows =
        family4_experiment(cfg.a_values, cfg.n, cfg.budget, cfg.seed);
    std::ostringstream csv;
    csv << family4_csv_header() << '\n';
    int failed = 0;
    for (const Family4Row& row : rows) {
        csv << family4_csv_row(row) << '\n';
        if (!row.ok) {
            ++failed;
            std::fprintf(stderr, "crzx family4: a = %s failed: %s\n", fmt(row.a).c_str(),
                         row.error.c_str());
            continue;
        }
        if (row.rotation_defect > 1e-6) {
            ++failed;
            std::fprintf(stderr, "crzx family4: a = %s: rotation defect %s exceeds 1e-6\n",
                         fmt(row.a).c_str(), fmt(row.rotation_defect).c_str());
        }
        if (row.phi_identity_residual > 1e-6) {
            ++failed;
            std::fprintf(stderr, "crzx family4: a = %s: phi(A) = cA residual %s exceeds 1e-6\n",
                         fmt(row.a).c_str(), fmt(row.phi_identity_residual).c_str());
        }
        if (row.gap > 1e-6) {
            ++failed;
            std::fprintf(stderr,
                         "crzx family4: a = %s: NEGATIVE FINDING - Blaschke maximum %s "
                         "exceeds power maximum %s by %s (a non-power product wins)\n",
                         fmt(row.a).c_str(), fmt(row.max_blaschke_value).c_str(),
                         fmt(row.max_power_value).c_str(), fmt(row.gap).c_str());
        }
    }
    atomic_write(path, csv.str());
    return failed > 0 ? 1 : 0;
}

int run_boundary(const RunConfig& cfg, const std::filesystem::path& path) {
    const WeightVector wv = require_weights(cfg);
    const BoundaryCurve bc = boundary(build_matrix(wv), cfg.n);
    std::ostringstream csv;
    csv << "theta,support,rho,re,im\n";
    for (int j = 0; j < bc.n; ++j) {
        const std::size_t i = static_cast<std::size_t>(j);
        csv << fmt(bc.theta[i]) << ',' << fmt(bc.support[i]) << ',' << fmt(bc.rho[i]) << ','
            << fmt(bc.points[i].real()) << ',' << fmt(bc.points[i].imag()) << '\n';
    }
    atomic_write(path, csv.str());
    return 0;
}

int run_map(const RunConfig& cfg, const std::filesystem::path& path) {
    const WeightVector wv = require_weights(cfg);
    const Canonicalization canon = canonicalize(wv);
    std::vector<Complex> mags(canon.magnitudes.size());
    for (std::size_t j = 0; j < mags.size(); ++j) mags[j] = Complex(canon.magnitudes[j], 0.0);
    const WeightVector abs_wv{mags};
    const BoundaryCurve bc = boundary(build_matrix(abs_wv), cfg.n);
    const DiskMap map = solve_map(bc, wv.d());

    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["n"] = map.n;
    j["symmetry_order"] = map.symmetry_order;
    j["c1"] = map.c1;
    j["residual"] = map.residual;
    j["analyticity_defect"] = map.analyticity_defect;
    j["symmetry_defect"] = map.symmetry_defect;
    {
        nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
        const std::size_t count = std::min<std::size_t>(map.coeffs.size(), 65);
        for (std::size_t k = 0; k < count; ++k) {
            coeffs.push_back({map.coeffs[k].real(), map.coeffs[k].imag()});
        }
        j["coeffs"] = std::move(coeffs);
    }
    {
        const GammaProfiles gp = gamma_profile(map, wv.d(), 64);
        j["gamma_angles"] = gp.angles;
        j["gamma_boundary_modulus"] = gp.boundary_modulus;
        j["gamma_radii"] = gp.radii;
        j["gamma_radial_ratio"] = gp.radial_ratio;
    }
    atomic_write(path, j.dump(2) + "\n");
    return 0;
}

} // namespace

std::vector<Complex> parse_weights(const std::string& text) {
    std::vector<Complex> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) throw InvalidInputError("empty weight entry in '" + text + "'");
        const std::size_t colon = token.find(':');
        try {
            std::size_t used = 0;
            if (colon == std::string::npos) {
                const double re = std::stod(token, &used);
                if (used != token.size()) throw InvalidInputError("trailing characters");
                out.emplace_back(re, 0.0);
            } else {
                const std::string re_s = token.substr(0, colon);
                const std::string im_s = token.substr(colon + 1);
                const double re = std::stod(re_s, &used);
                if (used != re_s.size()) throw InvalidInputError("trailing characters");
                const double im = std::stod(im_s, &used);
                if (used != im_s.size()) throw InvalidInputError("trailing characters");
                out.emplace_back(re, im);
            }
        } catch (const std::exception&) {
            throw InvalidInputError("cannot parse weight '" + token +
                                    "' (use re or re:im, comma-separated)");
        }
    }
    if (out.empty()) throw InvalidInputError("no weights in '" + text + "'");
    return out;
}

std::vector<Complex> draw_weights(int d, std::uint64_t seed, int index) {
    if (d < 2) throw InvalidInputError("draw_weights: d must be >= 2");
    std::mt19937_64 gen(
        rng::mix(seed, static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(index)));
    std::vector<double> mags(static_cast<std::size_t>(d));
    std::vector<double> phases(static_cast<std::size_t>(d));
    double prod = 1.0;
    for (int j = 0; j < d; ++j) {
        mags[static_cast<std::size_t>(j)] = 0.05 + 1.45 * rng::canonical(gen);
        phases[static_cast<std::size_t>(j)] = 2.0 * std::numbers::pi * rng::canonical(gen);
        prod *= mags[static_cast<std::size_t>(j)];
    }
    if (prod > 1.0) {
        const double scale = std::pow(prod, -1.0 / d);
        for (double& m : mags) m *= scale;
    }
    std::vector<Complex> w(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        w[static_cast<std::size_t>(j)] =
            std::polar(mags[static_cast<std::size_t>(j)], phases[static_cast<std::size_t>(j)]);
    }
    return w;
}

std::string default_output_name(const RunConfig& cfg) {
    if (cfg.command == "psi") return cfg.format == "csv" ? "psi_report.csv" : "psi_report.json";
    if (cfg.command == "sweep") {
        std::ostringstream os;
        os << "sweep_d" << cfg.d << "_count" << cfg.count << "_seed" << cfg.seed << ".csv";
        return os.str();
    }
    if (cfg.command == "remark2") return "remark2.csv";
    if (cfg.command == "family4") return "family4.csv";
    if (cfg.command == "boundary") return "boundary.csv";
    if (cfg.command == "map") return "map.json";
    throw InvalidInputError("unknown command '" + cfg.command + "'");
}

int run(const RunConfig& cfg) {
    const std::filesystem::path path = resolve_output(cfg);
    if (cfg.command == "psi") return run_psi(cfg, path);
    if (cfg.command == "sweep") return run_sweep(cfg, path);
    if (cfg.command == "remark2") return run_remark2(cfg, path);
    if (cfg.command == "family4") return run_family4(cfg, path);
    if (cfg.command == "boundary") return run_boundary(cfg, path);
    if (cfg.command == "map") return run_map(cfg, path);
    throw InvalidInputError("unknown command '" + cfg.command + "'");
}

} // namespace crz
