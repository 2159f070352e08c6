// crzx: verification experiments for weighted cyclic shifts and their
// numerical-range bounds. Subcommands:
//   psi       one full report for a given weight vector
//   sweep     seeded random batches with a CSV summary and failure dumps
//   remark2   the closed-form disk family over an angle grid
//   family4   the 4x4 one-parameter family: powers vs Blaschke products
//   boundary  numerical-range boundary export
//   map       disk-map export (coefficients, defects, radial profiles)
// Exit status: 0 = all asserted invariants passed, 1 = assertion or
// computation failure, 2 = usage error.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "crz/errors.hpp"
#include "crz/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"weighted-shift numerical range verification"};
    app.set_version_flag("--version", "0.1.0");
    app.set_config("--config", "", "read options from an INI config file");
    app.require_subcommand(1);

    crz::RunConfig cfg;
    std::string weights_text;

    app.add_option("--weights", weights_text,
                   "comma-separated weights, each 're' or 're:im'");
    app.add_option("--n", cfg.n, "boundary/quadrature grid (power of two >= 256)")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for all random draws")->capture_default_str();
    app.add_option("--d", cfg.d, "sweep: weight count per instance")->capture_default_str();
    app.add_option("--count", cfg.count, "sweep: number of instances")->capture_default_str();
    app.add_option("--grid", cfg.grid, "remark2: number of angles")->capture_default_str();
    app.add_option("--a-values", cfg.a_values, "family4: parameter grid")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--budget", cfg.budget, "family4: random multistarts per degree")
        ->capture_default_str();
    app.add_option("--out", cfg.out_path, "output file (default: derived name)");
    app.add_option("--out-dir", cfg.out_dir,
                   "output directory for derived names (default: $CRZX_OUT_DIR or .)");
    app.add_option("--format", cfg.format, "psi report format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--tol-map", cfg.tol.map, "map defect gate")->capture_default_str();
    app.add_option("--tol-quadrature", cfg.tol.quadrature, "contour calculus gate")
        ->capture_default_str();
    app.add_option("--tol-chain", cfg.tol.chain, "inequality chain slack")
        ->capture_default_str();
    app.add_option("--near-normal-margin", cfg.tol.near_normal_margin,
                   "relative eigenvalue depth below which reports are flagged")
        ->capture_default_str();

    for (const char* name : {"psi", "sweep", "remark2", "family4", "boundary", "map"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->fallthrough(true);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // help/version keep 0; any flag error is usage
    }

    cfg.command = app.get_subcommands().front()->get_name();

    try {
        if (!weights_text.empty()) cfg.weights = crz::parse_weights(weights_text);
        return crz::run(cfg);
    } catch (const crz::InvalidInputError& e) {
        std::fprintf(stderr, "crzx: %s\n", e.what());
        return 2;
    } catch (const crz::Error& e) {
        std::fprintf(stderr, "crzx: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "crzx: unexpected error: %s\n", e.what());
        return 1;
    }
}
