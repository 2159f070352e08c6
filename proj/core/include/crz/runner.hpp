#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crz/linalg.hpp"
#include "crz/report.hpp"

namespace crz {

/// One CLI invocation. The seed fully determines every random draw, so a
/// repeated run with the same config produces byte-identical files.
struct RunConfig {
    std::string command;          ///< psi | sweep | remark2 | family4 | boundary | map
    std::vector<Complex> weights; ///< psi / boundary / map
    int d = 4;                    ///< sweep dimension
    int count = 100;              ///< sweep instances
    std::uint64_t seed = 1;
    int n = 2048;                 ///< boundary/quadrature grid (power of two >= 256)
    int grid = 64;                ///< remark2 angle count
    std::vector<double> a_values{0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
    int budget = 32;              ///< random multistarts per degree
    std::string out_path;         ///< explicit output file; empty = derived name
    std::string out_dir;          ///< default: $CRZX_OUT_DIR, else "."
    std::string format = "json";  ///< psi report format: json | csv
    Tolerances tol;
};

/// "re,re,re" or "re:im,re:im" (colon separates real and imaginary parts).
std::vector<Complex> parse_weights(const std::string& text);

/// Instance draw for sweeps: magnitudes uniform in [0.05, 1.5], phases
/// uniform, then rescaled so the magnitude product is at most 1. Seeded per
/// (seed, d, index); exposed so tests can reproduce batch instances.
std::vector<Complex> draw_weights(int d, std::uint64_t seed, int index);

/// File name used when RunConfig.out_path is empty.
std::string default_output_name(const RunConfig& cfg);

/// Dispatches the command, writes outputs (write-then-rename, so failures
/// leave no partial files) and returns the exit status: 0 when every
/// asserted invariant passed, 1 otherwise. Configuration errors throw
/// InvalidInputError (the CLI maps them to usage errors).
int run(const RunConfig& cfg);

} // namespace crz
