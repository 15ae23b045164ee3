#pragma once

// JSON run configuration. Unknown keys are rejected, numeric fields are
// validated against the owning type's invariants, and every error message
// names the offending field. Command-line flags override config values.

#include "frontlab/harness.hpp"
#include "frontlab/symbols.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace frontlab {

enum class RunMode { Simulate, Stability, Converge, Attractor, Verify, Figure };

RunMode parse_run_mode(const std::string& name);
const char* to_string(RunMode mode);

/// Initial condition: a named preset or an explicit one-sided coefficient
/// list of (k, re, im) triples.
struct Psi0Spec {
    std::string preset = "sin";                                   // used when coeffs is empty
    std::vector<std::tuple<int, double, double>> coeffs;          // inline spectrum

    SpectralField<double> build(const GridConfig<double>& grid) const;
};

struct RunConfig {
    RunMode mode = RunMode::Simulate;

    // scheme parameters
    double beta = 10.0;
    double eps = 0.001;
    double dt = 1e-4;

    // pre-rescaled parameters (stability / verify)
    double u_flow = 0.5;
    double gamma = 1.0;
    double ell = two_pi_v<double>;
    int k_max = 128;

    // grid
    int n_modes = 256;
    double dealias_fraction = 2.0 / 3.0;

    // run shape
    Psi0Spec psi0;
    double t_final = 10.0;
    long snapshot_stride = 100;
    double blowup_sup = 1e6;
    std::string output_dir = ".";
    std::uint64_t seed = 12345;

    // mode-specific
    int figure_id = 4;
    std::vector<double> eps_list = {0.1, 0.01, 0.001};
    std::vector<double> beta_list = {1.0, 2.0, 3.0, 4.0};
    double transient_fraction = 0.5;

    GridConfig<double> grid() const;
    SimulationSettings simulation_settings() const;
    /// Full invariant check; throws std::invalid_argument naming the field.
    void validate() const;
};

/// Parses and validates a JSON document.
RunConfig parse_config(const std::string& text);

/// Same, reading the document from a file.
RunConfig load_config_file(const std::string& path);

}  // namespace frontlab
