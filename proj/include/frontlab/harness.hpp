#pragma once

// Experiment drivers: the eps -> 0 convergence study against the
// Kuramoto-Sivashinsky reference, the beta sweep with attractor triage,
// the weighted-norm monitor for the slope of the correction term, and the
// canned waterfall-figure configurations.

#include "frontlab/dynamics.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace frontlab {

/// Grid/stepping knobs shared by the experiment drivers.
struct SimulationSettings {
    GridConfig<double> grid{};
    double dt = 1e-4;
    long snapshot_stride = 100;
    double blowup_sup = 1e6;
};

/// Named initial conditions: "sin", "cos", and the three-cosine profile
/// "tri" = 0.1(cos x + cos 2x + cos 3x).
SpectralField<double> preset_initial(const GridConfig<double>& grid, const std::string& name);

struct ConvergenceResult {
    std::vector<double> eps_values;   // strictly decreasing, all > 0
    std::vector<double> sup_errors;   // max over time of |psi_eps - Phi|_inf
    double fitted_order = 0.0;        // least-squares slope of log(err) vs log(eps)
    double fit_constant = 0.0;        // err ~ constant * eps^order
    bool degenerate = false;          // all errors vanished; fit skipped
    std::vector<double> flagged_eps;  // runs that hit the blow-up guard
};

/// Runs the eps=0 reference and one run per entry of eps_list from the same
/// initial state, on the same grid and time step, and fits the error decay.
ConvergenceResult convergence_study(const SpectralField<double>& psi0, double beta,
                                    const std::vector<double>& eps_list, double t_final,
                                    const SimulationSettings& settings);

enum class AttractorClass { Trivial, Periodic, Complex };

const char* to_string(AttractorClass c);

struct AttractorReport {
    double beta = 0.0;
    double eps = 0.0;
    AttractorClass classification = AttractorClass::Trivial;
    std::optional<double> period_estimate;             // in simulation time units
    std::vector<std::pair<int, double>> dominant_modes;  // (k, time-mean |psi_k|)
    std::vector<double> mode_energy;                   // time-mean two-sided energy per k
    double final_zero_mean_sup = 0.0;
    double autocorr_peak = 0.0;
    bool blew_up = false;
};

/// Classification thresholds (fixed; see README).
inline constexpr double kTrivialSupTol = 1e-6;
inline constexpr double kPeriodicAutocorrPeak = 0.99;
inline constexpr int kAutocorrMinLagSamples = 10;

/// One simulation per beta; the transient fraction of each run is discarded
/// before classifying the zero-mean dynamics as trivial, periodic or complex.
std::vector<AttractorReport> attractor_scan(const std::vector<double>& beta_list, double eps,
                                            const SpectralField<double>& psi0, double t_final,
                                            double transient_fraction,
                                            const SimulationSettings& settings);

/// Fraction of zero-mean spectral energy carried by the listed modes.
double mode_energy_fraction(const AttractorReport& report, const std::vector<int>& modes);

struct AprioriSeries {
    int order = 0;                // derivative order n
    std::vector<double> times;
    std::vector<double> series;   // ||D^n zeta||_{1/2,eps}^2 per snapshot
    double max_value = 0.0;
    bool bound_hit = false;       // the whole series stayed below the bound
};

/// zeta = D_eta((psi_eps - Phi)/eps) on matching snapshots of the two
/// trajectories; returns the weighted-norm series and whether it stayed
/// below `bound`.
AprioriSeries apriori_monitor(const Trajectory<double>& traj_eps,
                              const Trajectory<double>& traj_ks, double eps, int order,
                              double bound);

struct FigureSpec {
    double beta;
    double eps;
    std::string psi0;
    double t_final;        // driver default; the captions leave it open
    long snapshot_stride;  // chosen so the waterfall has ~100 rows
    int n_modes;           // per-figure resolution (see figure_spec notes)
};

/// Canned configurations for the thirteen waterfall figures.
FigureSpec figure_spec(int figure_id);

struct FigureResult {
    FigureSpec spec;
    Trajectory<double> trajectory;
    std::string csv_path;
    std::string svg_path;
};

/// Runs the canned configuration and writes <out_dir>/figure_<id>.{csv,svg}.
FigureResult run_figure(int figure_id, const std::string& out_dir,
                        const SimulationSettings& settings);

/// Sweep parallelism cap: FRONTLAB_THREADS when set (clamped to >= 1),
/// otherwise min(hardware threads, 8).
int max_sweep_threads();

}  // namespace frontlab
