#include "frontlab/harness.hpp"

#include "frontlab/output.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <stdexcept>
#include <thread>

namespace frontlab {

namespace {

// Runs f(i) for i in [0, n) on up to max_sweep_threads() workers. Results
// must be written by index; no shared mutable state besides the counter.
template <class F>
void parallel_for_index(std::size_t n, F&& f) {
    const int threads = std::min<int>(max_sweep_threads(), static_cast<int>(n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            if (failed.load()) return;
            try {
                f(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

SpectralField<double> zero_mean_part(const SpectralField<double>& f) {
    SpectralField<double> g = f;
    g.set_coeff(0, {0.0, 0.0});
    return g;
}

double sup_of_difference(const SpectralField<double>& a, const SpectralField<double>& b) {
    return norm_sup(a - b);
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

LinearFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

}  // namespace

int max_sweep_threads() {
    if (const char* env = std::getenv("FRONTLAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(std::min<long>(v, 256));
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp<unsigned>(hw, 1u, 8u));
}

SpectralField<double> preset_initial(const GridConfig<double>& grid, const std::string& name) {
    SpectralField<double> f(grid);
    if (name == "sin") {
        f.set_coeff(1, {0.0, -0.5});
    } else if (name == "cos") {
        f.set_coeff(1, {0.5, 0.0});
    } else if (name == "tri") {
        f.set_coeff(1, {0.05, 0.0});
        f.set_coeff(2, {0.05, 0.0});
        f.set_coeff(3, {0.05, 0.0});
    } else {
        throw std::invalid_argument("psi0: unknown preset \"" + name +
                                    "\" (expected sin, cos or tri)");
    }
    return f;
}

ConvergenceResult convergence_study(const SpectralField<double>& psi0, double beta,
                                    const std::vector<double>& eps_list, double t_final,
                                    const SimulationSettings& settings) {
    if (eps_list.size() < 2)
        throw std::invalid_argument("convergence_study: need at least two eps values");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0))
            throw std::invalid_argument("convergence_study: eps_list entries must be > 0");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("convergence_study: eps_list must be strictly decreasing");
    }

    ModelParams<double> ref_params;
    ref_params.eps = 0.0;
    ref_params.beta = beta;
    ref_params.dt = settings.dt;
    const Stepper<double> ref_stepper(settings.grid, ref_params);
    const Trajectory<double> reference =
        simulate(psi0, ref_stepper, t_final, settings.snapshot_stride, settings.blowup_sup);
    if (reference.blew_up)
        throw NumericError("convergence_study: the eps=0 reference run blew up");

    ConvergenceResult result;
    result.eps_values = eps_list;
    result.sup_errors.assign(eps_list.size(), 0.0);
    std::vector<char> flagged(eps_list.size(), 0);

    parallel_for_index(eps_list.size(), [&](std::size_t i) {
        ModelParams<double> params = ref_params;
        params.eps = eps_list[i];
        const Stepper<double> stepper(settings.grid, params);
        const Trajectory<double> traj =
            simulate(psi0, stepper, t_final, settings.snapshot_stride, settings.blowup_sup);
        if (traj.blew_up) {
            flagged[i] = 1;
            return;
        }
        double err = 0.0;
        const std::size_t n = std::min(traj.snapshots.size(), reference.snapshots.size());
        for (std::size_t s = 0; s < n; ++s)
            err = std::max(err, sup_of_difference(traj.snapshots[s], reference.snapshots[s]));
        result.sup_errors[i] = err;
    });

    std::vector<double> log_eps, log_err;
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (flagged[i]) {
            result.flagged_eps.push_back(eps_list[i]);
            continue;
        }
        if (result.sup_errors[i] > 0.0) {
            log_eps.push_back(std::log(eps_list[i]));
            log_err.push_back(std::log(result.sup_errors[i]));
        }
    }
    if (log_eps.size() < 2) {
        result.degenerate = true;
        return result;
    }
    const LinearFit fit = least_squares(log_eps, log_err);
    result.fitted_order = fit.slope;
    result.fit_constant = std::exp(fit.intercept);
    return result;
}

const char* to_string(AttractorClass c) {
    switch (c) {
        case AttractorClass::Trivial: return "trivial";
        case AttractorClass::Periodic: return "periodic";
        default: return "complex";
    }
}

namespace {

struct AutocorrResult {
    double peak = 0.0;
    long lag = 0;
    bool constant_series = false;
};

// Normalized autocorrelation of the centered series, maximized over
// lag >= min_lag. A (numerically) constant series is reported as such.
AutocorrResult autocorrelation_peak(const std::vector<double>& series, long min_lag) {
    AutocorrResult out;
    const long n = static_cast<long>(series.size());
    if (n < 2 * min_lag + 2) return out;
    double mean = 0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> centered(series.size());
    double var = 0;
    for (long i = 0; i < n; ++i) {
        centered[i] = series[i] - mean;
        var += centered[i] * centered[i];
    }
    if (std::sqrt(var / static_cast<double>(n)) <= 1e-10 * std::max(std::abs(mean), 1e-30)) {
        out.constant_series = true;
        out.peak = 1.0;
        out.lag = min_lag;
        return out;
    }
    for (long lag = min_lag; lag <= n / 2; ++lag) {
        double acc = 0;
        for (long i = 0; i + lag < n; ++i) acc += centered[i] * centered[i + lag];
        const double r = acc / var * static_cast<double>(n) / static_cast<double>(n - lag);
        if (r > out.peak) {
            out.peak = r;
            out.lag = lag;
        }
    }
    return out;
}

AttractorReport classify_run(double beta, double eps, const Trajectory<double>& traj,
                             double transient_fraction, double dt) {
    AttractorReport report;
    report.beta = beta;
    report.eps = eps;
    report.blew_up = traj.blew_up;
    if (traj.blew_up) {
        report.classification = AttractorClass::Complex;
        return report;
    }

    report.final_zero_mean_sup = norm_sup(zero_mean_part(traj.snapshots.back()));

    // Time-averaged spectrum over the post-transient snapshots.
    const double t_cut = transient_fraction * traj.end_time;
    const Eigen::Index half = traj.snapshots.front().spectrum_size() - 1;
    report.mode_energy.assign(half + 1, 0.0);
    std::vector<double> mean_amp(half + 1, 0.0);
    long used = 0;
    for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
        if (traj.times[s] < t_cut) continue;
        ++used;
        for (Eigen::Index k = 0; k <= half; ++k) {
            const double a2 = std::norm(traj.snapshots[s].coeff(k));
            const double weight = (k == 0 || k == half) ? 1.0 : 2.0;
            report.mode_energy[k] += weight * a2;
            mean_amp[k] += std::abs(traj.snapshots[s].coeff(k));
        }
    }
    if (used > 0) {
        for (Eigen::Index k = 0; k <= half; ++k) {
            report.mode_energy[k] /= static_cast<double>(used);
            mean_amp[k] /= static_cast<double>(used);
        }
    }
    std::vector<int> order(half);
    for (Eigen::Index k = 1; k <= half; ++k) order[k - 1] = static_cast<int>(k);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return mean_amp[a] > mean_amp[b]; });
    for (int i = 0; i < 5 && i < static_cast<int>(order.size()); ++i)
        report.dominant_modes.emplace_back(order[i], mean_amp[order[i]]);

    if (report.final_zero_mean_sup < kTrivialSupTol) {
        report.classification = AttractorClass::Trivial;
        return report;
    }

    // Zero-mean L2 norm per step, transient discarded, decimated if long.
    std::vector<double> series;
    series.reserve(traj.diagnostics.size());
    const std::size_t start =
        static_cast<std::size_t>(transient_fraction * static_cast<double>(traj.diagnostics.size()));
    for (std::size_t i = start; i < traj.diagnostics.size(); ++i)
        series.push_back(traj.diagnostics[i].zero_mean_l2);
    const std::size_t max_samples = 20000;
    const std::size_t step = std::max<std::size_t>(1, series.size() / max_samples);
    if (step > 1) {
        std::vector<double> decimated;
        decimated.reserve(series.size() / step + 1);
        for (std::size_t i = 0; i < series.size(); i += step) decimated.push_back(series[i]);
        series.swap(decimated);
    }

    const AutocorrResult ac = autocorrelation_peak(series, kAutocorrMinLagSamples);
    report.autocorr_peak = ac.peak;
    if (ac.peak >= kPeriodicAutocorrPeak) {
        report.classification = AttractorClass::Periodic;
        report.period_estimate = static_cast<double>(ac.lag) * dt * static_cast<double>(step);
    } else {
        report.classification = AttractorClass::Complex;
    }
    return report;
}

}  // namespace

std::vector<AttractorReport> attractor_scan(const std::vector<double>& beta_list, double eps,
                                            const SpectralField<double>& psi0, double t_final,
                                            double transient_fraction,
                                            const SimulationSettings& settings) {
    if (!(transient_fraction >= 0.0) || !(transient_fraction < 1.0))
        throw std::invalid_argument("attractor_scan: transient_fraction must lie in [0,1)");
    std::vector<AttractorReport> reports(beta_list.size());
    parallel_for_index(beta_list.size(), [&](std::size_t i) {
        ModelParams<double> params;
        params.eps = eps;
        params.beta = beta_list[i];
        params.dt = settings.dt;
        const Stepper<double> stepper(settings.grid, params);
        const Trajectory<double> traj =
            simulate(psi0, stepper, t_final, settings.snapshot_stride, settings.blowup_sup);
        reports[i] = classify_run(beta_list[i], eps, traj, transient_fraction, settings.dt);
    });
    return reports;
}

double mode_energy_fraction(const AttractorReport& report, const std::vector<int>& modes) {
    double total = 0.0, selected = 0.0;
    for (std::size_t k = 1; k < report.mode_energy.size(); ++k) total += report.mode_energy[k];
    for (int k : modes)
        if (k >= 1 && k < static_cast<int>(report.mode_energy.size()))
            selected += report.mode_energy[k];
    return total > 0.0 ? selected / total : 0.0;
}

AprioriSeries apriori_monitor(const Trajectory<double>& traj_eps,
                              const Trajectory<double>& traj_ks, double eps, int order,
                              double bound) {
    if (!(eps > 0.0)) throw std::invalid_argument("apriori_monitor: eps must be > 0");
    if (order < 0) throw std::invalid_argument("apriori_monitor: order must be >= 0");
    if (traj_eps.snapshots.size() != traj_ks.snapshots.size())
        throw std::invalid_argument("apriori_monitor: trajectories have different lengths");
    AprioriSeries out;
    out.order = order;
    out.times = traj_eps.times;
    out.series.reserve(traj_eps.snapshots.size());
    for (std::size_t s = 0; s < traj_eps.snapshots.size(); ++s) {
        if (traj_eps.times[s] != traj_ks.times[s])
            throw std::invalid_argument("apriori_monitor: snapshot times do not match");
        SpectralField<double> zeta =
            derivative((1.0 / eps) * (traj_eps.snapshots[s] - traj_ks.snapshots[s]), 1);
        if (order > 0) zeta = derivative(zeta, order);
        const double norm = norm_half_eps(zeta, eps);
        out.series.push_back(norm * norm);
        out.max_value = std::max(out.max_value, norm * norm);
    }
    out.bound_hit = out.max_value <= bound;
    return out;
}

FigureSpec figure_spec(int figure_id) {
    // Resolution note: at beta=20, eps=0.1 the explicit nonlinear term goes
    // unstable on fine grids once the amplitude crosses ~1/(beta*eps^{3/2})
    // (the high-mode gain is dt-independent), so figure 5 runs at N=128,
    // where the retained band stays below the runaway threshold.
    switch (figure_id) {
        case 1: return {10.0, 0.1, "sin", 10.0, 1000, 256};
        case 2: return {10.0, 0.01, "sin", 10.0, 1000, 256};
        case 3: return {10.0, 0.001, "sin", 10.0, 1000, 256};
        case 4: return {10.0, 0.0, "sin", 10.0, 1000, 256};
        case 5: return {20.0, 0.1, "sin", 10.0, 1000, 128};
        case 6: return {20.0, 0.01, "sin", 10.0, 1000, 256};
        case 7: return {20.0, 0.001, "sin", 10.0, 1000, 256};
        case 8: return {20.0, 0.0, "sin", 10.0, 1000, 256};
        case 9: return {30.0, 0.001, "sin", 60.0, 5000, 256};
        case 10: return {30.0, 0.001, "cos", 60.0, 5000, 256};
        case 11: return {60.0, 0.001, "sin", 60.0, 5000, 256};
        case 12: return {60.0, 0.001, "cos", 60.0, 5000, 256};
        case 13: return {108.0, 0.0001, "tri", 20.0, 2000, 256};
        default:
            throw std::invalid_argument("figure: figure_id must lie in 1..13");
    }
}

FigureResult run_figure(int figure_id, const std::string& out_dir,
                        const SimulationSettings& settings) {
    FigureResult result;
    result.spec = figure_spec(figure_id);
    ModelParams<double> params;
    params.eps = result.spec.eps;
    params.beta = result.spec.beta;
    params.dt = settings.dt;
    GridConfig<double> grid = settings.grid;
    grid.n_modes = result.spec.n_modes;
    const Stepper<double> stepper(grid, params);
    const SpectralField<double> psi0 = preset_initial(grid, result.spec.psi0);
    result.trajectory = simulate(psi0, stepper, result.spec.t_final, result.spec.snapshot_stride,
                                 settings.blowup_sup);
    std::filesystem::create_directories(out_dir);
    const std::string stem = out_dir + "/figure_" + std::to_string(figure_id);
    result.csv_path = stem + ".csv";
    result.svg_path = stem + ".svg";
    write_trajectory_csv(result.trajectory, result.csv_path);
    write_waterfall_svg(result.trajectory, result.svg_path);
    return result;
}

}  // namespace frontlab
