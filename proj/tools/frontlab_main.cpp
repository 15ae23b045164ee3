// frontlab command-line driver: config-driven spectral front simulations,
// stability reports, convergence/attractor studies and the verification
// battery. Exit codes: 0 ok, 1 usage/config, 2 numeric failure, 3
// verification failure.

#include "frontlab/config.hpp"
#include "frontlab/harness.hpp"
#include "frontlab/output.hpp"
#include "frontlab/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace frontlab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitVerify = 3;

struct CliOverrides {
    std::string config_path;
    std::string out_dir;
    double dt = 0, beta = 0, eps = 0, t_final = 0, u_flow = 0, gamma = 0, ell = 0;
    double transient_fraction = 0;
    int n_modes = 0, k_max = 0, figure_id = 0;
    long stride = 0;
    std::uint64_t seed = 0;
    std::string psi0;
    std::vector<double> eps_list, beta_list;
};

void add_common_options(CLI::App* sub, CliOverrides& o) {
    sub->add_option("--config", o.config_path, "JSON config file (flags override its values)");
    sub->add_option("--out", o.out_dir, "output directory");
    sub->add_option("--dt", o.dt, "time step");
    sub->add_option("--n-modes", o.n_modes, "number of spatial nodes (even, >= 8)");
    sub->add_option("--beta", o.beta, "bifurcation parameter");
    sub->add_option("--eps", o.eps, "perturbation parameter");
    sub->add_option("--t-final", o.t_final, "simulated time span");
    sub->add_option("--psi0", o.psi0, "initial condition preset: sin, cos or tri");
    sub->add_option("--stride", o.stride, "snapshot stride in steps");
    sub->add_option("--seed", o.seed, "seed for randomized verification draws");
}

bool flag_given(const CLI::App* sub, const std::string& name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

RunConfig assemble_config(const CLI::App* sub, const CliOverrides& o, RunMode mode) {
    RunConfig cfg;
    if (flag_given(sub, "--config")) cfg = load_config_file(o.config_path);
    cfg.mode = mode;
    if (flag_given(sub, "--out")) cfg.output_dir = o.out_dir;
    if (flag_given(sub, "--dt")) cfg.dt = o.dt;
    if (flag_given(sub, "--n-modes")) cfg.n_modes = o.n_modes;
    if (flag_given(sub, "--beta")) cfg.beta = o.beta;
    if (flag_given(sub, "--eps")) cfg.eps = o.eps;
    if (flag_given(sub, "--t-final")) cfg.t_final = o.t_final;
    if (flag_given(sub, "--psi0")) cfg.psi0 = Psi0Spec{o.psi0, {}};
    if (flag_given(sub, "--stride")) cfg.snapshot_stride = o.stride;
    if (flag_given(sub, "--seed")) cfg.seed = o.seed;
    if (flag_given(sub, "--u-flow")) cfg.u_flow = o.u_flow;
    if (flag_given(sub, "--gamma")) cfg.gamma = o.gamma;
    if (flag_given(sub, "--ell")) cfg.ell = o.ell;
    if (flag_given(sub, "--k-max")) cfg.k_max = o.k_max;
    if (flag_given(sub, "--figure-id")) cfg.figure_id = o.figure_id;
    if (flag_given(sub, "--eps-list")) cfg.eps_list = o.eps_list;
    if (flag_given(sub, "--beta-list")) cfg.beta_list = o.beta_list;
    if (flag_given(sub, "--transient-fraction")) cfg.transient_fraction = o.transient_fraction;
    cfg.validate();
    return cfg;
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir);
}

int run_simulate(const RunConfig& cfg) {
    const SimulationSettings settings = cfg.simulation_settings();
    ModelParams<double> params;
    params.eps = cfg.eps;
    params.beta = cfg.beta;
    params.dt = cfg.dt;
    const Stepper<double> stepper(settings.grid, params);
    const SpectralField<double> psi0 = cfg.psi0.build(settings.grid);
    const Trajectory<double> traj =
        simulate(psi0, stepper, cfg.t_final, cfg.snapshot_stride, cfg.blowup_sup);

    ensure_out_dir(cfg.output_dir);
    const std::string csv = cfg.output_dir + "/trajectory.csv";
    const std::string svg = cfg.output_dir + "/waterfall.svg";
    write_trajectory_csv(traj, csv);
    write_waterfall_svg(traj, svg);
    if (traj.blew_up) {
        std::cerr << "error: numeric: blow-up guard tripped at t=" << traj.end_time
                  << " (partial output in " << cfg.output_dir << ")\n";
        return kExitNumeric;
    }
    const auto& last = traj.diagnostics.back();
    std::cout << "simulate: beta=" << cfg.beta << " eps=" << cfg.eps << " t=" << last.t
              << " l2=" << last.l2_norm << " sup=" << last.sup_norm << " mean=" << last.mean
              << "\nwrote " << csv << "\nwrote " << svg << "\n";
    return kExitOk;
}

int run_stability(const RunConfig& cfg) {
    ModelParams<double> params;
    params.u_flow = cfg.u_flow;
    params.gamma = cfg.gamma;
    params.ell = cfg.ell;
    const StabilityReport<double> report = spectrum_report(params, cfg.k_max);
    std::cout << "# gamma=" << format_double(cfg.gamma) << " gamma_c="
              << format_double(report.gamma_c) << " classification="
              << to_string(report.classification)
              << " most_unstable_k=" << report.most_unstable_k << "\n";
    std::cout << "k,lambda_k,a_k\n";
    for (std::size_t k = 0; k < report.eigenvalues.size(); ++k)
        std::cout << k << ',' << format_double(report.lambdas[k]) << ','
                  << format_double(report.eigenvalues[k]) << "\n";
    return kExitOk;
}

int run_converge(const RunConfig& cfg) {
    const SimulationSettings settings = cfg.simulation_settings();
    const SpectralField<double> psi0 = cfg.psi0.build(settings.grid);
    const ConvergenceResult r =
        convergence_study(psi0, cfg.beta, cfg.eps_list, cfg.t_final, settings);

    ensure_out_dir(cfg.output_dir);
    const std::string path = cfg.output_dir + "/convergence.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "eps,sup_error\n";
    for (std::size_t i = 0; i < r.eps_values.size(); ++i)
        out << format_double(r.eps_values[i]) << ',' << format_double(r.sup_errors[i]) << "\n";
    out.close();

    if (r.degenerate) {
        std::cout << "converge: degenerate (errors vanish); fit skipped; wrote " << path << "\n";
        return kExitOk;
    }
    std::cout << "converge: fitted_order=" << r.fitted_order << " constant=" << r.fit_constant;
    for (double eps : r.flagged_eps) std::cout << " [blow-up at eps=" << eps << "]";
    std::cout << "\nwrote " << path << "\n";
    return r.flagged_eps.empty() ? kExitOk : kExitNumeric;
}

int run_attractor(const RunConfig& cfg) {
    const SimulationSettings settings = cfg.simulation_settings();
    const SpectralField<double> psi0 = cfg.psi0.build(settings.grid);
    const auto reports = attractor_scan(cfg.beta_list, cfg.eps, psi0, cfg.t_final,
                                        cfg.transient_fraction, settings);

    ensure_out_dir(cfg.output_dir);
    const std::string path = cfg.output_dir + "/attractor.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "beta,classification,period_estimate,autocorr_peak,final_zero_mean_sup,"
           "dominant_modes\n";
    bool any_blowup = false;
    for (const auto& r : reports) {
        any_blowup = any_blowup || r.blew_up;
        out << format_double(r.beta) << ',' << to_string(r.classification) << ','
            << (r.period_estimate ? format_double(*r.period_estimate) : std::string("none")) << ','
            << format_double(r.autocorr_peak) << ',' << format_double(r.final_zero_mean_sup)
            << ',';
        for (std::size_t i = 0; i < r.dominant_modes.size(); ++i) {
            if (i) out << ' ';
            out << 'k' << r.dominant_modes[i].first << ':'
                << format_double(r.dominant_modes[i].second, 6);
        }
        out << "\n";
        std::cout << "attractor: beta=" << r.beta << " -> " << to_string(r.classification)
                  << (r.blew_up ? " (blow-up)" : "") << "\n";
    }
    std::cout << "wrote " << path << "\n";
    return any_blowup ? kExitNumeric : kExitOk;
}

int run_verify(const RunConfig& cfg) {
    const VerifyReport report = run_verification_battery(cfg.seed);
    print_verify_report(report, std::cout);
    if (!report.all_passed()) {
        int failures = 0;
        for (const auto& c : report.checks) failures += c.passed ? 0 : 1;
        std::cerr << "error: verify: " << failures << " check(s) failed\n";
        return kExitVerify;
    }
    return kExitOk;
}

int run_figure_mode(const RunConfig& cfg) {
    SimulationSettings settings = cfg.simulation_settings();
    ensure_out_dir(cfg.output_dir);
    const FigureResult result = frontlab::run_figure(cfg.figure_id, cfg.output_dir, settings);
    if (result.trajectory.blew_up) {
        std::cerr << "error: numeric: blow-up guard tripped at t=" << result.trajectory.end_time
                  << "\n";
        return kExitNumeric;
    }
    std::cout << "figure " << cfg.figure_id << ": beta=" << result.spec.beta
              << " eps=" << result.spec.eps << " psi0=" << result.spec.psi0
              << " t_final=" << result.spec.t_final << "\nwrote " << result.csv_path << "\nwrote "
              << result.svg_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frontlab: pseudo-spectral solver for a fourth-order pseudo-differential "
                 "flame-front equation with Kuramoto-Sivashinsky limit"};
    app.require_subcommand(1);

    CliOverrides o;
    CLI::App* simulate_cmd = app.add_subcommand("simulate", "run one simulation, write CSV+SVG");
    CLI::App* stability_cmd =
        app.add_subcommand("stability", "print the linearized spectrum as CSV");
    CLI::App* converge_cmd =
        app.add_subcommand("converge", "eps -> 0 convergence study against the eps=0 limit");
    CLI::App* attractor_cmd =
        app.add_subcommand("attractor", "classify long-time dynamics over a beta sweep");
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the closed-form oracle battery");
    CLI::App* figure_cmd = app.add_subcommand("figure", "reproduce a canned waterfall figure");

    for (CLI::App* sub :
         {simulate_cmd, stability_cmd, converge_cmd, attractor_cmd, verify_cmd, figure_cmd})
        add_common_options(sub, o);

    stability_cmd->add_option("--u-flow", o.u_flow, "flow intensity U in (0,1)");
    stability_cmd->add_option("--gamma", o.gamma, "reduced parameter gamma");
    stability_cmd->add_option("--ell", o.ell, "strip width");
    stability_cmd->add_option("--k-max", o.k_max, "highest mode in the report");
    converge_cmd->add_option("--eps-list", o.eps_list,
                             "strictly decreasing eps values (space separated)");
    attractor_cmd->add_option("--beta-list", o.beta_list, "beta values (space separated)");
    attractor_cmd->add_option("--transient-fraction", o.transient_fraction,
                              "fraction of the run discarded before classification");
    figure_cmd->add_option("--figure-id", o.figure_id, "figure number, 1..13");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        const CLI::App* sub = app.get_subcommands().front();
        RunMode mode = RunMode::Simulate;
        if (sub == stability_cmd) mode = RunMode::Stability;
        if (sub == converge_cmd) mode = RunMode::Converge;
        if (sub == attractor_cmd) mode = RunMode::Attractor;
        if (sub == verify_cmd) mode = RunMode::Verify;
        if (sub == figure_cmd) mode = RunMode::Figure;
        const RunConfig cfg = assemble_config(sub, o, mode);

        switch (cfg.mode) {
            case RunMode::Simulate: return run_simulate(cfg);
            case RunMode::Stability: return run_stability(cfg);
            case RunMode::Converge: return run_converge(cfg);
            case RunMode::Attractor: return run_attractor(cfg);
            case RunMode::Verify: return run_verify(cfg);
            case RunMode::Figure: return run_figure_mode(cfg);
        }
        return kExitUsage;
    } catch (const frontlab::NumericError& e) {
        std::cerr << "error: numeric: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return kExitUsage;
    }
}
