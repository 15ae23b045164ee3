#include "frontlab/verify.hpp"

#include "frontlab/profiles.hpp"
#include "frontlab/symbols.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <iomanip>
#include <ostream>

namespace frontlab {

namespace {

// Small deterministic generator (splitmix64) so the battery draws the same
// numbers on every platform.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    std::complex<double> complex_box(double radius) {
        return {uniform(-radius, radius), uniform(-radius, radius)};
    }
};

struct Battery {
    Rng rng;
    VerifyReport report;

    explicit Battery(std::uint64_t seed) : rng(seed) {}

    void add(const std::string& name, double worst, double tol) {
        report.checks.push_back({name, worst <= tol, worst, tol});
    }

    ModelParams<double> random_params() {
        ModelParams<double> p;
        p.u_flow = rng.uniform(0.05, 0.95);
        p.gamma = rng.uniform(0.2, 3.0);
        p.ell = rng.uniform(2.0, 25.0);
        return p;
    }
};

double rel(double residual, double scale) { return residual / std::max(scale, 1e-300); }

// --- traveling wave -------------------------------------------------------

void check_traveling_wave(Battery& b) {
    double worst_cont = 0, worst_jump = 0, worst_decay = 0;
    for (int i = 0; i < 50; ++i) {
        const double u = b.rng.uniform(0.05, 0.95);
        const double gamma = b.rng.uniform(0.2, 3.0);
        const double alpha = gamma + std::log(u);
        const auto wave = make_traveling_wave(u);
        worst_cont = std::max(worst_cont, std::abs(wave.speed - (-u * std::log(u))));

        const auto left = traveling_wave_eval(u, gamma, 0.0);
        const auto right = traveling_wave_eval(u, gamma, 1e-300);
        worst_cont = std::max(worst_cont, std::abs(left.theta_bar - 1.0));
        worst_cont = std::max(worst_cont, std::abs(right.theta_bar - 1.0));
        worst_cont = std::max(worst_cont, std::abs(left.s_bar - std::log(u)));
        worst_cont = std::max(worst_cont, std::abs(right.s_bar - std::log(u)));

        // jump conditions: [theta_x] = -exp(S(0)), [S_x] = alpha*[theta_x]
        const double theta_x_left = u;  // d/dx e^{Ux} at 0^-
        const double s_x_left = gamma * u + u * std::log(u);
        const double jump_theta = 0.0 - theta_x_left;
        const double jump_s = 0.0 - s_x_left;
        worst_jump = std::max(worst_jump, rel(std::abs(jump_theta + std::exp(left.s_bar)), u));
        worst_jump = std::max(worst_jump,
                              rel(std::abs(jump_s - alpha * jump_theta), std::abs(alpha * u) + u));

        // weighted boundedness: e^{-Ux/2} * profile stays bounded on x <= 0
        for (double x : {-1.0, -5.0, -20.0 / u}) {
            const auto v = traveling_wave_eval(u, gamma, x);
            const double w = std::exp(-u * x / 2.0);
            worst_decay = std::max(worst_decay,
                                   std::max(std::abs(v.theta_bar), std::abs(v.s_bar)) * w /
                                       (std::abs(std::log(u)) + 10.0 / u));
        }
    }
    b.add("traveling wave: continuity & speed", worst_cont, 1e-14);
    b.add("traveling wave: interface jumps", worst_jump, 1e-14);
    b.add("traveling wave: weighted decay", worst_decay, 2.0);
}

// --- expansion profiles ----------------------------------------------------

void check_zeroth_profiles(Battery& b) {
    double worst_iface = 0, worst_ode = 0;
    for (int i = 0; i < 50; ++i) {
        const double u = b.rng.uniform(0.05, 0.95);
        const double psi2 = b.rng.uniform(-3.0, 3.0);
        const auto at0m = ansatz_zeroth_profiles(u, -1e-14, psi2);
        const auto at0p = ansatz_zeroth_profiles(u, 0.0, psi2);
        worst_iface = std::max(worst_iface, std::abs(at0m.u1_0 - 0.0));
        worst_iface = std::max(worst_iface, rel(std::abs(at0m.v1_0 - at0p.v1_0),
                                                std::abs(psi2) + 1.0));
        // flux condition: (u1^0)_x(0) = U * v1^0(0)
        const double u1x0 = u * psi2;  // d/dx [U x e^{Ux} psi2] at 0
        worst_iface =
            std::max(worst_iface, rel(std::abs(u1x0 - u * at0p.v1_0), std::abs(u * psi2) + 1.0));
        // slope jump: [v_x] = -(1+ln U) u1_x(0)
        const double v_x_left = u * psi2 + u * std::log(u) * psi2;
        worst_iface = std::max(
            worst_iface,
            rel(std::abs((0.0 - v_x_left) + (1.0 + std::log(u)) * u1x0), std::abs(u * psi2) + 1.0));

        for (int s = 0; s < 8; ++s) {
            const double x = -b.rng.uniform(0.01, 10.0 / u);
            const double e = std::exp(u * x);
            // temperature equation: U u' - u'' = -U^2 e^{Ux} psi2
            const double up = u * (1.0 + u * x) * e * psi2;
            const double upp = u * u * (2.0 + u * x) * e * psi2;
            const double r1 = u * up - upp + u * u * e * psi2;
            worst_ode = std::max(worst_ode, rel(std::abs(r1), std::abs(u * up) + std::abs(upp)));
            // enthalpy equation: V u' - v'' + (1+lnU) u'' + U v' = -U^3 x e^{Ux} psi2
            const double log_u = std::log(u);
            const double vp =
                (u + u * log_u * (1.0 + u * x) + u * u * (2.0 * x + u * x * x)) * e * psi2;
            const double vpp = (u * u + u * log_u * (2.0 * u + u * u * x) +
                                u * u * (2.0 + 4.0 * u * x + u * u * x * x)) *
                               e * psi2;
            const double r2 = (-u * log_u) * up - vpp + (1.0 + log_u) * upp + u * vp +
                              u * u * u * x * e * psi2;
            const double scale = std::abs(u * log_u * up) + std::abs(vpp) +
                                 std::abs((1.0 + log_u) * upp) + std::abs(u * vp) + 1e-30;
            worst_ode = std::max(worst_ode, rel(std::abs(r2), scale));
        }
    }
    b.add("zeroth profiles: interface conditions", worst_iface, 1e-12);
    b.add("zeroth profiles: interior equations", worst_ode, 1e-12);
}

void check_solvability_elimination(Battery& b) {
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const double u = b.rng.uniform(0.05, 0.95);
        LeadingDerivatives<double> d;
        d.d_tau = b.rng.uniform(-3.0, 3.0);
        d.grad_sq = b.rng.uniform(-3.0, 3.0);
        d.d_eta2 = b.rng.uniform(-3.0, 3.0);
        d.d_eta4 = b.rng.uniform(-3.0, 3.0);
        const double psi1_eta2 = b.rng.uniform(-3.0, 3.0);
        const double v11 = b.rng.uniform(-3.0, 3.0);
        const auto r = first_order_interface_residuals(u, d, psi1_eta2, v11);
        const double combined = r.flux + r.jump;
        const double target = u * ks_residual_pointwise(d);
        worst = std::max(worst, std::abs(combined - target));
    }
    b.add("first-order system: free pair eliminates to K-S residual", worst, 1e-12);
}

// --- mode solutions ---------------------------------------------------------

void check_mode_solutions(Battery& b) {
    double worst_front = 0, worst_interior = 0, worst_bc = 0, worst_decay = 0;
    for (int k = 0; k <= 16; ++k) {
        for (int draw = 0; draw < 100; ++draw) {
            const ModelParams<double> params = b.random_params();
            const std::complex<double> phi = b.rng.complex_box(2.0);
            const std::complex<double> g = b.rng.complex_box(2.0);
            const std::complex<double> phit = solve_front_time_derivative(k, params, phi, g);
            const auto sol = mode_solution_build(k, params, phi, phit, g);
            const double u = params.u_flow;

            // remaining boundary condition must close
            const std::complex<double> res = front_equation_residual(k, params, phi, phit, g);
            const double scale = std::abs(u * sol.v_at_front()) + std::abs(sol.u_hat_x(0.0)) +
                                 std::abs(u * g / 2.0) + 1e-30;
            worst_front = std::max(worst_front, std::abs(res) / scale);

            // boundary conditions used in the construction
            worst_bc = std::max(worst_bc, std::abs(sol.u_hat(0.0)));
            worst_bc = std::max(worst_bc,
                                std::abs(sol.v_hat(0.0) - sol.v_hat(-1e-300)) /
                                    (std::abs(sol.v_hat(0.0)) + 1e-30));
            const double alpha = params.gamma + std::log(u);
            const std::complex<double> vx_right = sol.v_hat_x(1e-300);
            const std::complex<double> vx_left = sol.v_hat_x(-1e-300);
            const double jump_scale =
                std::abs(vx_right) + std::abs(vx_left) + std::abs(alpha * sol.u_hat_x(0.0)) + 1e-30;
            worst_bc = std::max(
                worst_bc, std::abs(vx_right - vx_left + alpha * sol.u_hat_x(0.0)) / jump_scale);

            // interior equations at Chebyshev-spaced x < 0 and two x > 0 points
            for (int j = 0; j < 20; ++j) {
                const double theta = (2.0 * j + 1.0) * std::numbers::pi / 40.0;
                const double x = -(10.0 / u) * (1.0 + std::cos(theta)) / 2.0;
                const auto r1 = mode_residual_temperature(sol, x);
                const auto r2 = mode_residual_enthalpy(sol, x);
                worst_interior =
                    std::max(worst_interior, std::abs(r1.residual) / (r1.scale + 1e-30));
                worst_interior =
                    std::max(worst_interior, std::abs(r2.residual) / (r2.scale + 1e-30));
            }
            for (double x : {0.5, 3.0}) {
                const auto r3 = mode_residual_enthalpy_right(sol, x);
                worst_interior =
                    std::max(worst_interior, std::abs(r3.residual) / (r3.scale + 1e-30));
            }

            // decay exponents against the e^{Ux/2} weight
            worst_decay = std::max(worst_decay, u / 2.0 - sol.nu + 1.0e-15);
            if (k >= 1) worst_decay = std::max(worst_decay, (u - sol.nu) + 1.0e-15);
        }
    }
    b.add("mode solutions: front equation closes", worst_front, 1e-10);
    b.add("mode solutions: interior equations", worst_interior, 1e-9);
    b.add("mode solutions: construction boundary conditions", worst_bc, 1e-10);
    b.add("mode solutions: decay exponents", worst_decay, 0.0);
}

// --- symbols ----------------------------------------------------------------

void check_symbol_identities(Battery& b) {
    double worst_pre = 0, worst_rescaled = 0, worst_bounds = 0;
    const double lambdas[] = {0.0,  1e-6, 1e-3, 0.1, 1.0,  3.7,  10.0,
                              1e2,  1e3,  1e4,  1e5, 1e6};
    for (int i = 0; i < 25; ++i) {
        const double u = b.rng.uniform(0.05, 0.95);
        const double gamma = b.rng.uniform(0.2, 3.0);
        for (double lam : lambdas) {
            const auto s = symbols_pre_rescale(u, gamma, lam);
            worst_pre = std::max(worst_pre,
                                 std::abs(s.a * s.b - s.l) / (std::abs(s.l) + 1e-30));
            worst_pre = std::max(worst_pre,
                                 std::abs(s.m * s.b - s.f) / (std::abs(s.f) + 1e-30));
        }
    }
    for (double eps : {1e-6, 1e-3, 0.1, 1.0}) {
        for (double lam : lambdas) {
            const auto s = symbols_rescaled(eps, lam);
            worst_rescaled =
                std::max(worst_rescaled,
                         std::abs(eps * s.h_eps + 1.0 - s.b_eps) / std::abs(s.b_eps));
            worst_rescaled =
                std::max(worst_rescaled,
                         std::abs(eps * s.m_eps - 0.5 - s.f_eps) / (std::abs(s.f_eps) + 1e-30));
            if (std::abs(s.h_eps) > 4.0 * lam) worst_bounds = std::max(worst_bounds, 1.0);
            if (std::abs(s.m_eps) > 2.0 * std::pow(lam, 1.5) + 25.0 * lam)
                worst_bounds = std::max(worst_bounds, 1.0);
        }
    }
    b.add("symbols: quotient identities (physical family)", worst_pre, 1e-11);
    b.add("symbols: difference-quotient identities (rescaled family)", worst_rescaled, 1e-11);
    b.add("symbols: multiplier growth bounds", worst_bounds, 0.0);
}

}  // namespace

bool VerifyReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

VerifyReport run_verification_battery(std::uint64_t seed) {
    Battery battery(seed);
    check_traveling_wave(battery);
    check_zeroth_profiles(battery);
    check_solvability_elimination(battery);
    check_mode_solutions(battery);
    check_symbol_identities(battery);
    return battery.report;
}

void print_verify_report(const VerifyReport& report, std::ostream& os) {
    os << std::left;
    for (const auto& c : report.checks) {
        os << (c.passed ? "PASS  " : "FAIL  ") << std::setw(58) << c.name << " worst "
           << std::scientific << std::setprecision(2) << c.worst << "  tol " << c.tolerance
           << std::defaultfloat << "\n";
    }
    os << (report.all_passed() ? "verification battery: all checks passed"
                               : "verification battery: FAILURES present")
       << "\n";
}

}  // namespace frontlab
