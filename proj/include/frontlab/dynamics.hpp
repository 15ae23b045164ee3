#pragma once

// Semi-implicit pseudo-spectral time stepping for the rescaled fourth-order
// front equation. Linear terms are treated implicitly (backward Euler), the
// quadratic nonlinearity explicitly at the previous state; per mode k the
// update is
//
//   psi_k^{n+1} = (b_k * psi_k^n + beta*dt*f_k * N_k^n) / (b_k + 4*lambda_k^2*dt - beta*lambda_k*dt)
//
// with b_k = sqrt(1+4*eps*lambda_k), N^n the dealiased coefficients of
// (d_x psi^n)^2, and f_k the nonlinear symbol. At eps = 0 the coefficients
// reduce exactly (not approximately) to the semi-implicit scheme for the
// Kuramoto-Sivashinsky equation. The k=0 (drift) mode is evolved like every
// other mode, not projected out.
//
// Also the linear changes of variables connecting the physical front, the
// rescaled front, and the [0,2*pi] working interval of the scheme.

#include "frontlab/spectral.hpp"
#include "frontlab/symbols.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace frontlab {

template <class Scalar = double>
struct StepDiagnostics {
    Scalar t;
    Scalar l2_norm;
    Scalar sup_norm;
    Scalar mean;
    Scalar zero_mean_l2;  // L2 norm of the field with the drift mode removed
};

/// Time-ordered snapshots plus per-step scalar diagnostics. `blew_up` is set
/// when the blow-up guard tripped; the trajectory then ends at `end_time`.
template <class Scalar = double>
struct Trajectory {
    std::vector<Scalar> times;                     // snapshot times, strictly increasing
    std::vector<SpectralField<Scalar>> snapshots;  // one field per entry of `times`
    std::vector<StepDiagnostics<Scalar>> diagnostics;
    bool blew_up = false;
    Scalar end_time = Scalar(0);
};

/// Immutable once built; concurrent simulations may share one stepper.
template <class Scalar = double>
class Stepper {
public:
    Stepper(const GridConfig<Scalar>& grid, const ModelParams<Scalar>& params)
        : grid_(grid), params_(params), table_(grid, params.eps, params.beta, params.dt) {
        params.validate_rescaled();
    }

    const GridConfig<Scalar>& grid() const { return grid_; }
    const ModelParams<Scalar>& params() const { return params_; }
    const SymbolTable<Scalar>& table() const { return table_; }

    SpectralField<Scalar> step(const SpectralField<Scalar>& state) const {
        if (!(state.grid() == grid_))
            throw std::invalid_argument("stepper: state grid does not match");
        const SpectralField<Scalar> nl = nonlinear_square_of_derivative(state);
        typename SpectralField<Scalar>::CoeffArray out(state.spectrum_size());
        for (Eigen::Index k = 0; k < out.size(); ++k)
            out[k] = (table_.b(k) * state.coeff(k) + table_.nonlinear_weight(k) * nl.coeff(k)) /
                     table_.denominator(k);
        SpectralField<Scalar> next(grid_, std::move(out));
        if (!next.all_finite())
            throw NumericError("stepper: state became non-finite (reduce dt or amplitude)");
        return next;
    }

private:
    GridConfig<Scalar> grid_;
    ModelParams<Scalar> params_;
    SymbolTable<Scalar> table_;
};

/// Repeated stepping up to t_final. Diagnostics are recorded every step
/// (including the initial state); snapshots every `snapshot_stride` steps
/// plus the initial and final states. Stops early, with `blew_up` set, once
/// the sup norm exceeds `blowup_sup`.
template <class Scalar>
Trajectory<Scalar> simulate(const SpectralField<Scalar>& initial, const Stepper<Scalar>& stepper,
                            Scalar t_final, long snapshot_stride = 100,
                            Scalar blowup_sup = Scalar(1e6)) {
    if (!(t_final > Scalar(0))) throw std::invalid_argument("simulate: t_final must be > 0");
    if (snapshot_stride < 1) throw std::invalid_argument("simulate: snapshot_stride must be >= 1");
    const Scalar dt = stepper.params().dt;
    const long n_steps = std::max<long>(1, std::lround(static_cast<double>(t_final / dt)));

    Trajectory<Scalar> traj;
    traj.times.reserve(n_steps / snapshot_stride + 2);
    traj.snapshots.reserve(n_steps / snapshot_stride + 2);
    traj.diagnostics.reserve(n_steps + 1);

    SpectralField<Scalar> state = initial;
    auto record = [&](long n, bool want_snapshot) {
        const Scalar t = Scalar(n) * dt;
        const Scalar sup = norm_sup(state);
        traj.diagnostics.push_back(
            {t, norm_l2(state), sup, state.mean(), norm_l2_zero_mean(state)});
        if (want_snapshot) {
            traj.times.push_back(t);
            traj.snapshots.push_back(state);
        }
        traj.end_time = t;
        return sup;
    };
    record(0, true);

    for (long n = 1; n <= n_steps; ++n) {
        state = stepper.step(state);
        const bool snap = (n % snapshot_stride == 0) || n == n_steps;
        const Scalar sup = record(n, snap);
        if (sup > blowup_sup) {
            traj.blew_up = true;
            if (!snap) {  // keep the offending state for inspection
                traj.times.push_back(Scalar(n) * dt);
                traj.snapshots.push_back(state);
            }
            break;
        }
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Changes of variables between the model's coordinate frames.
// Physical front phi(t, y) <-> rescaled front psi(tau, eta):
//   tau = eps^2 U^2 t,  eta = sqrt(eps) U y,  psi = (U/eps) phi.
// All maps are singular at eps = 0 and reject it.
// ---------------------------------------------------------------------------

enum class RescaleDirection { PhysicalToRescaled, RescaledToPhysical };

namespace detail {
template <class Scalar>
void require_positive_eps(Scalar eps) {
    if (!(eps > Scalar(0)))
        throw std::invalid_argument("rescale: eps must be > 0 (the scaling is singular at 0)");
}
template <class Scalar>
void require_flow(Scalar u_flow) {
    if (!(u_flow > Scalar(0)) || !(u_flow < Scalar(1)))
        throw std::invalid_argument("rescale: u_flow must lie in (0,1)");
}
}  // namespace detail

/// phi -> psi = (U/eps) * phi.
template <class Scalar>
Scalar front_to_psi(Scalar phi_value, Scalar eps, Scalar u_flow) {
    detail::require_positive_eps(eps);
    detail::require_flow(u_flow);
    return u_flow / eps * phi_value;
}

/// psi -> phi = (eps/U) * psi.
template <class Scalar>
Scalar psi_to_front(Scalar psi_value, Scalar eps, Scalar u_flow) {
    detail::require_positive_eps(eps);
    detail::require_flow(u_flow);
    return eps / u_flow * psi_value;
}

/// (t, y) <-> (tau, eta); returns the mapped pair in the target coordinates.
template <class Scalar>
std::pair<Scalar, Scalar> rescale_coords(Scalar time_like, Scalar space_like,
                                         RescaleDirection direction, Scalar eps, Scalar u_flow) {
    detail::require_positive_eps(eps);
    detail::require_flow(u_flow);
    const Scalar u2 = u_flow * u_flow;
    const Scalar root_eps = std::sqrt(eps);
    if (direction == RescaleDirection::PhysicalToRescaled)
        return {eps * eps * u2 * time_like, root_eps * u_flow * space_like};
    return {time_like / (eps * eps * u2), space_like / (root_eps * u_flow)};
}

/// The maps that bring the eta-interval of width ell0 onto [0, 2*pi]:
/// x = eta/(2*ell_tilde), ell_tilde = ell0/(4*pi), beta = 4*ell_tilde^2,
/// t = tau/beta^2, and the perturbation knob shrinks to eps/beta.
template <class Scalar = double>
struct Section5Rescaling {
    Scalar ell0;
    Scalar ell_tilde;
    Scalar beta;

    Scalar x_of_eta(Scalar eta) const { return eta / (Scalar(2) * ell_tilde); }
    Scalar eta_of_x(Scalar x) const { return Scalar(2) * ell_tilde * x; }
    Scalar t_of_tau(Scalar tau) const { return tau / (beta * beta); }
    Scalar tau_of_t(Scalar t) const { return t * beta * beta; }
    Scalar scheme_eps(Scalar eps) const { return eps / beta; }
    Scalar unscaled_eps(Scalar scheme_eps_value) const { return scheme_eps_value * beta; }
};

template <class Scalar>
Section5Rescaling<Scalar> rescale_working_interval(Scalar ell0) {
    if (!(ell0 > Scalar(0)))
        throw std::invalid_argument("rescale_working_interval: ell0 must be > 0");
    Section5Rescaling<Scalar> r;
    r.ell0 = ell0;
    r.ell_tilde = ell0 / (Scalar(2) * two_pi_v<Scalar>);
    r.beta = Scalar(4) * r.ell_tilde * r.ell_tilde;
    return r;
}

using Stepperd = Stepper<double>;
using Trajectoryd = Trajectory<double>;

}  // namespace frontlab
