#pragma once

// Closed-form reference objects used to cross-check the solver and the model
// algebra: the planar traveling wave, the formal-expansion profiles and their
// solvability condition, the per-mode solutions of the linearized interface
// system, and the spectral antiderivative used to rebuild the front from its
// slope. Everything here is a pure function of scalar inputs so the oracles
// stay independent of the time stepper they are used to verify.

#include "frontlab/spectral.hpp"
#include "frontlab/symbols.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace frontlab {

// ---------------------------------------------------------------------------
// Traveling wave
// ---------------------------------------------------------------------------

template <class Scalar = double>
struct TravelingWave {
    Scalar u_flow;
    Scalar speed;  // V = -U ln U > 0 for U in (0,1)
};

template <class Scalar>
TravelingWave<Scalar> make_traveling_wave(Scalar u_flow) {
    if (!(u_flow > Scalar(0)) || !(u_flow < Scalar(1)))
        throw std::invalid_argument("traveling wave: u_flow must lie in (0,1)");
    return {u_flow, -u_flow * std::log(u_flow)};
}

template <class Scalar = double>
struct TravelingWaveValue {
    Scalar theta_bar;  // temperature profile
    Scalar s_bar;      // excess-enthalpy profile
};

/// Profile values in the frame moving with the front (front at x = 0):
///   theta(x) = e^{Ux} (x<=0), 1 (x>0);
///   S(x) = gamma*U*x*e^{Ux} + ln(U)*e^{Ux} (x<=0), ln(U) (x>0).
/// Both are continuous at 0 with theta(0)=1, S(0)=ln U.
template <class Scalar>
TravelingWaveValue<Scalar> traveling_wave_eval(Scalar u_flow, Scalar gamma, Scalar x) {
    if (!(u_flow > Scalar(0)) || !(u_flow < Scalar(1)))
        throw std::invalid_argument("traveling wave: u_flow must lie in (0,1)");
    const Scalar log_u = std::log(u_flow);
    if (x > Scalar(0)) return {Scalar(1), log_u};
    const Scalar e = std::exp(u_flow * x);
    return {e, gamma * u_flow * x * e + log_u * e};
}

// ---------------------------------------------------------------------------
// Formal expansion: zeroth-order profiles and first-order coefficients
// ---------------------------------------------------------------------------

template <class Scalar = double>
struct ZerothOrderProfiles {
    Scalar u1_0;
    Scalar v1_0;
};

/// Zeroth-order temperature/enthalpy corrections, parameterized by the scalar
/// value of the second eta-derivative of the leading front profile.
template <class Scalar>
ZerothOrderProfiles<Scalar> ansatz_zeroth_profiles(Scalar u_flow, Scalar x, Scalar psi0_eta2) {
    if (x >= Scalar(0)) return {Scalar(0), psi0_eta2};
    const Scalar e = std::exp(u_flow * x);
    const Scalar u = u_flow * x * e * psi0_eta2;
    const Scalar v =
        e * psi0_eta2 + u_flow * std::log(u_flow) * x * e * psi0_eta2 +
        u_flow * u_flow * x * x * e * psi0_eta2;
    return {u, v};
}

/// Pointwise values of the leading-profile derivatives entering the
/// first-order system: d/dtau, (d/deta)^2 [squared gradient], d^2/deta^2,
/// d^4/deta^4.
template <class Scalar = double>
struct LeadingDerivatives {
    Scalar d_tau;
    Scalar grad_sq;
    Scalar d_eta2;
    Scalar d_eta4;
};

template <class Scalar = double>
struct FirstOrderCoeffs {
    Scalar a, b, c;  // coefficients of x e^{Ux}, x^2 e^{Ux}, x^3 e^{Ux}
};

/// Coefficients of the first-order enthalpy correction on x < 0.
template <class Scalar>
FirstOrderCoeffs<Scalar> ansatz_first_order_coeffs(Scalar u_flow,
                                                   const LeadingDerivatives<Scalar>& d,
                                                   Scalar psi1_eta2) {
    const Scalar log_u = std::log(u_flow);
    const Scalar u2 = u_flow * u_flow;
    FirstOrderCoeffs<Scalar> c;
    c.a = u_flow * log_u * (psi1_eta2 - d.grad_sq + d.d_eta4) - u_flow * d.d_tau -
          u_flow * d.grad_sq - Scalar(3) * u_flow * d.d_eta4;
    c.b = u2 * d.d_eta2 + u2 * psi1_eta2 - u2 * d.grad_sq -
          u2 * log_u * d.d_eta4 / Scalar(2) + Scalar(3) * u2 * d.d_eta4 / Scalar(2);
    c.c = -u2 * u_flow * d.d_eta4 / Scalar(2);
    return c;
}

/// Kuramoto-Sivashinsky operator applied pointwise to a derivative tuple:
/// d_tau + d_eta2 + 4*d_eta4 + (1/2)*grad_sq.
template <class Scalar>
Scalar ks_residual_pointwise(const LeadingDerivatives<Scalar>& d) {
    return d.d_tau + d.d_eta2 + Scalar(4) * d.d_eta4 + d.grad_sq / Scalar(2);
}

template <class Scalar = double>
struct InterfaceResiduals {
    Scalar flux;  // lhs - rhs of the first-order flux condition
    Scalar jump;  // lhs - rhs of the first-order enthalpy-slope jump
};

/// Residuals of the two first-order interface conditions for arbitrary values
/// of the free pair (v1^1(0), psi^1_eta2). Their sum eliminates the free pair
/// identically and equals U times ks_residual_pointwise of the tuple.
template <class Scalar>
InterfaceResiduals<Scalar> first_order_interface_residuals(Scalar u_flow,
                                                           const LeadingDerivatives<Scalar>& d,
                                                           Scalar psi1_eta2, Scalar v11_at_0) {
    InterfaceResiduals<Scalar> r;
    r.flux = (-u_flow * d.d_eta4 + u_flow * d.grad_sq - u_flow * psi1_eta2 +
              u_flow * v11_at_0) -
             u_flow * d.grad_sq / Scalar(2);
    r.jump = (u_flow * psi1_eta2 - u_flow * v11_at_0) -
             (-u_flow * d.d_tau - u_flow * d.d_eta2 - Scalar(5) * u_flow * d.d_eta4);
    return r;
}

/// L2 norm of Phi_tau + Phi_eta2 + 4*Phi_eta4 + (1/2)(Phi_eta)^2, evaluated
/// spectrally with the dealiased product. A consistent trajectory pair from
/// the eps=0 stepper leaves a residual of size O(dt).
template <class Scalar>
Scalar solvability_residual(const SpectralField<Scalar>& phi,
                            const SpectralField<Scalar>& phi_tau) {
    phi.require_same_grid(phi_tau);
    SpectralField<Scalar> r = phi_tau + derivative(phi, 2) + Scalar(4) * derivative(phi, 4) +
                              Scalar(0.5) * nonlinear_square_of_derivative(phi);
    return norm_l2(r);
}

// ---------------------------------------------------------------------------
// Per-mode solutions of the linearized interface system
// ---------------------------------------------------------------------------

/// Mode-k solution of the coupled temperature/enthalpy system driven by the
/// Fourier data (phi_hat, phi_hat_t, grad_sq_hat) of the front. On x <= 0 the
/// temperature mode is
///     u(x) = u_exp_flow e^{Ux} + u_exp_nu e^{nu x} + u_x_exp_flow x e^{Ux}
/// and the enthalpy mode on x < 0 is
///     v(x) = v_exp_flow e^{Ux} + v_x_exp_flow x e^{Ux} + v_x2_exp_flow x^2 e^{Ux}
///          + v_exp_nu e^{nu x} + v_x_exp_nu x e^{nu x},
/// while on x >= 0 it is v(x) = v_right e^{(U-nu)x}. The decay exponent is
/// nu = U/2 + sqrt(U^2+4*lambda)/2. For k = 0 (lambda = 0, nu = U) the
/// resonant x^2 e^{Ux} coefficient is active instead of the e^{nu x} pair.
template <class Scalar = double>
struct ModeSolution {
    using Complex = std::complex<Scalar>;

    int k = 0;
    Scalar u_flow = Scalar(0), gamma = Scalar(0), lambda = Scalar(0), nu = Scalar(0);
    Complex phi_hat, phi_hat_t, grad_sq_hat;

    Complex u_exp_flow, u_exp_nu, u_x_exp_flow;
    Complex v_exp_flow, v_x_exp_flow, v_x2_exp_flow, v_exp_nu, v_x_exp_nu;
    Complex v_right;

    Complex u_hat(Scalar x) const {
        const Scalar eu = std::exp(u_flow * x), en = std::exp(nu * x);
        return u_exp_flow * eu + u_exp_nu * en + u_x_exp_flow * (x * eu);
    }
    Complex u_hat_x(Scalar x) const {
        const Scalar eu = std::exp(u_flow * x), en = std::exp(nu * x);
        return u_exp_flow * (u_flow * eu) + u_exp_nu * (nu * en) +
               u_x_exp_flow * ((Scalar(1) + u_flow * x) * eu);
    }
    Complex u_hat_xx(Scalar x) const {
        const Scalar eu = std::exp(u_flow * x), en = std::exp(nu * x);
        return u_exp_flow * (u_flow * u_flow * eu) + u_exp_nu * (nu * nu * en) +
               u_x_exp_flow * ((Scalar(2) * u_flow + u_flow * u_flow * x) * eu);
    }

    Complex v_hat(Scalar x) const {
        if (x >= Scalar(0)) return v_right * std::exp((u_flow - nu) * x);
        const Scalar eu = std::exp(u_flow * x), en = std::exp(nu * x);
        return v_exp_flow * eu + v_x_exp_flow * (x * eu) + v_x2_exp_flow * (x * x * eu) +
               v_exp_nu * en + v_x_exp_nu * (x * en);
    }
    Complex v_hat_x(Scalar x) const {
        if (x >= Scalar(0)) return v_right * ((u_flow - nu) * std::exp((u_flow - nu) * x));
        const Scalar eu = std::exp(u_flow * x), en = std::exp(nu * x);
        const Scalar u = u_flow;
        return (v_exp_flow * u + v_x_exp_flow * (Scalar(1) + u * x) +
                v_x2_exp_flow * (Scalar(2) * x + u * x * x)) *
                   eu +
               (v_exp_nu * nu + v_x_exp_nu * (Scalar(1) + nu * x)) * en;
    }
    Complex v_hat_xx(Scalar x) const {
        if (x >= Scalar(0)) {
            const Scalar mu = u_flow - nu;
            return v_right * (mu * mu * std::exp(mu * x));
        }
        const Scalar eu = std::exp(u_flow * x), en = std::exp(nu * x);
        const Scalar u = u_flow;
        return (v_exp_flow * (u * u) + v_x_exp_flow * (Scalar(2) * u + u * u * x) +
                v_x2_exp_flow * (Scalar(2) + Scalar(4) * u * x + u * u * x * x)) *
                   eu +
               (v_exp_nu * (nu * nu) + v_x_exp_nu * (Scalar(2) * nu + nu * nu * x)) * en;
    }

    /// Value of v at the front, from the right branch (equals the left limit).
    Complex v_at_front() const { return v_right; }
};

template <class Scalar>
ModeSolution<Scalar> mode_solution_build(int k, const ModelParams<Scalar>& params,
                                         std::complex<Scalar> phi_hat,
                                         std::complex<Scalar> phi_hat_t,
                                         std::complex<Scalar> grad_sq_hat) {
    if (k < 0) throw std::invalid_argument("mode_solution_build: k must be >= 0");
    params.validate_pre_rescaled();
    using Complex = std::complex<Scalar>;
    const Scalar u = params.u_flow;
    const Scalar gamma = params.gamma;
    const Scalar alpha = gamma + std::log(u);
    const Scalar kappa = two_pi_v<Scalar> * Scalar(k) / params.ell;
    const Scalar lambda = kappa * kappa;

    ModeSolution<Scalar> sol;
    sol.k = k;
    sol.u_flow = u;
    sol.gamma = gamma;
    sol.lambda = lambda;
    sol.nu = u / Scalar(2) + symbol_root(u, lambda) / Scalar(2);
    sol.phi_hat = phi_hat;
    sol.phi_hat_t = phi_hat_t;
    sol.grad_sq_hat = grad_sq_hat;

    if (k == 0) {
        sol.u_x_exp_flow = -u * grad_sq_hat;
        sol.v_exp_flow = phi_hat_t / u;
        sol.v_x_exp_flow = -gamma * u * grad_sq_hat - u * std::log(u) * grad_sq_hat - phi_hat_t;
        sol.v_x2_exp_flow = -gamma * u * u * grad_sq_hat;
        sol.v_right = phi_hat_t / u;
        return sol;
    }

    const Scalar nu = sol.nu;
    const Scalar u2 = u * u;
    const Scalar u3 = u2 * u;
    const Scalar d = u - Scalar(2) * nu;  // equals -sqrt(U^2+4*lambda), never 0

    const Complex u_coeff = u / lambda * (u * grad_sq_hat + lambda * phi_hat);
    sol.u_exp_flow = u_coeff;
    sol.u_exp_nu = -u_coeff;

    const Complex a_coeff =
        (alpha + gamma) * u2 / lambda * grad_sq_hat + alpha * u * phi_hat + u / lambda * phi_hat_t;
    const Complex b_coeff = gamma * u3 / lambda * grad_sq_hat + gamma * u2 * phi_hat;
    const Complex c_coeff =
        gamma * u3 * nu / (lambda * d) * grad_sq_hat + gamma * u2 * nu / d * phi_hat;
    const Complex right =
        (gamma * u2 * (u - nu) / (lambda * d) + gamma * u3 / (lambda * d) +
         gamma * u3 / ((nu - u) * d * d)) *
            grad_sq_hat +
        (gamma * u2 / d + gamma * u2 * nu / (d * d)) * phi_hat +
        u * (u - nu) / (lambda * d) * phi_hat_t;

    sol.v_exp_flow = a_coeff;
    sol.v_x_exp_flow = b_coeff;
    sol.v_x_exp_nu = c_coeff;
    sol.v_right = right;
    sol.v_exp_nu = right - a_coeff;
    return sol;
}

/// Residual of the one interface condition not used in the construction:
/// U v(0) - u_x(0^-) - (1/2) U ghat. It vanishes exactly when the Fourier
/// data satisfies the compact front equation at mode k; the proportionality
/// factor is U/(nu_k X_k^2) > 0.
template <class Scalar>
std::complex<Scalar> front_equation_residual(int k, const ModelParams<Scalar>& params,
                                             std::complex<Scalar> phi_hat,
                                             std::complex<Scalar> phi_hat_t,
                                             std::complex<Scalar> grad_sq_hat) {
    const ModeSolution<Scalar> sol = mode_solution_build(k, params, phi_hat, phi_hat_t,
                                                         grad_sq_hat);
    return params.u_flow * sol.v_at_front() - sol.u_hat_x(Scalar(0)) -
           params.u_flow * grad_sq_hat / Scalar(2);
}

/// phi_hat_t solving the compact front equation for given (phi_hat, ghat):
/// (X_k U) phi_hat_t = l_k phi_hat + f_k ghat.
template <class Scalar>
std::complex<Scalar> solve_front_time_derivative(int k, const ModelParams<Scalar>& params,
                                                 std::complex<Scalar> phi_hat,
                                                 std::complex<Scalar> grad_sq_hat) {
    params.validate_pre_rescaled();
    const Scalar kappa = two_pi_v<Scalar> * Scalar(k) / params.ell;
    const FrontSymbols<Scalar> sym =
        symbols_pre_rescale(params.u_flow, params.gamma, kappa * kappa);
    return (sym.l * phi_hat + sym.f * grad_sq_hat) / sym.b;
}

// ---------------------------------------------------------------------------
// Interior-equation residuals for the mode solutions (oracle checks)
// ---------------------------------------------------------------------------

template <class Scalar = double>
struct ModeResidual {
    std::complex<Scalar> residual;
    Scalar scale;  // sum of the magnitudes of the additive terms
};

/// Temperature equation on x < 0: U u_x - u_xx + lambda u = (U g + lambda phi) U e^{Ux}.
template <class Scalar>
ModeResidual<Scalar> mode_residual_temperature(const ModeSolution<Scalar>& sol, Scalar x) {
    using Complex = std::complex<Scalar>;
    const Scalar u = sol.u_flow;
    const Complex t1 = u * sol.u_hat_x(x);
    const Complex t2 = -sol.u_hat_xx(x);
    const Complex t3 = sol.lambda * sol.u_hat(x);
    const Complex rhs =
        (u * sol.grad_sq_hat + sol.lambda * sol.phi_hat) * (u * std::exp(u * x));
    return {t1 + t2 + t3 - rhs,
            std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(rhs)};
}

/// Enthalpy equation on x < 0:
/// V u_x - v_xx + lambda v + alpha (u_xx - lambda u) + U v_x
///   = U phi_t e^{Ux} + gamma U^2 (1+Ux) g e^{Ux} + gamma U^2 lambda x phi e^{Ux}.
template <class Scalar>
ModeResidual<Scalar> mode_residual_enthalpy(const ModeSolution<Scalar>& sol, Scalar x) {
    using Complex = std::complex<Scalar>;
    const Scalar u = sol.u_flow;
    const Scalar alpha = sol.gamma + std::log(u);
    const Scalar v_speed = -u * std::log(u);
    const Scalar eu = std::exp(u * x);
    const Complex t1 = v_speed * sol.u_hat_x(x);
    const Complex t2 = -sol.v_hat_xx(x);
    const Complex t3 = sol.lambda * sol.v_hat(x);
    const Complex t4 = alpha * (sol.u_hat_xx(x) - sol.lambda * sol.u_hat(x));
    const Complex t5 = u * sol.v_hat_x(x);
    const Complex rhs = u * sol.phi_hat_t * eu +
                        sol.gamma * u * u * (Scalar(1) + u * x) * sol.grad_sq_hat * eu +
                        sol.gamma * u * u * sol.lambda * x * sol.phi_hat * eu;
    return {t1 + t2 + t3 + t4 + t5 - rhs, std::abs(t1) + std::abs(t2) + std::abs(t3) +
                                              std::abs(t4) + std::abs(t5) + std::abs(rhs)};
}

/// Enthalpy equation on x > 0: U v_x - v_xx + lambda v = 0.
template <class Scalar>
ModeResidual<Scalar> mode_residual_enthalpy_right(const ModeSolution<Scalar>& sol, Scalar x) {
    using Complex = std::complex<Scalar>;
    const Scalar u = sol.u_flow;
    const Complex t1 = u * sol.v_hat_x(x);
    const Complex t2 = -sol.v_hat_xx(x);
    const Complex t3 = sol.lambda * sol.v_hat(x);
    return {t1 + t2 + t3, std::abs(t1) + std::abs(t2) + std::abs(t3)};
}

// ---------------------------------------------------------------------------
// Front reconstruction from its slope
// ---------------------------------------------------------------------------

/// Mean-zero spectral antiderivative of zeta plus the constant upsilon:
/// derivative(result) = zeta - mean(zeta) and mean(result) = upsilon. The
/// sign-ambiguous Nyquist mode of zeta is dropped, as in derivative().
template <class Scalar>
SpectralField<Scalar> reconstruct_rho(const SpectralField<Scalar>& zeta, Scalar upsilon) {
    using Complex = std::complex<Scalar>;
    typename SpectralField<Scalar>::CoeffArray out = zeta.coeffs();
    const Eigen::Index half = out.size() - 1;
    out[0] = Complex(upsilon, 0);
    out[half] = Complex(0, 0);
    for (Eigen::Index k = 1; k < half; ++k) {
        const Scalar kappa = zeta.grid().wavenumber(k);
        out[k] /= Complex(0, kappa);
    }
    return SpectralField<Scalar>(zeta.grid(), std::move(out));
}

}  // namespace frontlab
