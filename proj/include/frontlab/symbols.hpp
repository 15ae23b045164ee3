#pragma once

// Fourier-multiplier symbols of the front model, in both parameterizations:
// the physical-strip family (flow intensity U, reduced parameter gamma) and
// the rescaled family used by the time stepper (eps, beta). Also the spectrum
// of the linearized front operator, its critical threshold, and the
// precomputed per-mode tables consumed by the semi-implicit scheme.

#include "frontlab/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace frontlab {

/// Numeric failure of the scheme itself (bad denominator, non-finite state),
/// as opposed to invalid configuration.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class Scalar = double>
struct ModelParams {
    Scalar u_flow = Scalar(0.5);      // U in (0,1), pre-rescaled operations only
    Scalar gamma = Scalar(1);         // gamma = alpha - ln U
    Scalar eps = Scalar(0.001);       // perturbation knob of the rescaled scheme
    Scalar beta = Scalar(10);         // bifurcation parameter beta = 4*(ell0/(4*pi))^2
    Scalar ell = two_pi_v<Scalar>;    // strip width for spectrum/threshold queries
    Scalar dt = Scalar(1e-4);         // time step of the scheme

    void validate_rescaled() const {
        if (!(eps >= Scalar(0))) throw std::invalid_argument("params: eps must be >= 0");
        if (!(beta > Scalar(0))) throw std::invalid_argument("params: beta must be > 0");
        if (!(dt > Scalar(0))) throw std::invalid_argument("params: dt must be > 0");
    }
    void validate_pre_rescaled() const {
        if (!(u_flow > Scalar(0)) || !(u_flow < Scalar(1)))
            throw std::invalid_argument("params: u_flow must lie in (0,1)");
        if (!(ell > Scalar(0))) throw std::invalid_argument("params: ell must be > 0");
    }
};

/// X_k = sqrt(U^2 + 4*lambda).
template <class Scalar>
Scalar symbol_root(Scalar u_flow, Scalar lambda) {
    return std::sqrt(u_flow * u_flow + Scalar(4) * lambda);
}

/// X_{eps,k} = sqrt(1 + 4*eps*lambda).
template <class Scalar>
Scalar symbol_root_rescaled(Scalar eps, Scalar lambda) {
    return std::sqrt(Scalar(1) + Scalar(4) * eps * lambda);
}

/// Symbols of the pre-rescaled operators at one eigenvalue lambda:
/// b (time-derivative weight), l (linear part), f (nonlinear part),
/// a = l/b and m = f/b (third-order form), and the decay exponent nu.
/// All formulas are well defined for every gamma, including gamma = 1/2
/// (which only degrades one large-lambda asymptotic split, not the values).
template <class Scalar = double>
struct FrontSymbols {
    Scalar b, l, f, a, m, nu;
};

template <class Scalar>
FrontSymbols<Scalar> symbols_pre_rescale(Scalar u_flow, Scalar gamma, Scalar lambda) {
    const Scalar x = symbol_root(u_flow, lambda);
    const Scalar u2 = u_flow * u_flow;
    FrontSymbols<Scalar> s;
    s.b = x * u_flow;
    s.l = -Scalar(4) * lambda * lambda + (gamma - Scalar(1)) * lambda * u2;
    s.f = (x * x * x - Scalar(3) * u_flow * x * x - Scalar(4) * gamma * u2 * x +
           Scalar(4) * gamma * u2 * u_flow) /
          Scalar(4);
    // a = (U^2 - X^2)(X^2 - gamma U^2)/(4 U X) with U^2 - X^2 = -4*lambda used
    // exactly, so the identity a*b = l survives at tiny lambda.
    s.a = -lambda * (Scalar(4) * lambda - (gamma - Scalar(1)) * u2) / (u_flow * x);
    s.m = (x * x * x - Scalar(3) * u_flow * x * x - Scalar(4) * gamma * u2 * x +
           Scalar(4) * gamma * u2 * u_flow) /
          (Scalar(4) * u_flow * x);
    s.nu = u_flow / Scalar(2) + x / Scalar(2);
    return s;
}

template <class Scalar>
FrontSymbols<Scalar> symbols_pre_rescale(const ModelParams<Scalar>& params, Scalar lambda) {
    params.validate_pre_rescaled();
    return symbols_pre_rescale(params.u_flow, params.gamma, lambda);
}

/// Symbols of the rescaled (eps, beta)-family at one eigenvalue lambda.
/// h and m are the difference quotients (X-1)/eps and (f+1/2)/eps, evaluated
/// through X - 1 = 4*eps*lambda/(1+X) so they stay exact down to eps = 0,
/// where h -> 2*lambda and m -> -7*lambda/2.
template <class Scalar = double>
struct RescaledSymbols {
    Scalar b_eps, s, f_eps, h_eps, m_eps;
};

template <class Scalar>
RescaledSymbols<Scalar> symbols_rescaled(Scalar eps, Scalar lambda) {
    if (!(eps >= Scalar(0))) throw std::invalid_argument("symbols_rescaled: eps must be >= 0");
    const Scalar x = symbol_root_rescaled(eps, lambda);
    const Scalar delta = Scalar(4) * eps * lambda / (Scalar(1) + x);  // X - 1, cancellation-free
    RescaledSymbols<Scalar> s;
    s.b_eps = x;
    s.s = -lambda * (Scalar(4) * lambda - Scalar(1));
    s.h_eps = Scalar(4) * lambda / (Scalar(1) + x);
    s.m_eps = (eps * eps * s.h_eps * s.h_eps * s.h_eps - (Scalar(7) + Scalar(4) * eps) * s.h_eps) /
              Scalar(4);
    s.f_eps = (x * x * (x - Scalar(3)) - Scalar(4) * (Scalar(1) + eps) * delta) / Scalar(4);
    return s;
}

/// gamma_c = 1 + 16*pi^2/(ell^2 U^2): the null front is linearly stable
/// below it and unstable above it.
template <class Scalar>
Scalar gamma_critical(Scalar ell, Scalar u_flow) {
    if (!(ell > Scalar(0))) throw std::invalid_argument("gamma_critical: ell must be > 0");
    if (!(u_flow > Scalar(0))) throw std::invalid_argument("gamma_critical: u_flow must be > 0");
    const Scalar p = two_pi_v<Scalar> / (ell * u_flow);
    return Scalar(1) + Scalar(4) * p * p;
}

enum class Stability { Stable, Unstable, Critical };

inline const char* to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "stable";
        case Stability::Unstable: return "unstable";
        default: return "critical";
    }
}

/// Spectrum of the linearized front operator up to mode k_max, with the
/// stability classification implied by the sign pattern. a_0 = 0 always;
/// the classification is decided by the k >= 1 eigenvalues.
template <class Scalar = double>
struct StabilityReport {
    Scalar gamma_c = Scalar(0);
    std::vector<Scalar> eigenvalues;  // a_k, k = 0..k_max
    std::vector<Scalar> lambdas;      // lambda_k on the same index range
    Stability classification = Stability::Stable;
    int most_unstable_k = 1;
};

/// Threshold below which an eigenvalue is treated as sitting on the boundary.
template <class Scalar>
inline constexpr Scalar critical_eigenvalue_tol = Scalar(1e-12);

template <class Scalar>
StabilityReport<Scalar> spectrum_report(const ModelParams<Scalar>& params, int k_max) {
    params.validate_pre_rescaled();
    if (k_max < 1) throw std::invalid_argument("spectrum_report: k_max must be >= 1");
    StabilityReport<Scalar> report;
    report.gamma_c = gamma_critical(params.ell, params.u_flow);
    report.eigenvalues.resize(k_max + 1);
    report.lambdas.resize(k_max + 1);
    bool any_positive = false, any_critical = false;
    Scalar best = std::numeric_limits<Scalar>::lowest();
    for (int k = 0; k <= k_max; ++k) {
        const Scalar kappa = two_pi_v<Scalar> * Scalar(k) / params.ell;
        const Scalar lambda = kappa * kappa;
        report.lambdas[k] = lambda;
        const Scalar a = symbols_pre_rescale(params.u_flow, params.gamma, lambda).a;
        report.eigenvalues[k] = a;
        if (k >= 1) {
            if (std::abs(a) < critical_eigenvalue_tol<Scalar>) any_critical = true;
            if (a > Scalar(0)) any_positive = true;
            if (a > best) {
                best = a;
                report.most_unstable_k = k;
            }
        }
    }
    report.classification = any_critical ? Stability::Critical
                            : any_positive ? Stability::Unstable
                                           : Stability::Stable;
    return report;
}

/// Mean of the field: the spectral projection onto the null eigenfunction.
template <class Scalar>
Scalar projection_mean(const SpectralField<Scalar>& field) {
    return field.mean();
}

/// Per-mode tables of the semi-implicit scheme at fixed (grid, eps, beta, dt):
///   numerator weight   b_k   = sqrt(1 + 4*eps*lambda_k)
///   denominator        d_k   = b_k + 4*lambda_k^2*dt - beta*lambda_k*dt
///   nonlinear weight   nl_k  = beta*dt*f_{eps,k}
/// Construction fails exactly when some denominator is nonpositive.
template <class Scalar = double>
class SymbolTable {
public:
    SymbolTable() = default;

    SymbolTable(const GridConfig<Scalar>& grid, Scalar eps, Scalar beta, Scalar dt)
        : grid_(grid), eps_(eps), beta_(beta), dt_(dt) {
        grid.validate();
        if (!(eps >= Scalar(0))) throw std::invalid_argument("symbol table: eps must be >= 0");
        if (!(beta > Scalar(0))) throw std::invalid_argument("symbol table: beta must be > 0");
        if (!(dt > Scalar(0))) throw std::invalid_argument("symbol table: dt must be > 0");
        const Eigen::Index size = grid.spectrum_size();
        b_.resize(size);
        s_.resize(size);
        f_.resize(size);
        denominator_.resize(size);
        nonlinear_.resize(size);
        for (Eigen::Index k = 0; k < size; ++k) {
            const Scalar lambda = grid.lambda(k);
            const RescaledSymbols<Scalar> sym = symbols_rescaled(eps, lambda);
            b_[k] = sym.b_eps;
            s_[k] = sym.s;
            f_[k] = sym.f_eps;
            denominator_[k] = sym.b_eps + Scalar(4) * lambda * lambda * dt - beta * lambda * dt;
            nonlinear_[k] = beta * dt * sym.f_eps;
            if (!(denominator_[k] > Scalar(0)))
                throw NumericError("symbol table: nonpositive scheme denominator at mode k=" +
                                   std::to_string(k) + " (beta*dt too large for this grid)");
        }
    }

    const GridConfig<Scalar>& grid() const { return grid_; }
    Scalar eps() const { return eps_; }
    Scalar beta() const { return beta_; }
    Scalar dt() const { return dt_; }

    Scalar b(Eigen::Index k) const { return b_[k]; }
    Scalar linear(Eigen::Index k) const { return s_[k]; }
    Scalar f(Eigen::Index k) const { return f_[k]; }
    Scalar denominator(Eigen::Index k) const { return denominator_[k]; }
    Scalar nonlinear_weight(Eigen::Index k) const { return nonlinear_[k]; }

private:
    GridConfig<Scalar> grid_;
    Scalar eps_ = Scalar(0), beta_ = Scalar(1), dt_ = Scalar(1);
    Eigen::ArrayX<Scalar> b_, s_, f_, denominator_, nonlinear_;
};

using ModelParamsd = ModelParams<double>;
using SymbolTabled = SymbolTable<double>;
using StabilityReportd = StabilityReport<double>;

}  // namespace frontlab
