#pragma once

// Test-only reference implementations, kept independent of the code paths
// they check: a quadratic-time DFT pair, an exact spectral convolution for
// the squared derivative, a from-scratch semi-implicit Kuramoto-Sivashinsky
// stepper, and a deterministic random-field generator.

#include "frontlab/dynamics.hpp"
#include "frontlab/spectral.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace frontlab::testing {

struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(next_u64() >> 11) * 0x1.0p-53);
    }
    std::complex<double> complex_box(double radius) {
        return {uniform(-radius, radius), uniform(-radius, radius)};
    }
};

inline SpectralField<double> random_field(const GridConfig<double>& grid, TestRng& rng,
                                          double amplitude = 1.0) {
    SpectralField<double> f(grid);
    const Eigen::Index half = grid.spectrum_size() - 1;
    f.set_coeff(0, {rng.uniform(-amplitude, amplitude), 0.0});
    for (Eigen::Index k = 1; k < half; ++k) f.set_coeff(k, rng.complex_box(amplitude));
    f.set_coeff(half, {rng.uniform(-amplitude, amplitude), 0.0});
    return f;
}

// Direct O(N^2) synthesis from the one-sided spectrum at the grid nodes.
inline std::vector<double> dft_synthesis(const SpectralField<double>& field) {
    const Eigen::Index n = field.grid().n_modes;
    const Eigen::Index half = field.spectrum_size() - 1;
    std::vector<double> values(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double x = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        double acc = field.coeff(0).real();
        for (Eigen::Index k = 1; k < half; ++k) {
            const std::complex<double> c = field.coeff(k);
            acc += 2.0 * (c.real() * std::cos(k * x) - c.imag() * std::sin(k * x));
        }
        acc += field.coeff(half).real() * std::cos(half * x);
        values[j] = acc;
    }
    return values;
}

// Direct O(N^2) analysis: c_k = (1/N) sum_j f_j e^{-i k x_j}.
inline std::vector<std::complex<double>> dft_analysis(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::complex<double>> coeffs(n / 2 + 1);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) *
                                 static_cast<double>(j) / static_cast<double>(n);
            acc += values[j] * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        coeffs[k] = acc / static_cast<double>(n);
    }
    return coeffs;
}

// Exact two-sided convolution of the spectra of (d_x f) with itself,
// truncated to the same dealias band as the implementation.
inline std::vector<std::complex<double>> convolution_square_of_derivative(
    const SpectralField<double>& field) {
    const Eigen::Index half = field.spectrum_size() - 1;
    const Eigen::Index n2 = 2 * half;  // two-sided width
    auto two_sided = [&](Eigen::Index k) -> std::complex<double> {
        // derivative spectrum, Nyquist zeroed like the implementation
        if (k > -half && k < half && k != 0) {
            const double kappa = field.grid().wavenumber(std::abs(k));
            std::complex<double> c =
                k > 0 ? field.coeff(k) : std::conj(field.coeff(-k));
            return std::complex<double>(0.0, k > 0 ? kappa : -kappa) * c;
        }
        return {0.0, 0.0};
    };
    const Eigen::Index cutoff = field.grid().dealias_cutoff();
    std::vector<std::complex<double>> out(half + 1, {0.0, 0.0});
    for (Eigen::Index k = 0; k <= half; ++k) {
        if (k > cutoff) continue;  // dealiased away
        std::complex<double> acc{0.0, 0.0};
        for (Eigen::Index m = -n2; m <= n2; ++m) {
            const Eigen::Index other = k - m;
            if (std::abs(m) >= half || std::abs(other) >= half) continue;
            acc += two_sided(m) * two_sided(other);
        }
        out[k] = acc;
    }
    return out;
}

// Semi-implicit backward-Euler stepper for the Kuramoto-Sivashinsky equation
//   psi_t = -4 psi_xxxx - beta psi_xx - (beta/2)(psi_x)^2
// on the 2*pi grid, written directly from the equation. Shares only the FFT
// plumbing with the production stepper; every coefficient is re-derived here.
class KsReferenceStepper {
public:
    KsReferenceStepper(const GridConfig<double>& grid, double beta, double dt)
        : grid_(grid), denom_(grid.spectrum_size()), nl_(grid.spectrum_size()) {
        for (Eigen::Index k = 0; k < grid.spectrum_size(); ++k) {
            const double k2 = static_cast<double>(k) * static_cast<double>(k);
            const double k4 = k2 * k2;
            denom_[k] = 1.0 + 4.0 * k4 * dt - beta * k2 * dt;
            nl_[k] = beta * dt * -0.5;
        }
    }

    SpectralField<double> step(const SpectralField<double>& state) const {
        const SpectralField<double> nl = nonlinear_square_of_derivative(state);
        typename SpectralField<double>::CoeffArray out(state.spectrum_size());
        for (Eigen::Index k = 0; k < out.size(); ++k)
            out[k] = (1.0 * state.coeff(k) + nl_[k] * nl.coeff(k)) / denom_[k];
        return SpectralField<double>(grid_, std::move(out));
    }

private:
    GridConfig<double> grid_;
    std::vector<double> denom_, nl_;
};

inline bool bitwise_equal(const SpectralField<double>& a, const SpectralField<double>& b) {
    if (a.spectrum_size() != b.spectrum_size()) return false;
    for (Eigen::Index k = 0; k < a.spectrum_size(); ++k) {
        const auto ca = a.coeff(k), cb = b.coeff(k);
        if (ca.real() != cb.real() || ca.imag() != cb.imag()) return false;
    }
    return true;
}

}  // namespace frontlab::testing
