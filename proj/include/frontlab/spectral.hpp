#pragma once

// Periodic pseudo-spectral infrastructure: grid, transforms, derivatives,
// the dealiased quadratic nonlinearity and the norms used by the solver.
//
// A real periodic field is stored one-sided: complex coefficients c_k for
// k = 0..N/2 with the implicit Hermitian extension c_{-k} = conj(c_k), so
// the real-field constraint is structural. Signed wavenumbers index the
// doubled (+k/-k) Laplacian eigenspaces, with lambda_k = (2*pi*k/period)^2.
//
// Normalization: c_0 is the mean of the nodal values.
//
// Everything here is a pure function of its inputs; fields are freely
// shareable across threads (transform scratch lives in thread-local engines).

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace frontlab {

template <class Scalar>
inline constexpr Scalar two_pi_v = Scalar(2) * std::numbers::pi_v<Scalar>;

/// Uniform periodic grid on [0, period), N nodes, one-sided spectrum of
/// size N/2+1. dealias_fraction is the fraction of the band retained after
/// quadratic products (2/3 rule by default).
template <class Scalar = double>
struct GridConfig {
    Eigen::Index n_modes = 256;
    Scalar period = two_pi_v<Scalar>;
    Scalar dealias_fraction = Scalar(2) / Scalar(3);

    void validate() const {
        if (n_modes < 8 || n_modes % 2 != 0)
            throw std::invalid_argument("grid: n_modes must be even and >= 8");
        if (!(period > Scalar(0)))
            throw std::invalid_argument("grid: period must be > 0");
        if (!(dealias_fraction > Scalar(0)) || dealias_fraction > Scalar(1))
            throw std::invalid_argument("grid: dealias_fraction must lie in (0, 1]");
        if (dealias_cutoff() < 1)
            throw std::invalid_argument("grid: dealias_fraction * (n_modes/2) must be >= 1");
    }

    Eigen::Index spectrum_size() const { return n_modes / 2 + 1; }

    Scalar node(Eigen::Index j) const { return period * Scalar(j) / Scalar(n_modes); }

    /// 2*pi*k/period. On a 2*pi grid this is exactly k.
    Scalar wavenumber(Eigen::Index k) const { return (two_pi_v<Scalar> / period) * Scalar(k); }

    /// Laplacian eigenvalue magnitude lambda_k = (2*pi*k/period)^2.
    Scalar lambda(Eigen::Index k) const {
        const Scalar kappa = wavenumber(k);
        return kappa * kappa;
    }

    /// Highest mode kept by the dealiasing rule.
    Eigen::Index dealias_cutoff() const {
        return static_cast<Eigen::Index>(dealias_fraction * Scalar(n_modes / 2));
    }

    bool operator==(const GridConfig&) const = default;
};

/// Real periodic field stored as one-sided Fourier coefficients.
/// The k=0 and Nyquist coefficients are kept exactly real.
template <class Scalar = double>
class SpectralField {
public:
    using Complex = std::complex<Scalar>;
    using CoeffArray = Eigen::ArrayX<Complex>;

    SpectralField() = default;

    explicit SpectralField(const GridConfig<Scalar>& grid)
        : grid_(grid), coeffs_(CoeffArray::Zero(grid.spectrum_size())) {
        grid_.validate();
    }

    SpectralField(const GridConfig<Scalar>& grid, CoeffArray coeffs)
        : grid_(grid), coeffs_(std::move(coeffs)) {
        grid_.validate();
        if (coeffs_.size() != grid_.spectrum_size())
            throw std::invalid_argument("spectral field: coefficient array has wrong size");
        sanitize_real_modes();
    }

    /// Field with a single one-sided mode set, everything else zero.
    static SpectralField mode(const GridConfig<Scalar>& grid, Eigen::Index k, Complex amplitude) {
        SpectralField f(grid);
        f.set_coeff(k, amplitude);
        return f;
    }

    const GridConfig<Scalar>& grid() const { return grid_; }
    const CoeffArray& coeffs() const { return coeffs_; }
    Eigen::Index spectrum_size() const { return coeffs_.size(); }

    Complex coeff(Eigen::Index k) const { return coeffs_[k]; }

    void set_coeff(Eigen::Index k, Complex value) {
        if (k < 0 || k >= coeffs_.size())
            throw std::invalid_argument("spectral field: mode index out of range");
        if (k == 0 || k == coeffs_.size() - 1) value.imag(Scalar(0));
        coeffs_[k] = value;
    }

    /// Mean value of the field (the spectral projection onto constants).
    Scalar mean() const { return coeffs_.size() ? coeffs_[0].real() : Scalar(0); }

    bool all_finite() const {
        return coeffs_.real().allFinite() && coeffs_.imag().allFinite();
    }

    SpectralField& operator+=(const SpectralField& rhs) {
        require_same_grid(rhs);
        coeffs_ += rhs.coeffs_;
        return *this;
    }
    SpectralField& operator-=(const SpectralField& rhs) {
        require_same_grid(rhs);
        coeffs_ -= rhs.coeffs_;
        return *this;
    }
    SpectralField& operator*=(Scalar s) {
        coeffs_ *= s;
        return *this;
    }

    void require_same_grid(const SpectralField& other) const {
        if (!(grid_ == other.grid_))
            throw std::invalid_argument("spectral field: grid mismatch");
    }

private:
    void sanitize_real_modes() {
        if (coeffs_.size() == 0) return;
        coeffs_[0].imag(Scalar(0));
        coeffs_[coeffs_.size() - 1].imag(Scalar(0));
    }

    GridConfig<Scalar> grid_;
    CoeffArray coeffs_;
};

template <class Scalar>
SpectralField<Scalar> operator+(SpectralField<Scalar> lhs, const SpectralField<Scalar>& rhs) {
    lhs += rhs;
    return lhs;
}
template <class Scalar>
SpectralField<Scalar> operator-(SpectralField<Scalar> lhs, const SpectralField<Scalar>& rhs) {
    lhs -= rhs;
    return lhs;
}
template <class Scalar>
SpectralField<Scalar> operator*(Scalar s, SpectralField<Scalar> f) {
    f *= s;
    return f;
}

namespace detail {

// One engine per thread; Eigen::FFT caches its plans per transform size.
template <class Scalar>
Eigen::FFT<Scalar>& fft_engine() {
    using Engine = Eigen::FFT<Scalar>;
    thread_local Engine engine(typename Engine::impl_type(),
                               static_cast<typename Engine::Flag>(
                                   static_cast<int>(Engine::HalfSpectrum) |
                                   static_cast<int>(Engine::Unscaled)));
    return engine;
}

}  // namespace detail

/// Nodal values of the field at x_j = j*period/N.
template <class Scalar>
Eigen::ArrayX<Scalar> to_physical(const SpectralField<Scalar>& field) {
    const Eigen::Index n = field.grid().n_modes;
    Eigen::ArrayX<Scalar> values(n);
    detail::fft_engine<Scalar>().inv(values.data(), field.coeffs().data(), n);
    return values;
}

/// One-sided coefficients of a nodal sample array; c_0 becomes the mean.
template <class Scalar>
SpectralField<Scalar> to_spectral(const GridConfig<Scalar>& grid,
                                  const Eigen::ArrayX<Scalar>& values) {
    if (values.size() != grid.n_modes)
        throw std::invalid_argument("to_spectral: expected " + std::to_string(grid.n_modes) +
                                    " nodal values, got " + std::to_string(values.size()));
    typename SpectralField<Scalar>::CoeffArray coeffs(grid.spectrum_size());
    detail::fft_engine<Scalar>().fwd(coeffs.data(), values.data(), grid.n_modes);
    coeffs /= std::complex<Scalar>(Scalar(grid.n_modes), Scalar(0));
    return SpectralField<Scalar>(grid, std::move(coeffs));
}

/// Spectral derivative of the given order; multiplies mode k by (i*kappa_k)^order.
/// The k=0 mode is annihilated for order >= 1, and so is the sign-ambiguous
/// Nyquist mode.
template <class Scalar>
SpectralField<Scalar> derivative(const SpectralField<Scalar>& field, int order) {
    if (order < 1) throw std::invalid_argument("derivative: order must be >= 1");
    using Complex = std::complex<Scalar>;
    typename SpectralField<Scalar>::CoeffArray out = field.coeffs();
    const Eigen::Index half = field.spectrum_size() - 1;
    out[0] = Complex(0, 0);
    out[half] = Complex(0, 0);
    for (Eigen::Index k = 1; k < half; ++k) {
        const Scalar kappa = field.grid().wavenumber(k);
        const Scalar mag = std::pow(kappa, Scalar(order));
        Complex factor;  // i^order cycles 1, i, -1, -i
        switch (order % 4) {
            case 0: factor = Complex(mag, 0); break;
            case 1: factor = Complex(0, mag); break;
            case 2: factor = Complex(-mag, 0); break;
            default: factor = Complex(0, -mag); break;
        }
        out[k] *= factor;
    }
    return SpectralField<Scalar>(field.grid(), std::move(out));
}

/// Coefficients of (d_x psi)^2: differentiate, go to nodal space, square
/// pointwise, transform back, then zero every mode above the dealias cutoff.
template <class Scalar>
SpectralField<Scalar> nonlinear_square_of_derivative(const SpectralField<Scalar>& field) {
    Eigen::ArrayX<Scalar> nodal = to_physical(derivative(field, 1));
    nodal *= nodal;
    SpectralField<Scalar> out = to_spectral(field.grid(), nodal);
    typename SpectralField<Scalar>::CoeffArray coeffs = out.coeffs();
    const Eigen::Index cutoff = field.grid().dealias_cutoff();
    for (Eigen::Index k = cutoff + 1; k < coeffs.size(); ++k)
        coeffs[k] = std::complex<Scalar>(0, 0);
    return SpectralField<Scalar>(field.grid(), std::move(coeffs));
}

namespace detail {

// Two-sided weighted spectral sum: w(lambda_0)*|c_0|^2
//   + 2*sum_{0<k<N/2} w(lambda_k)*|c_k|^2 + w(lambda_{N/2})*|c_{N/2}|^2.
template <class Scalar, class WeightFn>
Scalar weighted_energy(const SpectralField<Scalar>& field, WeightFn&& weight) {
    const auto& c = field.coeffs();
    const Eigen::Index half = c.size() - 1;
    Scalar sum = weight(field.grid().lambda(0)) * std::norm(c[0]);
    for (Eigen::Index k = 1; k < half; ++k)
        sum += Scalar(2) * weight(field.grid().lambda(k)) * std::norm(c[k]);
    sum += weight(field.grid().lambda(half)) * std::norm(c[half]);
    return sum;
}

}  // namespace detail

/// L2 norm over one period, via Parseval on the two-sided spectrum.
template <class Scalar>
Scalar norm_l2(const SpectralField<Scalar>& field) {
    const Scalar sum = detail::weighted_energy(field, [](Scalar) { return Scalar(1); });
    return std::sqrt(field.grid().period * sum);
}

/// L2 norm of the field minus its mean, summed directly over k >= 1 so the
/// value stays accurate when the mean dwarfs the oscillation.
template <class Scalar>
Scalar norm_l2_zero_mean(const SpectralField<Scalar>& field) {
    const auto& c = field.coeffs();
    const Eigen::Index half = c.size() - 1;
    Scalar sum = Scalar(0);
    for (Eigen::Index k = 1; k < half; ++k) sum += Scalar(2) * std::norm(c[k]);
    sum += std::norm(c[half]);
    return std::sqrt(field.grid().period * sum);
}

/// Max absolute nodal value.
template <class Scalar>
Scalar norm_sup(const SpectralField<Scalar>& field) {
    return to_physical(field).abs().maxCoeff();
}

/// eps-weighted H^{1/2} norm: sqrt( sum over the two-sided spectrum of
/// sqrt(1+4*eps*lambda_k) |c_k|^2 ), with the same period measure as norm_l2.
/// At eps = 0 the weights are exactly 1 and this coincides with norm_l2.
template <class Scalar>
Scalar norm_half_eps(const SpectralField<Scalar>& field, Scalar eps) {
    if (eps < Scalar(0)) throw std::invalid_argument("norm_half_eps: eps must be >= 0");
    const Scalar sum = detail::weighted_energy(
        field, [eps](Scalar lam) { return std::sqrt(Scalar(1) + Scalar(4) * eps * lam); });
    return std::sqrt(field.grid().period * sum);
}

using GridConfigd = GridConfig<double>;
using SpectralFieldd = SpectralField<double>;

}  // namespace frontlab
