#pragma once

#include <Eigen/Dense>

#include <complex>

namespace paraspec {

using Complex = std::complex<double>;

/// Truncated Fourier representation of a real periodic function on [0, T):
///
///   u(x) = sum_{l=-N}^{N} c_l * exp(i*l*(2*pi/T)*x)
///
/// Coefficients are stored densely for l = -N..N (storage index l + N).
/// Real fields satisfy the Hermitian symmetry c_{-l} = conj(c_l); all
/// constructors and operations in this library preserve it.
class SpectralField {
 public:
  SpectralField() = default;

  /// Zero field with 2N+1 coefficients.
  SpectralField(double period, int max_mode);

  /// Takes ownership of an odd-length coefficient vector (size 2N+1).
  SpectralField(double period, Eigen::VectorXcd coeffs);

  double period() const { return period_; }
  int max_mode() const { return static_cast<int>(coeffs_.size() / 2); }

  const Eigen::VectorXcd& coeffs() const { return coeffs_; }
  Eigen::VectorXcd& coeffs() { return coeffs_; }

  Complex mode(int ell) const { return coeffs_(ell + max_mode()); }
  void set_mode(int ell, Complex value) { coeffs_(ell + max_mode()) = value; }

  /// Sets c_l = value and c_{-l} = conj(value) in one go.
  void set_conjugate_pair(int ell, Complex value);

  bool all_finite() const { return coeffs_.allFinite(); }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scalar);

 private:
  double period_ = 0.0;
  Eigen::VectorXcd coeffs_;
};

SpectralField operator+(SpectralField lhs, const SpectralField& rhs);
SpectralField operator-(SpectralField lhs, const SpectralField& rhs);
SpectralField operator*(double scalar, SpectralField field);

/// Coefficients of the band-limited interpolant of M uniform samples
/// s_j = u(j*T/M), truncated to |l| <= max_mode. Normalized so that samples
/// of exp(i*l*(2*pi/T)*x) give c_l = 1. Requires M >= 2*(2*max_mode + 1);
/// Hermitian symmetry holds exactly by construction.
SpectralField field_from_samples(const Eigen::VectorXd& samples, double period,
                                 int max_mode);

/// Evaluates the field at the M uniform points x_j = j*T/M. The imaginary
/// residue of the mode sum (rounding noise for Hermitian input) is discarded.
/// Requires M >= 2*max_mode + 1.
Eigen::VectorXd field_to_samples(const SpectralField& field, int num_samples);

/// Squared L2(0,T) norm, T * sum |c_l|^2 (Parseval under the (u,v) = int u
/// conj(v) dx inner product with basis orthogonality (e_l, e_k) = T delta_lk).
double l2_norm_sq(const SpectralField& field);

/// int_0^T u(x) conj(v(x)) dx = T * sum u_l conj(v_l). Real for real fields.
Complex inner_product(const SpectralField& u, const SpectralField& v);

/// d/dx in coefficient space: c_l -> i*l*(2*pi/T)*c_l.
SpectralField spatial_derivative(const SpectralField& field);

/// Keeps modes |l| <= coarse_mode. Requires coarse_mode <= max_mode.
SpectralField truncate(const SpectralField& field, int coarse_mode);

/// Zero-pads modes max_mode < |l| <= fine_mode. Requires fine_mode >= max_mode.
SpectralField prolong(const SpectralField& field, int fine_mode);

/// Galerkin-exact coefficients of d(u^2)/dx truncated back to |l| <= N:
/// the square is evaluated on an oversampled grid (>= 2*(2*2N+1) points, so
/// no mode of u^2 aliases into the retained band), transformed back and hit
/// with the derivative symbol. Matches the direct convolution
/// sum_m c_m c_{l-m} * i*l*(2*pi/T) on the retained band.
SpectralField dealias_square_derivative(const SpectralField& field);

}  // namespace paraspec
