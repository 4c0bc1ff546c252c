#pragma once

#include "paraspec/spectral_field.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace paraspec::detail {

bool is_pow2(std::size_t n);
std::size_t next_pow2(std::size_t n);

/// Iterative radix-2 transform for power-of-two sizes. sign = -1 computes
/// X_m = sum_j x_j e^{-2*pi*i*m*j/n}, sign = +1 the unscaled inverse sum.
/// Twiddles live in the plan so tight stepping loops share one table.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }
  void transform(std::complex<double>* data, int sign) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> rev_;
  std::vector<std::complex<double>> roots_;  // e^{-2*pi*i*k/n}, k < n/2
};

/// DFT of M real samples truncated to |l| <= max_mode with the convention
/// c_l = (1/M) sum_j s_j e^{-i*l*2*pi*j/M}. Uses the radix-2 path when M is
/// a power of two, direct summation otherwise; negative modes are mirrored
/// from the positive side so Hermitian symmetry holds exactly.
Eigen::VectorXcd coeffs_from_real_samples(const Eigen::VectorXd& samples,
                                          int max_mode);

/// Mode-sum evaluation sum_l c_l e^{+i*l*2*pi*j/M} at M uniform points,
/// imaginary residue discarded.
Eigen::VectorXd real_samples_from_coeffs(const Eigen::VectorXcd& coeffs,
                                         int num_samples);

/// Scratch for the dealiased quadratic term: a padded grid large enough that
/// no mode of u^2 aliases into the retained band, plus the plan and buffer
/// reused across steps.
class DealiasWorkspace {
 public:
  DealiasWorkspace(int max_mode, double period);

  /// Writes the coefficients of d(u^2)/dx for |l| <= max_mode into `out`.
  void square_derivative(const Eigen::VectorXcd& in, Eigen::VectorXcd& out);

 private:
  int max_mode_;
  double period_;
  FftPlan plan_;
  std::vector<std::complex<double>> buf_;
};

}  // namespace paraspec::detail
