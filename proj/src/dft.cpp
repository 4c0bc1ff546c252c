#include "dft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace paraspec::detail {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

bool is_pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

FftPlan::FftPlan(std::size_t n) : n_(n), rev_(n), roots_(n / 2) {
  if (!is_pow2(n)) throw std::invalid_argument("FftPlan: size not a power of two");
  std::size_t log2n = 0;
  while ((std::size_t{1} << log2n) < n) ++log2n;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < log2n; ++b)
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
    rev_[i] = r;
  }
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double theta = -kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    roots_[k] = {std::cos(theta), std::sin(theta)};
  }
}

void FftPlan::transform(std::complex<double>* a, int sign) const {
  for (std::size_t i = 0; i < n_; ++i)
    if (rev_[i] > i) std::swap(a[i], a[rev_[i]]);
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t stride = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> w = roots_[k * stride];
        if (sign > 0) w = std::conj(w);
        const std::complex<double> u = a[start + k];
        const std::complex<double> t = w * a[start + k + len / 2];
        a[start + k] = u + t;
        a[start + k + len / 2] = u - t;
      }
    }
  }
}

Eigen::VectorXcd coeffs_from_real_samples(const Eigen::VectorXd& samples,
                                          int max_mode) {
  const std::size_t m = static_cast<std::size_t>(samples.size());
  const int n = max_mode;
  Eigen::VectorXcd coeffs(2 * n + 1);
  if (is_pow2(m)) {
    FftPlan plan(m);
    std::vector<std::complex<double>> buf(m);
    for (std::size_t j = 0; j < m; ++j) buf[j] = samples(static_cast<Eigen::Index>(j));
    plan.transform(buf.data(), -1);
    for (int ell = 0; ell <= n; ++ell) {
      const std::complex<double> c = buf[static_cast<std::size_t>(ell) % m] /
                                     static_cast<double>(m);
      coeffs(n + ell) = c;
      coeffs(n - ell) = std::conj(c);
    }
  } else {
    // Direct summation with an exact root table: index arithmetic mod M keeps
    // the twiddle angles free of accumulated phase error.
    std::vector<std::complex<double>> w(m);
    for (std::size_t j = 0; j < m; ++j) {
      const double theta = -kTwoPi * static_cast<double>(j) / static_cast<double>(m);
      w[j] = {std::cos(theta), std::sin(theta)};
    }
    for (int ell = 0; ell <= n; ++ell) {
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t j = 0; j < m; ++j)
        acc += samples(static_cast<Eigen::Index>(j)) *
               w[(static_cast<std::size_t>(ell) * j) % m];
      acc /= static_cast<double>(m);
      coeffs(n + ell) = acc;
      coeffs(n - ell) = std::conj(acc);
    }
  }
  return coeffs;
}

Eigen::VectorXd real_samples_from_coeffs(const Eigen::VectorXcd& coeffs,
                                         int num_samples) {
  const std::size_t m = static_cast<std::size_t>(num_samples);
  const int n = static_cast<int>(coeffs.size() / 2);
  Eigen::VectorXd samples(num_samples);
  if (is_pow2(m)) {
    FftPlan plan(m);
    std::vector<std::complex<double>> buf(m, {0.0, 0.0});
    for (int ell = -n; ell <= n; ++ell) {
      const std::size_t bin =
          static_cast<std::size_t>(((ell % static_cast<int>(m)) + static_cast<int>(m)) %
                                   static_cast<int>(m));
      buf[bin] += coeffs(ell + n);
    }
    plan.transform(buf.data(), +1);
    for (std::size_t j = 0; j < m; ++j)
      samples(static_cast<Eigen::Index>(j)) = buf[j].real();
  } else {
    std::vector<std::complex<double>> w(m);
    for (std::size_t j = 0; j < m; ++j) {
      const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
      w[j] = {std::cos(theta), std::sin(theta)};
    }
    for (std::size_t j = 0; j < m; ++j) {
      std::complex<double> acc = coeffs(n);  // l = 0
      for (int ell = 1; ell <= n; ++ell) {
        const std::complex<double> e = w[(static_cast<std::size_t>(ell) * j) % m];
        acc += coeffs(n + ell) * e + coeffs(n - ell) * std::conj(e);
      }
      samples(static_cast<Eigen::Index>(j)) = acc.real();
    }
  }
  return samples;
}

DealiasWorkspace::DealiasWorkspace(int max_mode, double period)
    : max_mode_(max_mode),
      period_(period),
      plan_(next_pow2(2 * (2 * (2 * static_cast<std::size_t>(max_mode)) + 1))),
      buf_(plan_.size()) {}

void DealiasWorkspace::square_derivative(const Eigen::VectorXcd& in,
                                         Eigen::VectorXcd& out) {
  const int n = max_mode_;
  const std::size_t m = plan_.size();
  std::fill(buf_.begin(), buf_.end(), std::complex<double>{0.0, 0.0});
  for (int ell = -n; ell <= n; ++ell) {
    const std::size_t bin =
        static_cast<std::size_t>(((ell % static_cast<int>(m)) + static_cast<int>(m)) %
                                 static_cast<int>(m));
    buf_[bin] = in(ell + n);
  }
  plan_.transform(buf_.data(), +1);
  for (std::size_t j = 0; j < m; ++j) {
    const double y = buf_[j].real();
    buf_[j] = {y * y, 0.0};
  }
  plan_.transform(buf_.data(), -1);
  out.resize(2 * n + 1);
  const double wavenumber = kTwoPi / period_;
  for (int ell = 0; ell <= n; ++ell) {
    const std::complex<double> sq =
        buf_[static_cast<std::size_t>(ell) % m] / static_cast<double>(m);
    const std::complex<double> d = Complex{0.0, ell * wavenumber} * sq;
    out(n + ell) = d;
    out(n - ell) = std::conj(d);
  }
}

}  // namespace paraspec::detail
