#include "paraspec/spectral_field.hpp"

#include "dft.hpp"
#include "paraspec/group_partition.hpp"

#include <numbers>
#include <stdexcept>

namespace paraspec {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_compatible(const SpectralField& a, const SpectralField& b) {
  if (a.period() != b.period() || a.max_mode() != b.max_mode())
    throw std::invalid_argument("spectral fields have mismatched period or band");
}
}  // namespace

SpectralField::SpectralField(double period, int max_mode)
    : period_(period), coeffs_(Eigen::VectorXcd::Zero(2 * max_mode + 1)) {
  if (period <= 0.0) throw std::invalid_argument("spectral field: period must be positive");
  if (max_mode < 1) throw std::invalid_argument("spectral field: max_mode must be >= 1");
}

SpectralField::SpectralField(double period, Eigen::VectorXcd coeffs)
    : period_(period), coeffs_(std::move(coeffs)) {
  if (period <= 0.0) throw std::invalid_argument("spectral field: period must be positive");
  if (coeffs_.size() < 3 || coeffs_.size() % 2 == 0)
    throw std::invalid_argument("spectral field: coefficient count must be odd (2N+1)");
}

void SpectralField::set_conjugate_pair(int ell, Complex value) {
  const int n = max_mode();
  coeffs_(n + ell) = value;
  coeffs_(n - ell) = std::conj(value);
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  check_compatible(*this, other);
  coeffs_ += other.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  check_compatible(*this, other);
  coeffs_ -= other.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator*=(double scalar) {
  coeffs_ *= scalar;
  return *this;
}

SpectralField operator+(SpectralField lhs, const SpectralField& rhs) {
  lhs += rhs;
  return lhs;
}

SpectralField operator-(SpectralField lhs, const SpectralField& rhs) {
  lhs -= rhs;
  return lhs;
}

SpectralField operator*(double scalar, SpectralField field) {
  field *= scalar;
  return field;
}

SpectralField field_from_samples(const Eigen::VectorXd& samples, double period,
                                 int max_mode) {
  if (samples.size() < 2 * (2 * max_mode + 1))
    throw std::invalid_argument(
        "field_from_samples: need at least 2*(2N+1) samples to resolve the band");
  return SpectralField(period, detail::coeffs_from_real_samples(samples, max_mode));
}

Eigen::VectorXd field_to_samples(const SpectralField& field, int num_samples) {
  if (num_samples < 2 * field.max_mode() + 1)
    throw std::invalid_argument("field_to_samples: need at least 2N+1 points");
  return detail::real_samples_from_coeffs(field.coeffs(), num_samples);
}

double l2_norm_sq(const SpectralField& field) {
  return field.period() * field.coeffs().squaredNorm();
}

Complex inner_product(const SpectralField& u, const SpectralField& v) {
  check_compatible(u, v);
  return u.period() * v.coeffs().dot(u.coeffs());  // dot conjugates its receiver
}

SpectralField spatial_derivative(const SpectralField& field) {
  const int n = field.max_mode();
  const double wavenumber = kTwoPi / field.period();
  Eigen::VectorXcd out(2 * n + 1);
  for (int ell = -n; ell <= n; ++ell)
    out(n + ell) = Complex{0.0, ell * wavenumber} * field.coeffs()(n + ell);
  return SpectralField(field.period(), std::move(out));
}

SpectralField truncate(const SpectralField& field, int coarse_mode) {
  const int n = field.max_mode();
  if (coarse_mode > n)
    throw std::invalid_argument("truncate: coarse band exceeds field band");
  Eigen::VectorXcd out = field.coeffs().segment(n - coarse_mode, 2 * coarse_mode + 1);
  return SpectralField(field.period(), std::move(out));
}

SpectralField prolong(const SpectralField& field, int fine_mode) {
  const int n = field.max_mode();
  if (fine_mode < n)
    throw std::invalid_argument("prolong: fine band smaller than field band");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(2 * fine_mode + 1);
  out.segment(fine_mode - n, 2 * n + 1) = field.coeffs();
  return SpectralField(field.period(), std::move(out));
}

SpectralField group_project(const SpectralField& field,
                            const GroupPartition& partition, int group) {
  partition.check_group(group);
  const int n = field.max_mode();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(2 * n + 1);
  for (int ell = -n; ell <= n; ++ell)
    if (partition.contains(group, ell)) out(n + ell) = field.coeffs()(n + ell);
  return SpectralField(field.period(), std::move(out));
}

SpectralField dealias_square_derivative(const SpectralField& field) {
  detail::DealiasWorkspace workspace(field.max_mode(), field.period());
  Eigen::VectorXcd out;
  workspace.square_derivative(field.coeffs(), out);
  return SpectralField(field.period(), std::move(out));
}

}  // namespace paraspec
