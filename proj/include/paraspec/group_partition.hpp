#pragma once

#include "paraspec/spectral_field.hpp"

#include <stdexcept>
#include <vector>

namespace paraspec {

/// Partition of the mode range |l| in [0, N] into I contiguous bands
/// G_i = { l : b_{i-1} <= |l| < b_i } cut by an increasing boundary sequence
/// 0 = b_0 < b_1 < ... < b_I = N+1. Groups are indexed 1..I.
class GroupPartition {
 public:
  /// Boundaries must start at 0, end at N+1 and be strictly increasing.
  explicit GroupPartition(std::vector<int> boundaries)
      : boundaries_(std::move(boundaries)) {
    if (boundaries_.size() < 2 || boundaries_.front() != 0)
      throw std::invalid_argument("group partition: boundaries must start at 0");
    for (std::size_t i = 1; i < boundaries_.size(); ++i)
      if (boundaries_[i] <= boundaries_[i - 1])
        throw std::invalid_argument(
            "group partition: boundaries must be strictly increasing");
  }

  /// Single group covering the whole spectrum of a max_mode-N field.
  static GroupPartition trivial(int max_mode) {
    return GroupPartition({0, max_mode + 1});
  }

  /// Two groups split at `cut`: |l| < cut and cut <= |l| <= max_mode.
  static GroupPartition two_group(int max_mode, int cut) {
    return GroupPartition({0, cut, max_mode + 1});
  }

  int group_count() const { return static_cast<int>(boundaries_.size()) - 1; }
  int max_mode() const { return boundaries_.back() - 1; }
  const std::vector<int>& boundaries() const { return boundaries_; }

  /// 1-based index of the group containing |l|.
  int group_of(int ell) const {
    const int a = ell < 0 ? -ell : ell;
    for (int i = 1; i < static_cast<int>(boundaries_.size()); ++i)
      if (a < boundaries_[i]) return i;
    throw std::out_of_range("group partition: mode outside covered band");
  }

  bool contains(int group, int ell) const {
    const int a = ell < 0 ? -ell : ell;
    return boundaries_[group - 1] <= a && a < boundaries_[group];
  }

  void check_group(int group) const {
    if (group < 1 || group > group_count())
      throw std::out_of_range("group partition: bad group index");
  }

 private:
  std::vector<int> boundaries_;
};

/// L2 projection P_i: zeroes every coefficient outside group i. The P_i sum
/// to the identity over a matching partition.
SpectralField group_project(const SpectralField& field,
                            const GroupPartition& partition, int group);

}  // namespace paraspec
