#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rocktex/image.hpp"

namespace rocktex {

enum class LbpVariant { Basic, RotationInvariant, Riu2 };

/// Neighborhood geometry and labelling variant.
///
/// Neighbor p_0 sits at the top-left of the center and the remaining
/// neighbors follow clockwise. With 8 neighbors and an integer radius the
/// neighbors lie on the square ring at Chebyshev distance `radius` (the 3x3
/// ring for radius 1), so no interpolation happens. Any other geometry samples
/// the circle of that radius with bilinear interpolation.
struct LbpConfig {
  int neighbors = 8;
  double radius = 1.0;
  LbpVariant variant = LbpVariant::Basic;

  /// Throws unless 4 <= neighbors <= 24 and radius >= 1.
  void validate() const;
  /// Pixels dropped on each side: ceil(radius).
  int border() const;
};

using CodeMap = Plane<std::uint32_t>;

struct CodeHistogram {
  std::vector<double> bins;
  bool normalized = false;

  double total() const;
};

/// Sign-threshold code: bit i is set iff neighbors[i] >= center.
std::uint32_t lbp_code(double center, std::span<const double> neighbors);

/// Minimum over all circular rotations of the low `neighbors` bits.
std::uint32_t ri_code(std::uint32_t code, int neighbors);

/// Number of 0/1 transitions around the circular bit pattern.
int transitions(std::uint32_t code, int neighbors);

/// popcount for uniform patterns (<= 2 transitions), otherwise neighbors + 1.
std::uint32_t riu2_code(std::uint32_t code, int neighbors);

/// Histogram length of a variant: 2^P for Basic, the number of distinct
/// rotation-invariant codes for RotationInvariant (36 when P = 8), P + 2 for Riu2.
std::size_t bin_count(const LbpConfig& cfg);

/// Maps every basic code to its histogram bin under the configured variant.
/// Basic codes map to themselves; rotation-invariant codes map to the rank of
/// their minimal rotation among all distinct minimal rotations; riu2 codes map
/// to their riu2 label.
class LabelTable {
 public:
  explicit LabelTable(const LbpConfig& cfg);

  std::uint32_t operator()(std::uint32_t code) const { return table_[code]; }
  std::size_t bins() const { return bins_; }

 private:
  std::vector<std::uint32_t> table_;
  std::size_t bins_ = 0;
};

/// Codes at every interior pixel (border of ceil(R) excluded), already mapped
/// through the variant's LabelTable, so every value is < bin_count(cfg).
CodeMap lbp_map(const PlaneF& plane, const LbpConfig& cfg);

/// As lbp_map, but neighbors are sampled from `neighbor_plane` and the
/// threshold is taken from `center_plane`. Both planes must share dimensions.
CodeMap lbp_map(const PlaneF& neighbor_plane, const PlaneF& center_plane, const LbpConfig& cfg);

/// Bin i counts occurrences of code i; optionally divided by the total.
CodeHistogram histogram(const CodeMap& codes, std::size_t n_bins, bool normalize);

}  // namespace rocktex
