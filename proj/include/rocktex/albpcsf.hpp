#pragma once

#include <array>
#include <vector>

#include "rocktex/image.hpp"
#include "rocktex/lbp.hpp"

namespace rocktex {

/// Neighbors are read from `neighbor`, the threshold from `center`.
struct ChannelPair {
  Channel neighbor;
  Channel center;

  bool operator==(const ChannelPair&) const = default;
};

/// (R,V), (G,V), (B,V), in this order.
inline constexpr std::array<ChannelPair, 3> kFusionPairs{{
    {Channel::R, Channel::V},
    {Channel::G, Channel::V},
    {Channel::B, Channel::V},
}};

std::string to_string(const ChannelPair& pair);

struct FusedDescriptor {
  std::vector<CodeHistogram> per_pair;  ///< normalized, one per kFusionPairs entry
  std::vector<double> concatenated;     ///< sums to per_pair.size()
};

/// Four planes the fusion reads: R, G, B from RGB and V from HSV.
struct FusionPlanes {
  PlaneF r, g, b, v;

  const PlaneF& operator[](Channel ch) const;
  static FusionPlanes from_image(const ColorImage& rgb);
};

/// Opponent-channel LBP: neighbors from one plane, center from another.
CodeMap cross_channel_lbp(const PlaneF& neighbor_plane, const PlaneF& center_plane,
                          const LbpConfig& cfg);

/// Cross-channel histograms for the three fusion pairs over prepared planes.
FusedDescriptor albpcsf(const FusionPlanes& planes, const LbpConfig& cfg);

/// RGB image -> HSV, then albpcsf over (R,V), (G,V), (B,V).
FusedDescriptor albpcsf(const ColorImage& rgb, const LbpConfig& cfg);

}  // namespace rocktex
