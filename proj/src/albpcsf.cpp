#include "rocktex/albpcsf.hpp"

namespace rocktex {

std::string to_string(const ChannelPair& pair) {
  return "(" + std::string(to_string(pair.neighbor)) + "," + std::string(to_string(pair.center)) +
         ")";
}

const PlaneF& FusionPlanes::operator[](Channel ch) const {
  switch (ch) {
    case Channel::R: return r;
    case Channel::G: return g;
    case Channel::B: return b;
    case Channel::V: return v;
    default: throw Error("channel " + std::string(to_string(ch)) + " is not used by the fusion");
  }
}

FusionPlanes FusionPlanes::from_image(const ColorImage& rgb) {
  if (rgb.space() != ColorSpace::RGB) throw Error("color-space fusion expects an RGB image");
  const ColorImage hsv = rgb_to_hsv(rgb);
  return {extract_plane(rgb, Channel::R), extract_plane(rgb, Channel::G),
          extract_plane(rgb, Channel::B), extract_plane(hsv, Channel::V)};
}

CodeMap cross_channel_lbp(const PlaneF& neighbor_plane, const PlaneF& center_plane,
                          const LbpConfig& cfg) {
  return lbp_map(neighbor_plane, center_plane, cfg);
}

FusedDescriptor albpcsf(const FusionPlanes& planes, const LbpConfig& cfg) {
  const std::size_t bins = bin_count(cfg);
  FusedDescriptor out;
  out.concatenated.reserve(bins * kFusionPairs.size());
  for (const ChannelPair& pair : kFusionPairs) {
    const CodeMap codes = cross_channel_lbp(planes[pair.neighbor], planes[pair.center], cfg);
    CodeHistogram h = histogram(codes, bins, /*normalize=*/true);
    out.concatenated.insert(out.concatenated.end(), h.bins.begin(), h.bins.end());
    out.per_pair.push_back(std::move(h));
  }
  return out;
}

FusedDescriptor albpcsf(const ColorImage& rgb, const LbpConfig& cfg) {
  return albpcsf(FusionPlanes::from_image(rgb), cfg);
}

}  // namespace rocktex
