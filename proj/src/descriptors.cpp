#include "rocktex/descriptors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "rocktex/dct.hpp"

namespace rocktex {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::RgbHist: return "RGB_HIST";
    case Method::Lbp: return "LBP";
    case Method::Albpcsf: return "ALBPCSF";
    case Method::GAlbpcsf: return "G_ALBPCSF";
    case Method::DAlbpcsf: return "D_ALBPCSF";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  std::string key;
  for (char c : name) key += c == '-' ? '_' : static_cast<char>(std::toupper(c));
  for (Method m : {Method::RgbHist, Method::Lbp, Method::Albpcsf, Method::GAlbpcsf,
                   Method::DAlbpcsf})
    if (key == to_string(m)) return m;
  if (key == "RGBHIST" || key == "IMAGRGB") return Method::RgbHist;
  if (key == "GALBPCSF") return Method::GAlbpcsf;
  if (key == "DALBPCSF") return Method::DAlbpcsf;
  throw Error("unknown method '" + std::string(name) + "'");
}

std::vector<double> global_normalize(const FusedDescriptor& d) {
  std::vector<double> v = d.concatenated;
  const double pairs = static_cast<double>(d.per_pair.size());
  for (double& x : v) x /= pairs;
  return v;
}

FusionPlanes renormalize(const FusionPlanes& planes, double constant_tolerance) {
  auto fix = [&](const PlaneF& p) { return quantize_plane(normalize_plane(p, constant_tolerance)); };
  return {fix(planes.r), fix(planes.g), fix(planes.b), fix(planes.v)};
}

DescriptorRecord rgb_histogram(const ColorImage& rgb) {
  if (rgb.space() != ColorSpace::RGB) throw Error("RGB histogram expects an RGB image");
  std::vector<double> v(3 * 256, 0.0);
  for (const Pixel& p : rgb.pixels())
    for (int c = 0; c < 3; ++c) v[c * 256 + p[c]] += 1.0;
  const double n = 3.0 * static_cast<double>(rgb.pixels().size());
  for (double& x : v) x /= n;
  return {Method::RgbHist, {}, std::move(v)};
}

DescriptorRecord lbp_descriptor(const ColorImage& rgb, const LbpConfig& cfg) {
  if (rgb.space() != ColorSpace::RGB) throw Error("LBP descriptor expects an RGB image");
  PlaneF luma(rgb.width(), rgb.height());
  auto dst = luma.values();
  auto src = rgb.pixels();
  for (std::size_t i = 0; i < src.size(); ++i)
    dst[i] = 0.299 * src[i][0] + 0.587 * src[i][1] + 0.114 * src[i][2];
  CodeHistogram h = histogram(lbp_map(luma, cfg), bin_count(cfg), true);
  return {Method::Lbp, {cfg, {}, {}, {}}, std::move(h.bins)};
}

DescriptorRecord albpcsf_descriptor(const ColorImage& rgb, const LbpConfig& cfg) {
  return {Method::Albpcsf, {cfg, {}, {}, {}}, global_normalize(albpcsf(rgb, cfg))};
}

namespace {

PlaneF amplitude_plane(const PlaneF& plane, const GaborKernel& kernel,
                       const GaborPipelineOptions& opts) {
  PlaneF amp = filter(plane, kernel, opts.convolution).amplitude;
  double peak = 0.0;
  for (double v : plane.values()) peak = std::max(peak, std::abs(v));
  const double floor = opts.relative_floor * peak * kernel.l1_norm();
  for (double& a : amp.values())
    if (a <= floor) a = 0.0;
  return quantize_plane(normalize_plane(amp));
}

}  // namespace

FusionPlanes gabor_amplitude_planes(const FusionPlanes& planes, const GaborParams& gp,
                                    const GaborPipelineOptions& opts) {
  const int side = std::min(planes.v.width(), planes.v.height());
  const GaborKernel kernel = build_kernel(gp, default_kernel_size(gp, side), opts.kernel);
  return {amplitude_plane(planes.r, kernel, opts), amplitude_plane(planes.g, kernel, opts),
          amplitude_plane(planes.b, kernel, opts), amplitude_plane(planes.v, kernel, opts)};
}

FusionPlanes gabor_amplitude_planes(const ColorImage& rgb, const GaborParams& gp,
                                    const GaborPipelineOptions& opts) {
  return gabor_amplitude_planes(FusionPlanes::from_image(rgb), gp, opts);
}

DescriptorRecord g_albpcsf(const FusionPlanes& planes, const GaborParams& gp,
                           const LbpConfig& cfg, const GaborPipelineOptions& opts) {
  const FusedDescriptor fused = albpcsf(gabor_amplitude_planes(planes, gp, opts), cfg);
  return {Method::GAlbpcsf, {cfg, gp, {}, {}}, global_normalize(fused)};
}

DescriptorRecord g_albpcsf(const ColorImage& rgb, const GaborParams& gp, const LbpConfig& cfg,
                           const GaborPipelineOptions& opts) {
  return g_albpcsf(FusionPlanes::from_image(rgb), gp, cfg, opts);
}

FusionPlanes dct_lowpass_planes(const FusionPlanes& planes, int k) {
  // Transform round-off (~1e-13) is snapped away on a 2^-24 grid, so a
  // lossless reconstruction returns the input samples exactly.
  auto recon = [k](const PlaneF& p) {
    PlaneF out = idct2(lowpass(dct2(p), {k}));
    for (double& v : out.values()) v = std::nearbyint(std::ldexp(v, 24)) / 16777216.0;
    return out;
  };
  return renormalize({recon(planes.r), recon(planes.g), recon(planes.b), recon(planes.v)}, 1e-9);
}

FusionPlanes dct_lowpass_planes(const ColorImage& rgb, int k) {
  return dct_lowpass_planes(FusionPlanes::from_image(rgb), k);
}

DescriptorRecord d_albpcsf(const FusionPlanes& planes, int k, const LbpConfig& cfg) {
  const FusedDescriptor fused = albpcsf(dct_lowpass_planes(planes, k), cfg);
  return {Method::DAlbpcsf, {cfg, {}, {}, k}, global_normalize(fused)};
}

DescriptorRecord d_albpcsf(const ColorImage& rgb, int k, const LbpConfig& cfg) {
  return d_albpcsf(FusionPlanes::from_image(rgb), k, cfg);
}

PairStats pair_stats(const PlaneF& map, const ChannelPair& pair) {
  if (map.empty()) throw Error("pair_stats: empty map");
  const double n = static_cast<double>(map.size());
  const double mean = std::accumulate(map.values().begin(), map.values().end(), 0.0) / n;
  double ss = 0.0;
  for (double v : map.values()) ss += (v - mean) * (v - mean);
  return {pair, mean, std::sqrt(ss / n)};
}

std::vector<PairStats> fusion_pair_stats(const FusionPlanes& planes, const LbpConfig& cfg) {
  std::vector<PairStats> out;
  for (const ChannelPair& pair : kFusionPairs) {
    const CodeMap codes = cross_channel_lbp(planes[pair.neighbor], planes[pair.center], cfg);
    PlaneF as_real(codes.width(), codes.height());
    std::copy(codes.values().begin(), codes.values().end(), as_real.values().begin());
    out.push_back(pair_stats(as_real, pair));
  }
  return out;
}

}  // namespace rocktex
