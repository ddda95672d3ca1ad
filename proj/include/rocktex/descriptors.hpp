#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rocktex/albpcsf.hpp"
#include "rocktex/gabor.hpp"
#include "rocktex/image.hpp"
#include "rocktex/lbp.hpp"

namespace rocktex {

enum class Method { RgbHist, Lbp, Albpcsf, GAlbpcsf, DAlbpcsf };

/// "RGB_HIST", "LBP", "ALBPCSF", "G_ALBPCSF", "D_ALBPCSF".
std::string_view to_string(Method m);
/// Accepts the canonical names case-insensitively, with '-' or '_'.
Method parse_method(std::string_view name);

struct DescriptorParams {
  LbpConfig lbp;
  std::optional<GaborParams> gabor;
  /// Label the filter was requested with, kept for reporting (e.g. 180 deg
  /// folds onto orientation 0 but is reported as 180).
  std::optional<double> theta_deg;
  std::optional<int> dct_k;
};

/// One descriptor vector; nonnegative and summing to 1.
struct DescriptorRecord {
  Method method = Method::Albpcsf;
  DescriptorParams params;
  std::vector<double> vector;
};

/// Samples below `relative_floor * max|input| * kernel L1` are numerical
/// residue of the convolution and are flushed to zero before rescaling.
struct GaborPipelineOptions {
  KernelOptions kernel;
  ConvolutionMethod convolution = ConvolutionMethod::Auto;
  double relative_floor = 1e-9;
};

/// Per-channel R, G, B byte histograms, concatenated.
DescriptorRecord rgb_histogram(const ColorImage& rgb);

/// Single-channel LBP on BT.601 luma.
DescriptorRecord lbp_descriptor(const ColorImage& rgb, const LbpConfig& cfg);

/// Color-space-fusion LBP on the raw intensities.
DescriptorRecord albpcsf_descriptor(const ColorImage& rgb, const LbpConfig& cfg);

/// Gabor amplitudes of R, G, B and V for one filter, rescaled to [0,255] and
/// rounded, then coded by the color-space-fusion LBP.
FusionPlanes gabor_amplitude_planes(const ColorImage& rgb, const GaborParams& gp,
                                    const GaborPipelineOptions& opts = {});
FusionPlanes gabor_amplitude_planes(const FusionPlanes& planes, const GaborParams& gp,
                                    const GaborPipelineOptions& opts = {});
DescriptorRecord g_albpcsf(const ColorImage& rgb, const GaborParams& gp, const LbpConfig& cfg,
                           const GaborPipelineOptions& opts = {});
DescriptorRecord g_albpcsf(const FusionPlanes& planes, const GaborParams& gp,
                           const LbpConfig& cfg, const GaborPipelineOptions& opts = {});

/// Low-frequency DCT reconstructions of R, G, B and V (k x k block kept),
/// rescaled to [0,255] and rounded, then coded by the color-space-fusion LBP.
FusionPlanes dct_lowpass_planes(const ColorImage& rgb, int k);
FusionPlanes dct_lowpass_planes(const FusionPlanes& planes, int k);
DescriptorRecord d_albpcsf(const ColorImage& rgb, int k, const LbpConfig& cfg);
DescriptorRecord d_albpcsf(const FusionPlanes& planes, int k, const LbpConfig& cfg);

/// Fusion planes rescaled to [0,255] and rounded, channel by channel.
FusionPlanes renormalize(const FusionPlanes& planes, double constant_tolerance = 0.0);

/// Concatenation of the per-pair histograms divided by the pair count.
std::vector<double> global_normalize(const FusedDescriptor& d);

struct PairStats {
  ChannelPair pair;
  double mean = 0.0;
  double std = 0.0;  ///< population standard deviation
};

PairStats pair_stats(const PlaneF& map, const ChannelPair& pair);

/// Mean/std of the cross-channel code map of every fusion pair, computed on
/// the given planes (Gabor amplitude or DCT planes).
std::vector<PairStats> fusion_pair_stats(const FusionPlanes& planes, const LbpConfig& cfg);

}  // namespace rocktex
