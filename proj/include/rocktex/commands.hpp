#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rocktex/archive.hpp"
#include "rocktex/corpus.hpp"
#include "rocktex/descriptors.hpp"
#include "rocktex/similarity.hpp"

namespace rocktex {

/// Everything one CLI run can be configured with.
struct RunConfig {
  Method method = Method::DAlbpcsf;
  LbpConfig lbp;
  double gabor_sigma = std::numbers::pi;
  double gabor_f = std::numbers::sqrt2;
  /// Filters as (wavelength, angle in degrees); the cross product is used.
  std::vector<double> lambdas{4.0, 8.0};
  std::vector<double> thetas{0.0, 45.0, 90.0, 135.0, 180.0};
  bool full_bank = false;  ///< all 40 (orientation, scale) filters instead
  std::vector<int> dct_k{32};
  Metric metric = Metric::HistIntersection;
  ClassScore class_score = ClassScore::Mean;
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

/// Default output directory: $ROCKTEX_OUT if set, else "rocktex_out".
std::filesystem::path default_out_dir();

/// Descriptor parameter tuples a config expands to for its method.
std::vector<DescriptorParams> parameter_grid(const RunConfig& cfg);

/// Every descriptor of one image for the configured method and grid.
std::vector<DescriptorRecord> extract_image(const ColorImage& rgb, const RunConfig& cfg);

struct ExtractFailure {
  std::string file;
  std::string message;
};

struct ExtractResult {
  std::vector<ArchiveRecord> records;  ///< manifest order, then grid order
  std::vector<ExtractFailure> failures;
  std::filesystem::path archive;
  std::optional<std::filesystem::path> pair_stats;
};

/// Extracts all images (in parallel) and writes `<out>/descriptors.jsonl`
/// after every image is done. With `pair_stats` set, also writes
/// `<out>/pair_stats.csv` (mean/std of every fusion pair's code map).
ExtractResult cmd_extract(const RunConfig& cfg, const CorpusManifest& manifest,
                          bool pair_stats = false);

struct CompareResult {
  std::vector<std::filesystem::path> matrices;  ///< one per record group
  std::filesystem::path class_means;
};

/// Pairwise distance matrix per record group (`similarity_<metric>_<slug>.csv`)
/// and the mean intra-class distance per class and group
/// (`class_means_<metric>.csv`).
CompareResult cmd_compare(const std::filesystem::path& archive, Metric metric,
                          const std::filesystem::path& out_dir);

struct ClassifyResult {
  std::vector<EvaluationReport> reports;
  std::vector<std::filesystem::path> files;
};

/// Leave-one-out evaluation per record group: `confusion_<metric>_<slug>.csv`
/// and `metrics_<metric>_<slug>.json`; with `dump_histograms`, every record's
/// vector goes to `histograms.csv`.
ClassifyResult cmd_classify(const std::filesystem::path& archive, Metric metric,
                            const std::filesystem::path& out_dir,
                            ClassScore score = ClassScore::Mean, bool dump_histograms = false);

}  // namespace rocktex
