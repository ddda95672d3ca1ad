#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rocktex/image.hpp"

namespace rocktex {

struct CorpusClass {
  std::string name;
  std::vector<std::filesystem::path> images;  ///< sorted by file name
};

/// One subdirectory per class, classes in lexicographic order; class index i
/// (0-based here) is reported as i + 1.
struct CorpusManifest {
  std::filesystem::path root;
  std::vector<CorpusClass> classes;

  std::size_t image_count() const;
};

/// Lists the corpus under `root`. Hidden entries are ignored; every other
/// regular file in a class folder is taken as an image. With `decode` set,
/// every image is decoded and rejected unless it is 3-channel 8-bit.
/// Requires at least 2 classes with at least 2 images each.
CorpusManifest ingest(const std::filesystem::path& root, bool decode = true);

enum class ImageFormat { Png, Ppm };

struct SynthSpec {
  int classes = 8;
  int per_class = 5;
  int size = 256;
  ImageFormat format = ImageFormat::Png;
};

/// Class-structured color texture: class base hue, oriented grating and
/// noise level, with per-image phase and orientation jitter drawn from `seed`.
ColorImage synth_image(std::uint64_t seed, const SynthSpec& spec, int cls, int index);

/// Writes spec.classes folders "class_01", ... each with spec.per_class images
/// "img_01.png", ...; returns the written paths in order.
std::vector<std::filesystem::path> synth_corpus(std::uint64_t seed, const SynthSpec& spec,
                                                const std::filesystem::path& out_dir);

}  // namespace rocktex
