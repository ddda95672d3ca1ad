#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "rocktex/evaluation.hpp"
#include "rocktex/image.hpp"

namespace testing {

inline rocktex::PlaneF random_plane(int w, int h, std::uint64_t seed, double lo = 0.0,
                                    double hi = 255.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  rocktex::PlaneF p(w, h);
  for (double& v : p.values()) v = d(rng);
  return p;
}

/// Integer-valued plane, so ties between neighbors and center occur.
inline rocktex::PlaneF random_int_plane(int w, int h, std::uint64_t seed, int lo = 0,
                                        int hi = 255) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(lo, hi);
  rocktex::PlaneF p(w, h);
  for (double& v : p.values()) v = d(rng);
  return p;
}

inline rocktex::ColorImage random_image(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(0, 255);
  std::vector<rocktex::Pixel> px(static_cast<std::size_t>(w) * h);
  for (auto& p : px)
    for (auto& c : p) c = static_cast<std::uint8_t>(d(rng));
  return rocktex::ColorImage(w, h, rocktex::ColorSpace::RGB, std::move(px));
}

inline rocktex::ColorImage uniform_image(int w, int h, rocktex::Pixel p) {
  return rocktex::ColorImage(w, h, rocktex::ColorSpace::RGB,
                             std::vector<rocktex::Pixel>(static_cast<std::size_t>(w) * h, p));
}

/// D-ALBPCSF confusion matrix of the 8-class rock benchmark (5 images per class).
inline rocktex::ConfusionMatrix reference_confusion() {
  return rocktex::ConfusionMatrix(8, {4, 0, 0, 0, 1, 0, 0, 0,  //
                                      0, 5, 0, 0, 0, 0, 0, 0,  //
                                      0, 0, 5, 0, 0, 0, 0, 0,  //
                                      0, 0, 0, 5, 0, 0, 0, 0,  //
                                      0, 0, 0, 0, 5, 0, 0, 0,  //
                                      1, 1, 0, 0, 0, 2, 0, 1,  //
                                      0, 0, 0, 0, 0, 0, 4, 1,  //
                                      1, 0, 0, 0, 2, 0, 0, 2});
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("rocktex_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing
