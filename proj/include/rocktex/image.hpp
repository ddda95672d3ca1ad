#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rocktex {

/// Raised on any contract violation (bad dimensions, channel/space mismatch, bad input file...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-major 2D grid, origin top-left, x = column, y = row.
template <typename T>
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, T fill = T{})
      : width_(width), height_(height) {
    if (width < 0 || height < 0) throw Error("plane dimensions must be nonnegative");
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }
  Plane(int width, int height, std::vector<T> values)
      : width_(width), height_(height), data_(std::move(values)) {
    if (width < 0 || height < 0) throw Error("plane dimensions must be nonnegative");
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
      throw Error("plane value count does not match dimensions");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(int x, int y) { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[index(x, y)]; }

  std::span<T> values() & { return data_; }
  std::span<const T> values() const& { return data_; }
  std::span<const T> values() && = delete;  // would dangle
  std::span<const T> row(int y) const {
    return std::span<const T>(data_).subspan(static_cast<std::size_t>(y) * width_, width_);
  }

  bool operator==(const Plane&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using PlaneF = Plane<double>;
using ComplexPlane = Plane<std::complex<double>>;

enum class ColorSpace { RGB, HSV };
enum class Channel { R, G, B, H, S, V };

std::string_view to_string(ColorSpace space);
std::string_view to_string(Channel ch);

/// Space the channel belongs to: R,G,B -> RGB; H,S,V -> HSV.
ColorSpace space_of(Channel ch);

using Pixel = std::array<std::uint8_t, 3>;

/// 3-channel 8-bit image. At least 3x3 so a radius-1 LBP neighborhood fits.
class ColorImage {
 public:
  ColorImage(int width, int height, ColorSpace space, std::vector<Pixel> pixels);
  /// Interleaved bytes, 3 per pixel.
  static ColorImage from_interleaved(int width, int height, ColorSpace space,
                                     std::span<const std::uint8_t> bytes);

  int width() const { return width_; }
  int height() const { return height_; }
  ColorSpace space() const { return space_; }

  const Pixel& operator()(int x, int y) const {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::span<const Pixel> pixels() const { return pixels_; }

  bool operator==(const ColorImage&) const = default;

 private:
  int width_;
  int height_;
  ColorSpace space_;
  std::vector<Pixel> pixels_;
};

/// Hexcone conversion of one pixel. H in [0,360) degrees is scaled to [0,255];
/// achromatic pixels get H = 0.
Pixel rgb_to_hsv(const Pixel& rgb);
/// Approximate inverse of rgb_to_hsv (8-bit hue quantization limits accuracy).
Pixel hsv_to_rgb(const Pixel& hsv);

ColorImage rgb_to_hsv(const ColorImage& img);
ColorImage hsv_to_rgb(const ColorImage& img);

/// Selected channel as reals in [0,255].
PlaneF extract_plane(const ColorImage& img, Channel ch);

/// Affine rescale to [0,255]. A plane whose range is at most
/// `constant_tolerance * max(|min|, |max|)` is treated as constant and maps to
/// all zeros; the default 0 means only an exactly constant plane does.
PlaneF normalize_plane(const PlaneF& p, double constant_tolerance = 0.0);

/// Rounds every sample to the nearest integer (8-bit-like intensities).
PlaneF quantize_plane(const PlaneF& p);

}  // namespace rocktex
