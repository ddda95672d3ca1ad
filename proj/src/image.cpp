#include "rocktex/image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rocktex {

std::string_view to_string(ColorSpace space) {
  return space == ColorSpace::RGB ? "RGB" : "HSV";
}

std::string_view to_string(Channel ch) {
  switch (ch) {
    case Channel::R: return "R";
    case Channel::G: return "G";
    case Channel::B: return "B";
    case Channel::H: return "H";
    case Channel::S: return "S";
    case Channel::V: return "V";
  }
  return "?";
}

ColorSpace space_of(Channel ch) {
  switch (ch) {
    case Channel::R:
    case Channel::G:
    case Channel::B: return ColorSpace::RGB;
    default: return ColorSpace::HSV;
  }
}

ColorImage::ColorImage(int width, int height, ColorSpace space, std::vector<Pixel> pixels)
    : width_(width), height_(height), space_(space), pixels_(std::move(pixels)) {
  if (width < 3 || height < 3)
    throw Error("image must be at least 3x3, got " + std::to_string(width) + "x" +
                std::to_string(height));
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw Error("pixel count does not match image dimensions");
}

ColorImage ColorImage::from_interleaved(int width, int height, ColorSpace space,
                                        std::span<const std::uint8_t> bytes) {
  if (width < 0 || height < 0 ||
      bytes.size() != 3 * static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw Error("interleaved buffer size does not match 3 x width x height");
  std::vector<Pixel> px(bytes.size() / 3);
  for (std::size_t i = 0; i < px.size(); ++i)
    px[i] = {bytes[3 * i], bytes[3 * i + 1], bytes[3 * i + 2]};
  return ColorImage(width, height, space, std::move(px));
}

namespace {

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

Pixel rgb_to_hsv(const Pixel& rgb) {
  const int r = rgb[0], g = rgb[1], b = rgb[2];
  const int mx = std::max({r, g, b});
  const int mn = std::min({r, g, b});
  const int delta = mx - mn;

  double hue_deg = 0.0;
  if (delta != 0) {
    if (mx == r)
      hue_deg = 60.0 * static_cast<double>(g - b) / delta;
    else if (mx == g)
      hue_deg = 60.0 * (2.0 + static_cast<double>(b - r) / delta);
    else
      hue_deg = 60.0 * (4.0 + static_cast<double>(r - g) / delta);
    if (hue_deg < 0.0) hue_deg += 360.0;
  }
  const double sat = mx == 0 ? 0.0 : 255.0 * delta / mx;
  return {to_byte(hue_deg * 255.0 / 360.0), to_byte(sat), static_cast<std::uint8_t>(mx)};
}

Pixel hsv_to_rgb(const Pixel& hsv) {
  const double v = hsv[2];
  const double s = hsv[1] / 255.0;
  if (hsv[1] == 0) return {hsv[2], hsv[2], hsv[2]};
  double h = hsv[0] * 360.0 / 255.0 / 60.0;
  if (h >= 6.0) h -= 6.0;
  const int sector = static_cast<int>(std::floor(h));
  const double frac = h - sector;
  const double p = v * (1.0 - s);
  const double q = v * (1.0 - s * frac);
  const double t = v * (1.0 - s * (1.0 - frac));
  double r = 0, g = 0, b = 0;
  switch (sector) {
    case 0: r = v, g = t, b = p; break;
    case 1: r = q, g = v, b = p; break;
    case 2: r = p, g = v, b = t; break;
    case 3: r = p, g = q, b = v; break;
    case 4: r = t, g = p, b = v; break;
    default: r = v, g = p, b = q; break;
  }
  return {to_byte(r), to_byte(g), to_byte(b)};
}

ColorImage rgb_to_hsv(const ColorImage& img) {
  if (img.space() != ColorSpace::RGB) throw Error("rgb_to_hsv expects an RGB image");
  std::vector<Pixel> out(img.pixels().size());
  std::transform(img.pixels().begin(), img.pixels().end(), out.begin(),
                 [](const Pixel& p) { return rgb_to_hsv(p); });
  return ColorImage(img.width(), img.height(), ColorSpace::HSV, std::move(out));
}

ColorImage hsv_to_rgb(const ColorImage& img) {
  if (img.space() != ColorSpace::HSV) throw Error("hsv_to_rgb expects an HSV image");
  std::vector<Pixel> out(img.pixels().size());
  std::transform(img.pixels().begin(), img.pixels().end(), out.begin(),
                 [](const Pixel& p) { return hsv_to_rgb(p); });
  return ColorImage(img.width(), img.height(), ColorSpace::RGB, std::move(out));
}

PlaneF extract_plane(const ColorImage& img, Channel ch) {
  if (space_of(ch) != img.space())
    throw Error("channel " + std::string(to_string(ch)) + " not in " +
                std::string(to_string(img.space())) + " image");
  const int idx = static_cast<int>(ch) % 3;
  PlaneF out(img.width(), img.height());
  auto dst = out.values();
  auto src = img.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i][idx];
  return out;
}

PlaneF normalize_plane(const PlaneF& p, double constant_tolerance) {
  if (p.empty()) throw Error("normalize_plane: empty plane");
  const auto [lo_it, hi_it] = std::minmax_element(p.values().begin(), p.values().end());
  const double lo = *lo_it, hi = *hi_it;
  PlaneF out(p.width(), p.height(), 0.0);
  const double range = hi - lo;
  if (range <= constant_tolerance * std::max(std::abs(lo), std::abs(hi))) return out;
  auto src = p.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = (src[i] - lo) / range * 255.0;
  return out;
}

PlaneF quantize_plane(const PlaneF& p) {
  PlaneF out = p;
  for (double& v : out.values()) v = std::nearbyint(v);
  return out;
}

}  // namespace rocktex
