#include "rocktex/io.hpp"

#include <png.h>

#include <array>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

namespace rocktex {

namespace {

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path.string() + ": cannot open");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
  throw Error(path.string() + ": " + what);
}

ColorImage decode_png(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
    fail(path, std::string("PNG decode failed: ") + image.message);
  const png_uint_32 fmt = image.format;
  const std::string problem =
      (fmt & PNG_FORMAT_FLAG_LINEAR)   ? "16-bit samples, expected 8-bit"
      : !(fmt & PNG_FORMAT_FLAG_COLOR) ? "grayscale, expected 3 color channels"
      : (fmt & PNG_FORMAT_FLAG_ALPHA)  ? "has an alpha channel, expected exactly 3 channels"
                                       : "";
  if (!problem.empty()) {
    png_image_free(&image);
    fail(path, problem);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr))
    fail(path, std::string("PNG decode failed: ") + image.message);
  return ColorImage::from_interleaved(static_cast<int>(image.width),
                                      static_cast<int>(image.height), ColorSpace::RGB, buf);
}

class PpmCursor {
 public:
  PpmCursor(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes)
      : path_(path), bytes_(bytes) {}

  long next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) fail(path_, "malformed PPM header");
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > 1'000'000) fail(path_, "PPM header value out of range");
    }
    return v;
  }
  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_start() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) fail(path_, "malformed PPM header");
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::filesystem::path& path_;
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 2;
};

ColorImage decode_ppm(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  PpmCursor cur(path, bytes);
  const long w = cur.next_int();
  const long h = cur.next_int();
  const long maxval = cur.next_int();
  if (maxval != 255) fail(path, "PPM maxval " + std::to_string(maxval) + ", expected 8-bit (255)");
  const std::size_t start = cur.raster_start();
  const std::size_t need = 3 * static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (bytes.size() < start + need) fail(path, "truncated PPM raster");
  try {
    return ColorImage::from_interleaved(static_cast<int>(w), static_cast<int>(h), ColorSpace::RGB,
                                        std::span(bytes).subspan(start, need));
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

std::vector<std::uint8_t> interleave(const ColorImage& rgb) {
  if (rgb.space() != ColorSpace::RGB) throw Error("only RGB images can be written");
  std::vector<std::uint8_t> out;
  out.reserve(rgb.pixels().size() * 3);
  for (const Pixel& p : rgb.pixels()) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

ColorImage read_image(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  static constexpr std::array<std::uint8_t, 8> kPngMagic{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::equal(kPngMagic.begin(), kPngMagic.end(), bytes.begin()))
    return decode_png(path, bytes);
  if (bytes.size() >= 2 && bytes[0] == 'P') {
    if (bytes[1] == '6') return decode_ppm(path, bytes);
    fail(path, std::string("unsupported PNM variant P") + static_cast<char>(bytes[1]) +
                   ", expected binary color P6");
  }
  fail(path, "not a PNG or PPM image");
}

void write_png(const std::filesystem::path& path, const ColorImage& rgb) {
  auto buf = interleave(rgb);
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(rgb.width());
  image.height = static_cast<png_uint_32>(rgb.height());
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, buf.data(), 0, nullptr))
    throw Error(path.string() + ": PNG encode failed: " + image.message);
}

void write_ppm(const std::filesystem::path& path, const ColorImage& rgb) {
  const auto buf = interleave(rgb);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  out << "P6\n" << rgb.width() << ' ' << rgb.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw Error(path.string() + ": write failed");
}

}  // namespace rocktex
