#include "rocktex/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "rocktex/io.hpp"

namespace fs = std::filesystem;

namespace rocktex {

std::size_t CorpusManifest::image_count() const {
  std::size_t n = 0;
  for (const auto& c : classes) n += c.images.size();
  return n;
}

namespace {

bool hidden(const fs::path& p) {
  const std::string name = p.filename().string();
  return !name.empty() && name.front() == '.';
}

}  // namespace

CorpusManifest ingest(const fs::path& root, bool decode) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw Error(root.string() + ": not a directory");

  CorpusManifest m{root, {}};
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory() || hidden(entry.path())) continue;
    CorpusClass cls{entry.path().filename().string(), {}};
    for (const auto& file : fs::directory_iterator(entry.path()))
      if (file.is_regular_file() && !hidden(file.path())) cls.images.push_back(file.path());
    std::sort(cls.images.begin(), cls.images.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    m.classes.push_back(std::move(cls));
  }
  std::sort(m.classes.begin(), m.classes.end(),
            [](const CorpusClass& a, const CorpusClass& b) { return a.name < b.name; });

  if (m.classes.size() < 2)
    throw Error(root.string() + ": need at least 2 class folders, found " +
                std::to_string(m.classes.size()));
  for (const auto& cls : m.classes) {
    if (cls.images.empty()) throw Error((root / cls.name).string() + ": empty class folder");
    if (cls.images.size() < 2)
      throw Error((root / cls.name).string() + ": class needs at least 2 images, found 1");
    if (decode)
      for (const auto& img : cls.images) (void)read_image(img);
  }
  return m;
}

namespace {

// 53-bit uniform in [0, 1); mt19937_64 output is fully specified by the standard.
double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::array<double, 3> hsv_float_to_rgb(double hue_deg, double s, double v) {
  const double h = std::fmod(hue_deg, 360.0) / 60.0;
  const int sector = static_cast<int>(h);
  const double f = h - sector;
  const double p = v * (1 - s), q = v * (1 - s * f), t = v * (1 - s * (1 - f));
  switch (sector) {
    case 0: return {v, t, p};
    case 1: return {q, v, p};
    case 2: return {p, v, t};
    case 3: return {p, q, v};
    case 4: return {t, p, v};
    default: return {v, p, q};
  }
}

}  // namespace

ColorImage synth_image(std::uint64_t seed, const SynthSpec& spec, int cls, int index) {
  if (spec.classes < 1 || spec.per_class < 1 || spec.size < 3)
    throw Error("synthetic corpus spec needs classes >= 1, per_class >= 1, size >= 3");
  std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(cls + 1)) ^
                      (0xC2B2AE3D27D4EB4Full * static_cast<std::uint64_t>(index + 1)));

  const double hue = 360.0 * cls / spec.classes;
  const auto base = hsv_float_to_rgb(hue, 0.55, 0.55 * 255.0);
  const double theta = std::numbers::pi * cls / spec.classes +
                       (uniform(rng) - 0.5) * (8.0 * std::numbers::pi / 180.0);
  const double period = 18.0 + 6.0 * (cls % 4);
  const double noise = 6.0 + 6.0 * (cls % 3);
  const double amplitude = 50.0 * (0.9 + 0.2 * uniform(rng));
  const double phase = 2.0 * std::numbers::pi * uniform(rng);
  constexpr std::array<double, 3> weight{1.0, 0.85, 0.7};

  const double cx = std::cos(theta), cy = std::sin(theta);
  std::vector<Pixel> px(static_cast<std::size_t>(spec.size) * spec.size);
  for (int y = 0; y < spec.size; ++y) {
    for (int x = 0; x < spec.size; ++x) {
      const double wave =
          std::sin(2.0 * std::numbers::pi * (x * cx + y * cy) / period + phase);
      Pixel& p = px[static_cast<std::size_t>(y) * spec.size + x];
      for (int c = 0; c < 3; ++c) {
        const double v = base[c] + amplitude * weight[c] * wave + noise * (2.0 * uniform(rng) - 1.0);
        p[c] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return ColorImage(spec.size, spec.size, ColorSpace::RGB, std::move(px));
}

std::vector<fs::path> synth_corpus(std::uint64_t seed, const SynthSpec& spec,
                                   const fs::path& out_dir) {
  std::vector<fs::path> written;
  char name[32];
  for (int c = 0; c < spec.classes; ++c) {
    std::snprintf(name, sizeof name, "class_%02d", c + 1);
    const fs::path dir = out_dir / name;
    fs::create_directories(dir);
    for (int i = 0; i < spec.per_class; ++i) {
      std::snprintf(name, sizeof name, "img_%02d.%s", i + 1,
                    spec.format == ImageFormat::Png ? "png" : "ppm");
      const fs::path file = dir / name;
      const ColorImage img = synth_image(seed, spec, c, i);
      if (spec.format == ImageFormat::Png)
        write_png(file, img);
      else
        write_ppm(file, img);
      written.push_back(file);
    }
  }
  return written;
}

}  // namespace rocktex
