#include "rocktex/lbp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace rocktex {

void LbpConfig::validate() const {
  if (neighbors < 4 || neighbors > 24)
    throw Error("LBP neighbor count must be in [4, 24], got " + std::to_string(neighbors));
  if (!(radius >= 1.0) || !std::isfinite(radius))
    throw Error("LBP radius must be >= 1, got " + std::to_string(radius));
}

int LbpConfig::border() const { return static_cast<int>(std::ceil(radius)); }

double CodeHistogram::total() const { return std::accumulate(bins.begin(), bins.end(), 0.0); }

std::uint32_t lbp_code(double center, std::span<const double> neighbors) {
  std::uint32_t code = 0;
  for (std::size_t i = 0; i < neighbors.size(); ++i)
    if (neighbors[i] - center >= 0.0) code |= 1u << i;
  return code;
}

namespace {

std::uint32_t mask(int p) { return p >= 32 ? ~0u : (1u << p) - 1u; }

std::uint32_t rotate_right(std::uint32_t code, int p, int k) {
  if (k == 0) return code;
  return ((code >> k) | (code << (p - k))) & mask(p);
}

}  // namespace

std::uint32_t ri_code(std::uint32_t code, int neighbors) {
  std::uint32_t best = code;
  for (int k = 1; k < neighbors; ++k) best = std::min(best, rotate_right(code, neighbors, k));
  return best;
}

int transitions(std::uint32_t code, int neighbors) {
  const std::uint32_t rotated = rotate_right(code, neighbors, 1);
  return std::popcount((code ^ rotated) & mask(neighbors));
}

std::uint32_t riu2_code(std::uint32_t code, int neighbors) {
  if (transitions(code, neighbors) <= 2) return static_cast<std::uint32_t>(std::popcount(code));
  return static_cast<std::uint32_t>(neighbors + 1);
}

LabelTable::LabelTable(const LbpConfig& cfg) {
  cfg.validate();
  const std::uint32_t n = 1u << cfg.neighbors;
  table_.resize(n);
  switch (cfg.variant) {
    case LbpVariant::Basic:
      std::iota(table_.begin(), table_.end(), 0u);
      bins_ = n;
      break;
    case LbpVariant::RotationInvariant: {
      std::vector<std::uint32_t> rank(n, 0);
      std::vector<char> is_min(n, 0);
      for (std::uint32_t c = 0; c < n; ++c) is_min[ri_code(c, cfg.neighbors)] = 1;
      std::uint32_t next = 0;
      for (std::uint32_t c = 0; c < n; ++c)
        if (is_min[c]) rank[c] = next++;
      for (std::uint32_t c = 0; c < n; ++c) table_[c] = rank[ri_code(c, cfg.neighbors)];
      bins_ = next;
      break;
    }
    case LbpVariant::Riu2:
      for (std::uint32_t c = 0; c < n; ++c) table_[c] = riu2_code(c, cfg.neighbors);
      bins_ = static_cast<std::size_t>(cfg.neighbors) + 2;
      break;
  }
}

std::size_t bin_count(const LbpConfig& cfg) {
  if (cfg.variant == LbpVariant::Riu2) {
    cfg.validate();
    return static_cast<std::size_t>(cfg.neighbors) + 2;
  }
  return LabelTable(cfg).bins();
}

namespace {

struct Sample {
  int x0, y0;
  double fx, fy;
};

// Offsets relative to the center, p_0 top-left then clockwise.
std::vector<Sample> neighborhood(const LbpConfig& cfg) {
  std::vector<Sample> out;
  out.reserve(cfg.neighbors);
  const double r = cfg.radius;
  if (cfg.neighbors == 8 && r == std::floor(r)) {
    const int k = static_cast<int>(r);
    const int ring[8][2] = {{-k, -k}, {0, -k}, {k, -k}, {k, 0}, {k, k}, {0, k}, {-k, k}, {-k, 0}};
    for (const auto& o : ring) out.push_back({o[0], o[1], 0.0, 0.0});
    return out;
  }
  for (int i = 0; i < cfg.neighbors; ++i) {
    const double theta = 0.75 * std::numbers::pi - 2.0 * std::numbers::pi * i / cfg.neighbors;
    double dx = r * std::cos(theta);
    double dy = -r * std::sin(theta);
    if (std::abs(dx - std::round(dx)) < 1e-6) dx = std::round(dx);
    if (std::abs(dy - std::round(dy)) < 1e-6) dy = std::round(dy);
    const double fx0 = std::floor(dx), fy0 = std::floor(dy);
    out.push_back({static_cast<int>(fx0), static_cast<int>(fy0), dx - fx0, dy - fy0});
  }
  return out;
}

double sample(const PlaneF& p, int x, int y, const Sample& s) {
  const int x0 = x + s.x0, y0 = y + s.y0;
  if (s.fx == 0.0 && s.fy == 0.0) return p(x0, y0);
  // Nested lerps: exact when the corners agree, so flat regions stay flat.
  auto lerp = [](double a, double b, double t) { return t == 0.0 ? a : a + t * (b - a); };
  const double top = lerp(p(x0, y0), s.fx > 0.0 ? p(x0 + 1, y0) : 0.0, s.fx);
  if (s.fy == 0.0) return top;
  const double bottom = lerp(p(x0, y0 + 1), s.fx > 0.0 ? p(x0 + 1, y0 + 1) : 0.0, s.fx);
  return lerp(top, bottom, s.fy);
}

}  // namespace

CodeMap lbp_map(const PlaneF& neighbor_plane, const PlaneF& center_plane, const LbpConfig& cfg) {
  cfg.validate();
  if (neighbor_plane.width() != center_plane.width() ||
      neighbor_plane.height() != center_plane.height())
    throw Error("LBP planes differ in size: " + std::to_string(neighbor_plane.width()) + "x" +
                std::to_string(neighbor_plane.height()) + " vs " +
                std::to_string(center_plane.width()) + "x" +
                std::to_string(center_plane.height()));
  const int b = cfg.border();
  const int min_side = 2 * b + 1;
  if (center_plane.width() < min_side || center_plane.height() < min_side)
    throw Error("plane " + std::to_string(center_plane.width()) + "x" +
                std::to_string(center_plane.height()) + " too small for LBP radius " +
                std::to_string(cfg.radius) + " (needs at least " + std::to_string(min_side) +
                "x" + std::to_string(min_side) + ")");

  const LabelTable labels(cfg);
  const auto hood = neighborhood(cfg);
  CodeMap out(center_plane.width() - 2 * b, center_plane.height() - 2 * b);
  std::vector<double> ring(hood.size());
  for (int y = b; y < center_plane.height() - b; ++y) {
    for (int x = b; x < center_plane.width() - b; ++x) {
      for (std::size_t i = 0; i < hood.size(); ++i) ring[i] = sample(neighbor_plane, x, y, hood[i]);
      out(x - b, y - b) = labels(lbp_code(center_plane(x, y), ring));
    }
  }
  return out;
}

CodeMap lbp_map(const PlaneF& plane, const LbpConfig& cfg) { return lbp_map(plane, plane, cfg); }

CodeHistogram histogram(const CodeMap& codes, std::size_t n_bins, bool normalize) {
  CodeHistogram h{std::vector<double>(n_bins, 0.0), normalize};
  for (std::uint32_t c : codes.values()) {
    if (c >= n_bins)
      throw Error("code " + std::to_string(c) + " out of range for " + std::to_string(n_bins) +
                  " bins");
    h.bins[c] += 1.0;
  }
  if (normalize && !codes.empty()) {
    const double n = static_cast<double>(codes.size());
    for (double& v : h.bins) v /= n;
  }
  return h;
}

}  // namespace rocktex
