#include "rocktex/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "rocktex/image.hpp"

namespace rocktex {

std::string_view to_string(Metric m) { return m == Metric::HistIntersection ? "hi" : "chi2"; }

Metric parse_metric(std::string_view name) {
  std::string key;
  for (char c : name) key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (key == "hi" || key == "intersection") return Metric::HistIntersection;
  if (key == "chi2" || key == "chi-square" || key == "chisquare") return Metric::ChiSquare;
  throw Error("unknown metric '" + std::string(name) + "' (expected hi or chi2)");
}

namespace {

void check_lengths(std::span<const double> h1, std::span<const double> h2) {
  if (h1.size() != h2.size())
    throw Error("histogram length mismatch: " + std::to_string(h1.size()) + " vs " +
                std::to_string(h2.size()));
}

void check_normalized(std::span<const double> h, const char* which) {
  const double s = std::accumulate(h.begin(), h.end(), 0.0);
  if (std::abs(s - 1.0) > 1e-6)
    throw Error(std::string("histogram ") + which + " is not normalized (sum = " +
                std::to_string(s) + ")");
  if (std::any_of(h.begin(), h.end(), [](double v) { return v < 0.0; }))
    throw Error(std::string("histogram ") + which + " has negative bins");
}

}  // namespace

SimilarityScore hist_intersection(std::span<const double> h1, std::span<const double> h2) {
  check_lengths(h1, h2);
  check_normalized(h1, "1");
  check_normalized(h2, "2");
  double common = 0.0;
  for (std::size_t i = 0; i < h1.size(); ++i) common += std::min(h1[i], h2[i]);
  return {Metric::HistIntersection, std::clamp(1.0 - common, 0.0, 1.0)};
}

SimilarityScore chi_square(std::span<const double> h1, std::span<const double> h2) {
  check_lengths(h1, h2);
  double acc = 0.0;
  for (std::size_t i = 0; i < h1.size(); ++i) {
    if (h1[i] < 0.0 || h2[i] < 0.0) throw Error("chi-square: negative histogram bin");
    const double s = h1[i] + h2[i];
    if (s == 0.0) continue;
    const double d = h1[i] - h2[i];
    acc += d * d / s;
  }
  return {Metric::ChiSquare, acc};
}

double distance(Metric m, std::span<const double> h1, std::span<const double> h2) {
  return m == Metric::HistIntersection ? hist_intersection(h1, h2).value
                                       : chi_square(h1, h2).value;
}

}  // namespace rocktex
