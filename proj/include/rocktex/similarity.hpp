#pragma once

#include <span>
#include <string_view>

namespace rocktex {

enum class Metric { HistIntersection, ChiSquare };

std::string_view to_string(Metric m);  ///< "hi" or "chi2"
Metric parse_metric(std::string_view name);

struct SimilarityScore {
  Metric metric;
  double value;
};

/// 1 - sum_i min(h1_i, h2_i). Both inputs must have equal length and sum to
/// 1 within 1e-6; 0 means identical.
SimilarityScore hist_intersection(std::span<const double> h1, std::span<const double> h2);

/// sum_i (h1_i - h2_i)^2 / (h1_i + h2_i); bins where both are zero add 0.
/// Inputs must have equal length and no negative entries.
SimilarityScore chi_square(std::span<const double> h1, std::span<const double> h2);

double distance(Metric m, std::span<const double> h1, std::span<const double> h2);

}  // namespace rocktex
