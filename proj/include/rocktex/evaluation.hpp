#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rocktex/similarity.hpp"

namespace rocktex {

struct LabeledItem {
  std::size_t label;  ///< index into LabeledCorpus::classes
  std::vector<double> descriptor;
};

struct LabeledCorpus {
  std::vector<std::string> classes;
  std::vector<LabeledItem> items;

  /// Throws unless every label is valid and every class has >= 2 items.
  void validate() const;
  std::vector<std::size_t> class_sizes() const;
};

/// How distances to the members of one class are reduced to a class score.
enum class ClassScore { Mean, Median };

/// Class whose members are on average closest to the query; ties go to the
/// lowest class index. `exclude` removes one corpus item (leave-one-out).
std::size_t classify(std::span<const double> query, const LabeledCorpus& corpus, Metric metric,
                     std::optional<std::size_t> exclude = std::nullopt,
                     ClassScore score = ClassScore::Mean);

/// K x K counts; rows are true classes, columns predicted classes.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t classes);
  /// Row-major counts, must hold classes^2 entries.
  ConfusionMatrix(std::size_t classes, std::vector<std::uint64_t> counts);

  std::size_t classes() const { return k_; }
  std::uint64_t operator()(std::size_t truth, std::size_t predicted) const {
    return counts_[truth * k_ + predicted];
  }
  void add(std::size_t truth, std::size_t predicted, std::uint64_t n = 1);

  std::uint64_t row_sum(std::size_t truth) const;
  std::uint64_t col_sum(std::size_t predicted) const;
  std::uint64_t diagonal() const;
  std::uint64_t total() const;
  std::span<const std::uint64_t> counts() const { return counts_; }

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::size_t k_;
  std::vector<std::uint64_t> counts_;
};

/// Leave-one-out classification of every corpus item.
ConfusionMatrix confusion(const LabeledCorpus& corpus, Metric metric,
                          ClassScore score = ClassScore::Mean);

/// VP/FP/VN/FN: true/false positives and negatives.
struct BinaryTallies {
  std::uint64_t vp = 0, fp = 0, vn = 0, fn = 0;

  std::uint64_t total() const { return vp + fp + vn + fn; }
  bool operator==(const BinaryTallies&) const = default;
};

/// One-vs-rest tallies of a single class.
BinaryTallies class_tallies(const ConfusionMatrix& cm, std::size_t c);

/// One-vs-rest tallies summed over all classes.
BinaryTallies binary_tallies(const ConfusionMatrix& cm);

/// Empty optional marks a metric whose denominator is zero.
struct Metrics {
  std::optional<double> sensitivity;  ///< VP / (VP + FN)
  std::optional<double> specificity;  ///< VN / (VN + FP)
  std::optional<double> precision;    ///< VP / (VP + FP)
  std::optional<double> accuracy;     ///< (VP + VN) / total
  std::optional<double> error_rate;   ///< 1 - accuracy
};

Metrics metrics(const BinaryTallies& t);

struct ClassReport {
  std::size_t index;
  BinaryTallies tallies;
  std::optional<double> accuracy;           ///< (VP + VN) / total
  std::optional<double> positive_accuracy;  ///< VP / (VP + FP)
  std::optional<double> negative_accuracy;  ///< VN / (VN + FN)
};

std::vector<ClassReport> per_class_report(const ConfusionMatrix& cm);

/// Mean per-class accuracy over a subset of classes (group rows of a report).
std::optional<double> group_accuracy(std::span<const ClassReport> report,
                                     std::span<const std::size_t> members);

}  // namespace rocktex
