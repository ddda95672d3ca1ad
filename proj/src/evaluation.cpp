#include "rocktex/evaluation.hpp"

#include <algorithm>
#include <numeric>

#include "rocktex/image.hpp"

namespace rocktex {

void LabeledCorpus::validate() const {
  if (classes.empty()) throw Error("corpus has no classes");
  for (const LabeledItem& it : items)
    if (it.label >= classes.size())
      throw Error("corpus item label " + std::to_string(it.label) + " out of range");
  const auto sizes = class_sizes();
  for (std::size_t c = 0; c < sizes.size(); ++c)
    if (sizes[c] < 2)
      throw Error("class '" + classes[c] + "' has " + std::to_string(sizes[c]) +
                  " item(s); leave-one-out needs at least 2");
}

std::vector<std::size_t> LabeledCorpus::class_sizes() const {
  std::vector<std::size_t> sizes(classes.size(), 0);
  for (const LabeledItem& it : items)
    if (it.label < sizes.size()) ++sizes[it.label];
  return sizes;
}

namespace {

double reduce(std::vector<double>& d, ClassScore score) {
  if (score == ClassScore::Mean) return std::accumulate(d.begin(), d.end(), 0.0) / d.size();
  std::sort(d.begin(), d.end());
  const std::size_t n = d.size();
  return n % 2 ? d[n / 2] : 0.5 * (d[n / 2 - 1] + d[n / 2]);
}

// Argmin over per-class reduced distances; classes without members are skipped.
std::size_t pick(std::vector<std::vector<double>>& per_class, ClassScore score) {
  std::optional<std::size_t> best;
  double best_value = 0.0;
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    if (per_class[c].empty()) continue;
    const double v = reduce(per_class[c], score);
    if (!best || v < best_value) {
      best = c;
      best_value = v;
    }
  }
  if (!best) throw Error("classify: corpus has no usable items");
  return *best;
}

}  // namespace

std::size_t classify(std::span<const double> query, const LabeledCorpus& corpus, Metric metric,
                     std::optional<std::size_t> exclude, ClassScore score) {
  if (corpus.items.empty()) throw Error("classify: empty corpus");
  std::vector<std::vector<double>> per_class(corpus.classes.size());
  for (std::size_t i = 0; i < corpus.items.size(); ++i) {
    if (exclude && *exclude == i) continue;
    const LabeledItem& it = corpus.items[i];
    if (it.label >= per_class.size()) throw Error("classify: item label out of range");
    per_class[it.label].push_back(distance(metric, query, it.descriptor));
  }
  return pick(per_class, score);
}

ConfusionMatrix::ConfusionMatrix(std::size_t classes)
    : k_(classes), counts_(classes * classes, 0) {}

ConfusionMatrix::ConfusionMatrix(std::size_t classes, std::vector<std::uint64_t> counts)
    : k_(classes), counts_(std::move(counts)) {
  if (counts_.size() != k_ * k_)
    throw Error("confusion matrix needs " + std::to_string(k_ * k_) + " counts, got " +
                std::to_string(counts_.size()));
}

void ConfusionMatrix::add(std::size_t truth, std::size_t predicted, std::uint64_t n) {
  if (truth >= k_ || predicted >= k_) throw Error("confusion matrix index out of range");
  counts_[truth * k_ + predicted] += n;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t truth) const {
  std::uint64_t s = 0;
  for (std::size_t p = 0; p < k_; ++p) s += (*this)(truth, p);
  return s;
}

std::uint64_t ConfusionMatrix::col_sum(std::size_t predicted) const {
  std::uint64_t s = 0;
  for (std::size_t t = 0; t < k_; ++t) s += (*this)(t, predicted);
  return s;
}

std::uint64_t ConfusionMatrix::diagonal() const {
  std::uint64_t s = 0;
  for (std::size_t c = 0; c < k_; ++c) s += (*this)(c, c);
  return s;
}

std::uint64_t ConfusionMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

ConfusionMatrix confusion(const LabeledCorpus& corpus, Metric metric, ClassScore score) {
  corpus.validate();
  const std::size_t n = corpus.items.size();
  // Pairwise distances once; both metrics are symmetric.
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      dist[i * n + j] = dist[j * n + i] =
          distance(metric, corpus.items[i].descriptor, corpus.items[j].descriptor);

  ConfusionMatrix cm(corpus.classes.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<double>> per_class(corpus.classes.size());
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) per_class[corpus.items[j].label].push_back(dist[i * n + j]);
    cm.add(corpus.items[i].label, pick(per_class, score));
  }
  return cm;
}

BinaryTallies class_tallies(const ConfusionMatrix& cm, std::size_t c) {
  BinaryTallies t;
  t.vp = cm(c, c);
  t.fn = cm.row_sum(c) - t.vp;
  t.fp = cm.col_sum(c) - t.vp;
  t.vn = cm.total() - t.vp - t.fn - t.fp;
  return t;
}

BinaryTallies binary_tallies(const ConfusionMatrix& cm) {
  BinaryTallies sum;
  for (std::size_t c = 0; c < cm.classes(); ++c) {
    const BinaryTallies t = class_tallies(cm, c);
    sum.vp += t.vp;
    sum.fn += t.fn;
    sum.fp += t.fp;
    sum.vn += t.vn;
  }
  return sum;
}

namespace {

std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Metrics metrics(const BinaryTallies& t) {
  Metrics m;
  m.sensitivity = ratio(t.vp, t.vp + t.fn);
  m.specificity = ratio(t.vn, t.vn + t.fp);
  m.precision = ratio(t.vp, t.vp + t.fp);
  m.accuracy = ratio(t.vp + t.vn, t.total());
  if (m.accuracy) m.error_rate = 1.0 - *m.accuracy;
  return m;
}

std::vector<ClassReport> per_class_report(const ConfusionMatrix& cm) {
  std::vector<ClassReport> out;
  out.reserve(cm.classes());
  for (std::size_t c = 0; c < cm.classes(); ++c) {
    const BinaryTallies t = class_tallies(cm, c);
    out.push_back({c, t, ratio(t.vp + t.vn, t.total()), ratio(t.vp, t.vp + t.fp),
                   ratio(t.vn, t.vn + t.fn)});
  }
  return out;
}

std::optional<double> group_accuracy(std::span<const ClassReport> report,
                                     std::span<const std::size_t> members) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t c : members) {
    if (c >= report.size()) throw Error("group member index out of range");
    if (!report[c].accuracy) return std::nullopt;
    sum += *report[c].accuracy;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace rocktex
