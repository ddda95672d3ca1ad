#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rocktex/descriptors.hpp"
#include "rocktex/evaluation.hpp"

namespace rocktex {

inline constexpr int kArchiveSchemaVersion = 1;

/// One line of a descriptor archive: provenance plus the descriptor.
struct ArchiveRecord {
  std::string file;        ///< path relative to the corpus root
  std::string class_name;
  std::size_t class_index = 0;  ///< 0-based in memory, 1-based on disk
  DescriptorRecord descriptor;
};

std::string to_json_line(const ArchiveRecord& r);
ArchiveRecord parse_json_line(const std::string& line);

void write_archive(const std::filesystem::path& path, const std::vector<ArchiveRecord>& records);
std::vector<ArchiveRecord> read_archive(const std::filesystem::path& path);

/// Canonical text of (method, params); records with equal keys are comparable.
std::string group_key(const DescriptorRecord& d);
/// Short file-name-safe label, e.g. "g_albpcsf_l4_t45_p8_r1_basic".
std::string group_slug(const DescriptorRecord& d);

struct RecordGroup {
  std::string key;
  std::string slug;  ///< unique within one archive
  std::vector<std::size_t> members;  ///< indices into the archive, in archive order
};

/// Groups in order of first appearance.
std::vector<RecordGroup> group_records(const std::vector<ArchiveRecord>& records);

/// Labeled corpus of one group. Class names come from the records; class
/// indices are preserved, so the class list spans the largest index seen.
LabeledCorpus corpus_of(const std::vector<ArchiveRecord>& records, const RecordGroup& group);

// ---- CSV / JSON reports ----------------------------------------------------

struct LabeledMatrix {
  std::vector<std::string> labels;
  std::vector<double> values;  ///< row-major, labels.size()^2
};

void write_matrix_csv(const std::filesystem::path& path, const LabeledMatrix& m);
LabeledMatrix read_matrix_csv(const std::filesystem::path& path);

void write_confusion_csv(const std::filesystem::path& path, const std::vector<std::string>& classes,
                         const ConfusionMatrix& cm);
ConfusionMatrix read_confusion_csv(const std::filesystem::path& path,
                                   std::vector<std::string>* classes = nullptr);

/// Rows are classes, columns groups; an empty optional is an empty cell.
struct ClassTable {
  std::vector<std::string> rows;
  std::vector<std::string> columns;
  std::vector<std::optional<double>> values;  ///< row-major
};

void write_class_table_csv(const std::filesystem::path& path, const ClassTable& t);
ClassTable read_class_table_csv(const std::filesystem::path& path);

struct EvaluationReport {
  std::string group;
  std::string metric;
  std::vector<std::string> classes;
  BinaryTallies tallies;
  Metrics overall;
  /// 1 - trace / total: share of items assigned to the wrong class.
  std::optional<double> misclassification_rate;
  std::vector<ClassReport> per_class;
};

std::string to_json(const EvaluationReport& r);
EvaluationReport parse_evaluation_report(const std::string& json);

/// Decimal with 17 significant digits; parses back to the same double.
std::string format_double(double v);

}  // namespace rocktex
