#include "rocktex/archive.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace rocktex {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string_view variant_name(LbpVariant v) {
  switch (v) {
    case LbpVariant::Basic: return "basic";
    case LbpVariant::RotationInvariant: return "ri";
    case LbpVariant::Riu2: return "riu2";
  }
  return "?";
}

LbpVariant parse_variant(std::string_view s) {
  if (s == "basic") return LbpVariant::Basic;
  if (s == "ri") return LbpVariant::RotationInvariant;
  if (s == "riu2") return LbpVariant::Riu2;
  throw Error("unknown LBP variant '" + std::string(s) + "'");
}

json params_json(const DescriptorRecord& d) {
  json p = json::object();
  if (d.method != Method::RgbHist)
    p["lbp"] = {{"p", d.params.lbp.neighbors},
                {"r", d.params.lbp.radius},
                {"variant", variant_name(d.params.lbp.variant)}};
  if (d.params.gabor) {
    const GaborParams& g = *d.params.gabor;
    json gj = {{"orientation", g.orientation}, {"scale", g.scale}, {"sigma", g.sigma},
               {"f", g.f}, {"wavelength", g.wavelength()}};
    gj["theta_deg"] = d.params.theta_deg ? *d.params.theta_deg : g.orientation * 22.5;
    p["gabor"] = gj;
  }
  if (d.params.dct_k) p["dct_k"] = *d.params.dct_k;
  return p;
}

DescriptorParams params_from_json(const json& p) {
  DescriptorParams out;
  if (p.contains("lbp")) {
    const json& l = p.at("lbp");
    out.lbp.neighbors = l.at("p").get<int>();
    out.lbp.radius = l.at("r").get<double>();
    out.lbp.variant = parse_variant(l.at("variant").get<std::string>());
  }
  if (p.contains("gabor")) {
    const json& g = p.at("gabor");
    out.gabor = GaborParams{g.at("orientation").get<int>(), g.at("scale").get<int>(),
                            g.at("sigma").get<double>(), g.at("f").get<double>()};
    out.theta_deg = g.at("theta_deg").get<double>();
  }
  if (p.contains("dct_k")) out.dct_k = p.at("dct_k").get<int>();
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(path.string() + ": cannot open");
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(csv_split(line));
  if (rows.empty()) throw Error(path.string() + ": empty CSV");
  return rows;
}

double parse_number(const std::string& s, const fs::path& path) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw Error(path.string() + ": bad number '" + s + "'");
  return v;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  return out;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

std::string to_json_line(const ArchiveRecord& r) {
  json j;
  j["schema_version"] = kArchiveSchemaVersion;
  j["file"] = r.file;
  j["class"] = r.class_name;
  j["class_index"] = r.class_index + 1;
  j["method"] = to_string(r.descriptor.method);
  j["params"] = params_json(r.descriptor);
  j["vector"] = r.descriptor.vector;
  return j.dump();
}

ArchiveRecord parse_json_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(std::string("archive line is not valid JSON: ") + e.what());
  }
  try {
    const int version = j.at("schema_version").get<int>();
    if (version != kArchiveSchemaVersion)
      throw Error("unsupported archive schema_version " + std::to_string(version));
    ArchiveRecord r;
    r.file = j.at("file").get<std::string>();
    r.class_name = j.at("class").get<std::string>();
    const auto idx = j.at("class_index").get<std::int64_t>();
    if (idx < 1) throw Error("archive class_index must be >= 1");
    r.class_index = static_cast<std::size_t>(idx - 1);
    r.descriptor.method = parse_method(j.at("method").get<std::string>());
    r.descriptor.params = params_from_json(j.at("params"));
    r.descriptor.vector = j.at("vector").get<std::vector<double>>();
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed archive record: ") + e.what());
  }
}

void write_archive(const fs::path& path, const std::vector<ArchiveRecord>& records) {
  auto out = open_out(path);
  for (const auto& r : records) out << to_json_line(r) << '\n';
  if (!out) throw Error(path.string() + ": write failed");
}

std::vector<ArchiveRecord> read_archive(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(path.string() + ": cannot open");
  std::vector<ArchiveRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(parse_json_line(line));
    } catch (const Error& e) {
      throw Error(path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

std::string group_key(const DescriptorRecord& d) {
  return std::string(to_string(d.method)) + " " + params_json(d).dump();
}

std::string group_slug(const DescriptorRecord& d) {
  std::string s(to_string(d.method));
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    std::string t = buf;
    std::replace(t.begin(), t.end(), '.', 'p');
    return t;
  };
  if (d.params.gabor) {
    s += "_l" + num(d.params.gabor->wavelength());
    s += "_t" + num(d.params.theta_deg ? *d.params.theta_deg : d.params.gabor->orientation * 22.5);
  }
  if (d.params.dct_k) s += "_k" + std::to_string(*d.params.dct_k);
  if (d.method != Method::RgbHist)
    s += "_p" + std::to_string(d.params.lbp.neighbors) + "_r" + num(d.params.lbp.radius) + "_" +
         std::string(variant_name(d.params.lbp.variant));
  return s;
}

std::vector<RecordGroup> group_records(const std::vector<ArchiveRecord>& records) {
  std::vector<RecordGroup> groups;
  std::map<std::string, std::size_t> by_key;
  std::map<std::string, int> slug_uses;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::string key = group_key(records[i].descriptor);
    auto [it, fresh] = by_key.emplace(key, groups.size());
    if (fresh) {
      std::string slug = group_slug(records[i].descriptor);
      const int uses = ++slug_uses[slug];
      if (uses > 1) slug += "_" + std::to_string(uses);
      groups.push_back({key, slug, {}});
    }
    groups[it->second].members.push_back(i);
  }
  return groups;
}

LabeledCorpus corpus_of(const std::vector<ArchiveRecord>& records, const RecordGroup& group) {
  LabeledCorpus c;
  for (std::size_t i : group.members) {
    const ArchiveRecord& r = records.at(i);
    if (r.class_index >= c.classes.size()) c.classes.resize(r.class_index + 1);
    if (c.classes[r.class_index].empty()) c.classes[r.class_index] = r.class_name;
    c.items.push_back({r.class_index, r.descriptor.vector});
  }
  return c;
}

void write_matrix_csv(const fs::path& path, const LabeledMatrix& m) {
  const std::size_t n = m.labels.size();
  if (m.values.size() != n * n) throw Error("matrix size does not match label count");
  auto out = open_out(path);
  out << "id";
  for (const auto& l : m.labels) out << ',' << csv_field(l);
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out << csv_field(m.labels[i]);
    for (std::size_t j = 0; j < n; ++j) out << ',' << format_double(m.values[i * n + j]);
    out << '\n';
  }
}

LabeledMatrix read_matrix_csv(const fs::path& path) {
  const auto rows = read_csv(path);
  LabeledMatrix m;
  m.labels.assign(rows[0].begin() + 1, rows[0].end());
  const std::size_t n = m.labels.size();
  if (rows.size() != n + 1) throw Error(path.string() + ": matrix is not square");
  for (std::size_t i = 1; i <= n; ++i) {
    if (rows[i].size() != n + 1) throw Error(path.string() + ": ragged matrix row");
    for (std::size_t j = 1; j <= n; ++j) m.values.push_back(parse_number(rows[i][j], path));
  }
  return m;
}

void write_confusion_csv(const fs::path& path, const std::vector<std::string>& classes,
                         const ConfusionMatrix& cm) {
  if (classes.size() != cm.classes()) throw Error("class list does not match confusion matrix");
  auto out = open_out(path);
  out << "true\\predicted";
  for (const auto& c : classes) out << ',' << csv_field(c);
  out << '\n';
  for (std::size_t t = 0; t < cm.classes(); ++t) {
    out << csv_field(classes[t]);
    for (std::size_t p = 0; p < cm.classes(); ++p) out << ',' << cm(t, p);
    out << '\n';
  }
}

ConfusionMatrix read_confusion_csv(const fs::path& path, std::vector<std::string>* classes) {
  const auto rows = read_csv(path);
  const std::size_t k = rows[0].size() - 1;
  if (rows.size() != k + 1) throw Error(path.string() + ": confusion matrix is not square");
  std::vector<std::uint64_t> counts;
  for (std::size_t t = 1; t <= k; ++t) {
    if (rows[t].size() != k + 1) throw Error(path.string() + ": ragged confusion row");
    for (std::size_t p = 1; p <= k; ++p) {
      const double v = parse_number(rows[t][p], path);
      if (v < 0 || v != std::floor(v)) throw Error(path.string() + ": counts must be integers");
      counts.push_back(static_cast<std::uint64_t>(v));
    }
  }
  if (classes) classes->assign(rows[0].begin() + 1, rows[0].end());
  return ConfusionMatrix(k, std::move(counts));
}

void write_class_table_csv(const fs::path& path, const ClassTable& t) {
  if (t.values.size() != t.rows.size() * t.columns.size())
    throw Error("class table size does not match its labels");
  auto out = open_out(path);
  out << "class";
  for (const auto& c : t.columns) out << ',' << csv_field(c);
  out << '\n';
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << csv_field(t.rows[r]);
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      out << ',';
      if (const auto& v = t.values[r * t.columns.size() + c]) out << format_double(*v);
    }
    out << '\n';
  }
}

ClassTable read_class_table_csv(const fs::path& path) {
  const auto rows = read_csv(path);
  ClassTable t;
  t.columns.assign(rows[0].begin() + 1, rows[0].end());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != t.columns.size() + 1) throw Error(path.string() + ": ragged row");
    t.rows.push_back(rows[r][0]);
    for (std::size_t c = 1; c < rows[r].size(); ++c)
      t.values.push_back(rows[r][c].empty() ? std::nullopt
                                            : std::optional(parse_number(rows[r][c], path)));
  }
  return t;
}

std::string to_json(const EvaluationReport& r) {
  auto tallies = [](const BinaryTallies& t) {
    return json{{"VP", t.vp}, {"FP", t.fp}, {"VN", t.vn}, {"FN", t.fn}};
  };
  json j;
  j["schema_version"] = kArchiveSchemaVersion;
  j["group"] = r.group;
  j["metric"] = r.metric;
  j["classes"] = r.classes;
  j["tallies"] = tallies(r.tallies);
  j["sensitivity"] = optional_json(r.overall.sensitivity);
  j["specificity"] = optional_json(r.overall.specificity);
  j["precision"] = optional_json(r.overall.precision);
  j["accuracy"] = optional_json(r.overall.accuracy);
  j["error_rate"] = optional_json(r.overall.error_rate);
  j["misclassification_rate"] = optional_json(r.misclassification_rate);
  json rows = json::array();
  for (const ClassReport& c : r.per_class) {
    rows.push_back({{"class", c.index < r.classes.size() ? r.classes[c.index] : ""},
                    {"class_index", c.index + 1},
                    {"tallies", tallies(c.tallies)},
                    {"accuracy", optional_json(c.accuracy)},
                    {"positive_accuracy", optional_json(c.positive_accuracy)},
                    {"negative_accuracy", optional_json(c.negative_accuracy)}});
  }
  j["per_class"] = rows;
  return j.dump(2);
}

EvaluationReport parse_evaluation_report(const std::string& text) {
  try {
    const json j = json::parse(text);
    auto tallies = [](const json& t) {
      return BinaryTallies{t.at("VP").get<std::uint64_t>(), t.at("FP").get<std::uint64_t>(),
                           t.at("VN").get<std::uint64_t>(), t.at("FN").get<std::uint64_t>()};
    };
    EvaluationReport r;
    r.group = j.at("group").get<std::string>();
    r.metric = j.at("metric").get<std::string>();
    r.classes = j.at("classes").get<std::vector<std::string>>();
    r.tallies = tallies(j.at("tallies"));
    r.overall = {optional_from(j.at("sensitivity")), optional_from(j.at("specificity")),
                 optional_from(j.at("precision")), optional_from(j.at("accuracy")),
                 optional_from(j.at("error_rate"))};
    r.misclassification_rate = optional_from(j.at("misclassification_rate"));
    for (const json& c : j.at("per_class")) {
      r.per_class.push_back({c.at("class_index").get<std::size_t>() - 1, tallies(c.at("tallies")),
                             optional_from(c.at("accuracy")),
                             optional_from(c.at("positive_accuracy")),
                             optional_from(c.at("negative_accuracy"))});
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed evaluation report: ") + e.what());
  }
}

}  // namespace rocktex
