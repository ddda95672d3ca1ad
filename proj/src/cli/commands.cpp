#include "rocktex/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "rocktex/io.hpp"

namespace fs = std::filesystem;

namespace rocktex {

fs::path default_out_dir() {
  if (const char* env = std::getenv("ROCKTEX_OUT"); env != nullptr && *env != '\0') return env;
  return "rocktex_out";
}

std::vector<DescriptorParams> parameter_grid(const RunConfig& cfg) {
  cfg.lbp.validate();
  std::vector<DescriptorParams> grid;
  switch (cfg.method) {
    case Method::RgbHist:
    case Method::Lbp:
    case Method::Albpcsf:
      grid.push_back({cfg.lbp, {}, {}, {}});
      break;
    case Method::GAlbpcsf:
      if (cfg.full_bank) {
        for (int scale = 0; scale < 5; ++scale)
          for (int orientation = 0; orientation < 8; ++orientation)
            grid.push_back({cfg.lbp,
                            GaborParams{orientation, scale, cfg.gabor_sigma, cfg.gabor_f},
                            orientation * 22.5,
                            {}});
      } else {
        for (double lambda : cfg.lambdas)
          for (double theta : cfg.thetas)
            grid.push_back({cfg.lbp,
                            params_from_wavelength(lambda, theta, cfg.gabor_sigma, cfg.gabor_f),
                            theta,
                            {}});
      }
      break;
    case Method::DAlbpcsf:
      for (int k : cfg.dct_k) {
        if (k < 1) throw Error("DCT block side must be >= 1, got " + std::to_string(k));
        grid.push_back({cfg.lbp, {}, {}, k});
      }
      break;
  }
  if (grid.empty()) throw Error("configuration yields no descriptor parameters");
  return grid;
}

namespace {

struct ImageOutput {
  std::vector<DescriptorRecord> records;
  std::vector<std::vector<PairStats>> stats;  ///< parallel to records when requested
};

ImageOutput run_image(const ColorImage& rgb, const RunConfig& cfg,
                      const std::vector<DescriptorParams>& grid, bool with_stats) {
  ImageOutput out;
  std::optional<FusionPlanes> raw;
  auto planes = [&]() -> const FusionPlanes& {
    if (!raw) raw = FusionPlanes::from_image(rgb);
    return *raw;
  };
  for (const DescriptorParams& p : grid) {
    DescriptorRecord rec;
    std::optional<FusionPlanes> coded;
    switch (cfg.method) {
      case Method::RgbHist: rec = rgb_histogram(rgb); break;
      case Method::Lbp: rec = lbp_descriptor(rgb, p.lbp); break;
      case Method::Albpcsf:
        rec = albpcsf_descriptor(rgb, p.lbp);
        if (with_stats) coded = planes();
        break;
      case Method::GAlbpcsf: {
        coded = gabor_amplitude_planes(planes(), *p.gabor);
        rec = {Method::GAlbpcsf, p, global_normalize(albpcsf(*coded, p.lbp))};
        break;
      }
      case Method::DAlbpcsf: {
        coded = dct_lowpass_planes(planes(), *p.dct_k);
        rec = {Method::DAlbpcsf, p, global_normalize(albpcsf(*coded, p.lbp))};
        break;
      }
    }
    rec.params = p;
    if (cfg.method == Method::RgbHist) rec.params = {};
    if (with_stats) out.stats.push_back(coded ? fusion_pair_stats(*coded, p.lbp)
                                              : std::vector<PairStats>{});
    out.records.push_back(std::move(rec));
  }
  return out;
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

}  // namespace

std::vector<DescriptorRecord> extract_image(const ColorImage& rgb, const RunConfig& cfg) {
  return run_image(rgb, cfg, parameter_grid(cfg), false).records;
}

ExtractResult cmd_extract(const RunConfig& cfg, const CorpusManifest& manifest, bool pair_stats) {
  const auto grid = parameter_grid(cfg);

  struct Job {
    std::size_t class_index;
    const CorpusClass* cls;
    fs::path path;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < manifest.classes.size(); ++c)
    for (const auto& img : manifest.classes[c].images) jobs.push_back({c, &manifest.classes[c], img});

  std::vector<std::optional<ImageOutput>> outputs(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        outputs[i] = run_image(read_image(jobs[i].path), cfg, grid, pair_stats);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const unsigned n = worker_count(cfg.threads, jobs.size());
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
  }

  ExtractResult result;
  const fs::path out_dir = cfg.out_dir.empty() ? default_out_dir() : cfg.out_dir;
  fs::create_directories(out_dir);
  std::ofstream stats_out;
  if (pair_stats) {
    result.pair_stats = out_dir / "pair_stats.csv";
    stats_out.open(*result.pair_stats, std::ios::binary);
    if (!stats_out) throw Error(result.pair_stats->string() + ": cannot open for writing");
    stats_out << "file,class,group,pair,mean,std\n";
  }
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::string rel = jobs[i].path.lexically_relative(manifest.root).generic_string();
    if (!outputs[i]) {
      result.failures.push_back({rel, errors[i]});
      continue;
    }
    for (std::size_t r = 0; r < outputs[i]->records.size(); ++r) {
      ArchiveRecord rec{rel, jobs[i].cls->name, jobs[i].class_index,
                        std::move(outputs[i]->records[r])};
      if (pair_stats)
        for (const PairStats& s : outputs[i]->stats[r])
          stats_out << rel << ',' << rec.class_name << ',' << group_slug(rec.descriptor) << ','
                    << '"' << to_string(s.pair) << '"' << ',' << format_double(s.mean) << ','
                    << format_double(s.std) << '\n';
      result.records.push_back(std::move(rec));
    }
  }
  result.archive = out_dir / "descriptors.jsonl";
  write_archive(result.archive, result.records);
  return result;
}

CompareResult cmd_compare(const fs::path& archive, Metric metric, const fs::path& out_dir) {
  const auto records = read_archive(archive);
  if (records.empty()) throw Error(archive.string() + ": archive has no records");
  fs::create_directories(out_dir);
  const auto groups = group_records(records);
  const std::string tag(to_string(metric));

  CompareResult result;
  ClassTable table;
  std::size_t n_classes = 0;
  for (const auto& r : records) n_classes = std::max(n_classes, r.class_index + 1);
  table.rows.resize(n_classes);
  for (const auto& r : records)
    if (table.rows[r.class_index].empty()) table.rows[r.class_index] = r.class_name;
  std::vector<std::vector<std::optional<double>>> columns;

  for (const RecordGroup& g : groups) {
    const std::size_t n = g.members.size();
    LabeledMatrix m;
    m.values.assign(n * n, 0.0);
    for (std::size_t i : g.members) m.labels.push_back(records[i].file);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        m.values[a * n + b] = m.values[b * n + a] =
            distance(metric, records[g.members[a]].descriptor.vector,
                     records[g.members[b]].descriptor.vector);
    const fs::path file = out_dir / ("similarity_" + tag + "_" + g.slug + ".csv");
    write_matrix_csv(file, m);
    result.matrices.push_back(file);

    // Mean over distinct intra-class pairs.
    std::vector<double> sum(n_classes, 0.0);
    std::vector<std::size_t> count(n_classes, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        const std::size_t ca = records[g.members[a]].class_index;
        if (ca != records[g.members[b]].class_index) continue;
        sum[ca] += m.values[a * n + b];
        ++count[ca];
      }
    std::vector<std::optional<double>> col(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c)
      if (count[c] > 0) col[c] = sum[c] / static_cast<double>(count[c]);
    columns.push_back(std::move(col));
    table.columns.push_back(g.slug);
  }
  for (std::size_t r = 0; r < n_classes; ++r)
    for (const auto& col : columns) table.values.push_back(col[r]);
  result.class_means = out_dir / ("class_means_" + tag + ".csv");
  write_class_table_csv(result.class_means, table);
  return result;
}

ClassifyResult cmd_classify(const fs::path& archive, Metric metric, const fs::path& out_dir,
                            ClassScore score, bool dump_histograms) {
  const auto records = read_archive(archive);
  if (records.empty()) throw Error(archive.string() + ": archive has no records");
  fs::create_directories(out_dir);
  const std::string tag(to_string(metric));

  ClassifyResult result;
  for (const RecordGroup& g : group_records(records)) {
    const LabeledCorpus corpus = corpus_of(records, g);
    const ConfusionMatrix cm = confusion(corpus, metric, score);
    EvaluationReport rep{g.slug, tag, corpus.classes, binary_tallies(cm),
                         metrics(binary_tallies(cm)), {}, per_class_report(cm)};
    if (cm.total() > 0)
      rep.misclassification_rate =
          1.0 - static_cast<double>(cm.diagonal()) / static_cast<double>(cm.total());

    const fs::path cm_file = out_dir / ("confusion_" + tag + "_" + g.slug + ".csv");
    write_confusion_csv(cm_file, corpus.classes, cm);
    const fs::path json_file = out_dir / ("metrics_" + tag + "_" + g.slug + ".json");
    std::ofstream(json_file, std::ios::binary) << to_json(rep) << '\n';
    result.files.push_back(cm_file);
    result.files.push_back(json_file);
    result.reports.push_back(std::move(rep));
  }

  if (dump_histograms) {
    const fs::path file = out_dir / "histograms.csv";
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error(file.string() + ": cannot open for writing");
    std::size_t width = 0;
    for (const auto& r : records) width = std::max(width, r.descriptor.vector.size());
    out << "file,class,group";
    for (std::size_t b = 0; b < width; ++b) out << ",bin_" << b;
    out << '\n';
    for (const auto& r : records) {
      out << r.file << ',' << r.class_name << ',' << group_slug(r.descriptor);
      for (std::size_t b = 0; b < width; ++b) {
        out << ',';
        if (b < r.descriptor.vector.size()) out << format_double(r.descriptor.vector[b]);
      }
      out << '\n';
    }
    result.files.push_back(file);
  }
  return result;
}

}  // namespace rocktex
