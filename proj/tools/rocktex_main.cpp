// rocktex: color rock-texture descriptors, similarity and evaluation.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rocktex/commands.hpp"
#include "rocktex/corpus.hpp"

namespace fs = std::filesystem;
using namespace rocktex;

namespace {

struct Options {
  std::string method = "d_albpcsf";
  std::string metric = "hi";
  std::string variant = "basic";
  std::string score = "mean";
  std::string format = "png";
  int p = 8;
  double r = 1.0;
  std::string out;
  SynthSpec synth;
  bool pair_stats = false;
  bool dump_histograms = false;
};

LbpVariant parse_variant(const std::string& s) {
  if (s == "basic") return LbpVariant::Basic;
  if (s == "ri") return LbpVariant::RotationInvariant;
  if (s == "riu2") return LbpVariant::Riu2;
  throw Error("unknown LBP variant '" + s + "' (expected basic, ri or riu2)");
}

fs::path out_dir(const Options& o) { return o.out.empty() ? default_out_dir() : fs::path(o.out); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Color rock-texture descriptors (LBP color-space fusion on Gabor / DCT planes)"};
  app.require_subcommand(1);

  Options o;
  RunConfig cfg;
  fs::path root, archive;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output directory (default: $ROCKTEX_OUT or ./rocktex_out)");
  };
  auto add_metric = [&](CLI::App* sub) {
    sub->add_option("--metric", o.metric, "Histogram distance: hi or chi2")
        ->check(CLI::IsMember({"hi", "chi2"}));
  };

  auto* synth = app.add_subcommand("synth", "Write a seeded synthetic class-structured corpus");
  synth->add_option("--seed", cfg.seed, "RNG seed");
  synth->add_option("--classes", o.synth.classes, "Number of classes")->check(CLI::PositiveNumber);
  synth->add_option("--per-class", o.synth.per_class, "Images per class")
      ->check(CLI::PositiveNumber);
  synth->add_option("--size", o.synth.size, "Image side in pixels")->check(CLI::Range(3, 8192));
  synth->add_option("--format", o.format, "png or ppm")->check(CLI::IsMember({"png", "ppm"}));
  add_out(synth);

  auto* check = app.add_subcommand("ingest-check", "Validate a corpus directory");
  check->add_option("root", root, "Corpus root (one subdirectory per class)")->required();

  auto* extract = app.add_subcommand("extract", "Compute descriptors for every corpus image");
  extract->add_option("root", root, "Corpus root (one subdirectory per class)")->required();
  extract->add_option("--method", o.method,
                      "rgb_hist, lbp, albpcsf, g_albpcsf or d_albpcsf");
  extract->add_option("--lbp-variant", o.variant, "basic, ri or riu2")
      ->check(CLI::IsMember({"basic", "ri", "riu2"}));
  extract->add_option("--p", o.p, "LBP neighbor count");
  extract->add_option("--r", o.r, "LBP radius");
  extract->add_option("--gabor-sigma", cfg.gabor_sigma, "Gabor envelope sigma");
  extract->add_option("--gabor-f", cfg.gabor_f, "Gabor scale factor f");
  extract->add_option("--lambda", cfg.lambdas, "Gabor wavelengths (4 f^nu)")->delimiter(',');
  extract->add_option("--theta", cfg.thetas, "Gabor orientations in degrees")->delimiter(',');
  extract->add_flag("--full-bank", cfg.full_bank, "Use all 40 Gabor filters");
  extract->add_option("--dct-k", cfg.dct_k, "Low-frequency DCT block side(s)")->delimiter(',');
  extract->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  extract->add_flag("--pair-stats", o.pair_stats, "Also write per-pair code-map mean/std");
  add_out(extract);

  auto* compare = app.add_subcommand("compare", "Pairwise distances and per-class means");
  compare->add_option("archive", archive, "descriptors.jsonl")->required();
  add_metric(compare);
  add_out(compare);

  auto* classify = app.add_subcommand("classify", "Leave-one-out nearest-class evaluation");
  classify->add_option("archive", archive, "descriptors.jsonl")->required();
  add_metric(classify);
  classify->add_option("--class-score", o.score, "mean or median distance to class members")
      ->check(CLI::IsMember({"mean", "median"}));
  classify->add_flag("--dump-histograms", o.dump_histograms,
                     "Write every descriptor vector to histograms.csv");
  add_out(classify);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      o.synth.format = o.format == "ppm" ? ImageFormat::Ppm : ImageFormat::Png;
      const auto files = synth_corpus(cfg.seed, o.synth, out_dir(o));
      std::cout << "wrote " << files.size() << " images to " << out_dir(o).string() << '\n';
      return 0;
    }
    if (*check) {
      const CorpusManifest m = ingest(root, /*decode=*/true);
      for (std::size_t c = 0; c < m.classes.size(); ++c)
        std::cout << "class " << c + 1 << '\t' << m.classes[c].name << '\t'
                  << m.classes[c].images.size() << " images\n";
      std::cout << m.classes.size() << " classes, " << m.image_count() << " images\n";
      return 0;
    }
    if (*extract) {
      cfg.method = parse_method(o.method);
      cfg.lbp = {o.p, o.r, parse_variant(o.variant)};
      cfg.out_dir = out_dir(o);
      const ExtractResult res = cmd_extract(cfg, ingest(root, /*decode=*/false), o.pair_stats);
      std::cout << "wrote " << res.records.size() << " records to " << res.archive.string()
                << '\n';
      if (res.pair_stats) std::cout << "wrote " << res.pair_stats->string() << '\n';
      for (const auto& f : res.failures) std::cerr << "failed: " << f.message << '\n';
      if (!res.failures.empty()) {
        std::cerr << res.failures.size() << " image(s) failed\n";
        return 1;
      }
      return 0;
    }
    if (*compare) {
      const CompareResult res = cmd_compare(archive, parse_metric(o.metric), out_dir(o));
      for (const auto& f : res.matrices) std::cout << "wrote " << f.string() << '\n';
      std::cout << "wrote " << res.class_means.string() << '\n';
      return 0;
    }
    if (*classify) {
      const ClassScore score = o.score == "median" ? ClassScore::Median : ClassScore::Mean;
      const ClassifyResult res =
          cmd_classify(archive, parse_metric(o.metric), out_dir(o), score, o.dump_histograms);
      for (const auto& rep : res.reports) {
        std::cout << rep.group << ": accuracy "
                  << (rep.overall.accuracy ? std::to_string(*rep.overall.accuracy) : "undefined")
                  << ", error rate "
                  << (rep.overall.error_rate ? std::to_string(*rep.overall.error_rate)
                                             : "undefined")
                  << ", misclassified "
                  << (rep.misclassification_rate ? std::to_string(*rep.misclassification_rate)
                                                 : "undefined")
                  << '\n';
      }
      for (const auto& f : res.files) std::cout << "wrote " << f.string() << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
