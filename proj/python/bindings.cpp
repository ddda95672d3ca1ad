#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rocktex/albpcsf.hpp"
#include "rocktex/corpus.hpp"
#include "rocktex/dct.hpp"
#include "rocktex/descriptors.hpp"
#include "rocktex/evaluation.hpp"
#include "rocktex/gabor.hpp"
#include "rocktex/io.hpp"
#include "rocktex/lbp.hpp"
#include "rocktex/similarity.hpp"

namespace py = pybind11;
using namespace rocktex;

namespace {

using ImageArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

ColorImage to_image(const ImageArray& a, ColorSpace space = ColorSpace::RGB) {
  if (a.ndim() != 3 || a.shape(2) != 3) throw Error("expected an (H, W, 3) uint8 array");
  const auto h = static_cast<int>(a.shape(0)), w = static_cast<int>(a.shape(1));
  return ColorImage::from_interleaved(w, h, space,
                                      std::span(a.data(), static_cast<std::size_t>(a.size())));
}

ImageArray from_image(const ColorImage& img) {
  ImageArray out({img.height(), img.width(), 3});
  auto* dst = out.mutable_data();
  for (const Pixel& p : img.pixels())
    for (auto c : p) *dst++ = c;
  return out;
}

PlaneF to_plane(const RealArray& a) {
  if (a.ndim() != 2) throw Error("expected a 2-D float array");
  const auto h = static_cast<int>(a.shape(0)), w = static_cast<int>(a.shape(1));
  return PlaneF(w, h, std::vector<double>(a.data(), a.data() + a.size()));
}

template <typename T>
py::array_t<T> from_plane(const Plane<T>& p) {
  py::array_t<T> out({p.height(), p.width()});
  std::copy(p.values().begin(), p.values().end(), out.mutable_data());
  return out;
}

py::array_t<std::complex<double>> from_complex(const ComplexPlane& p) {
  py::array_t<std::complex<double>> out({p.height(), p.width()});
  std::copy(p.values().begin(), p.values().end(), out.mutable_data());
  return out;
}

py::array_t<double> vec(const std::vector<double>& v) {
  py::array_t<double> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())},
                          std::vector<py::ssize_t>{sizeof(double)});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

LbpVariant variant_of(const std::string& s) {
  if (s == "basic") return LbpVariant::Basic;
  if (s == "ri") return LbpVariant::RotationInvariant;
  if (s == "riu2") return LbpVariant::Riu2;
  throw Error("unknown LBP variant '" + s + "' (expected basic, ri or riu2)");
}

LbpConfig lbp_config(int neighbors, double radius, const std::string& variant) {
  LbpConfig c{neighbors, radius, variant_of(variant)};
  c.validate();
  return c;
}

std::vector<double> span_of(const RealArray& a) {
  if (a.ndim() != 1) throw Error("expected a 1-D histogram");
  return {a.data(), a.data() + a.size()};
}

LabeledCorpus corpus_of(const std::vector<std::vector<double>>& descriptors,
                        const std::vector<std::size_t>& labels) {
  if (descriptors.size() != labels.size()) throw Error("descriptors and labels differ in length");
  LabeledCorpus c;
  std::size_t k = 0;
  for (auto l : labels) k = std::max(k, l + 1);
  for (std::size_t i = 0; i < k; ++i) c.classes.push_back(std::to_string(i + 1));
  for (std::size_t i = 0; i < labels.size(); ++i) c.items.push_back({labels[i], descriptors[i]});
  return c;
}

py::dict metrics_dict(const Metrics& m) {
  py::dict d;
  d["sensitivity"] = m.sensitivity;
  d["specificity"] = m.specificity;
  d["precision"] = m.precision;
  d["accuracy"] = m.accuracy;
  d["error_rate"] = m.error_rate;
  return d;
}

ConfusionMatrix matrix_of(const py::array_t<std::uint64_t, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw Error("expected a square count matrix");
  return ConfusionMatrix(static_cast<std::size_t>(a.shape(0)),
                         std::vector<std::uint64_t>(a.data(), a.data() + a.size()));
}

}  // namespace

PYBIND11_MODULE(_rocktex, m) {
  m.doc() = "Color rock-texture descriptors, histogram distances and evaluation";
  py::register_exception<Error>(m, "RocktexError", PyExc_ValueError);

  // Images and planes.
  m.def("read_image", [](const std::filesystem::path& p) { return from_image(read_image(p)); },
        py::arg("path"), "Decode an 8-bit RGB PNG or PPM into an (H, W, 3) uint8 array.");
  m.def("write_png", [](const std::filesystem::path& p, const ImageArray& a) { write_png(p, to_image(a)); },
        py::arg("path"), py::arg("image"));
  m.def("rgb_to_hsv", [](const ImageArray& a) { return from_image(rgb_to_hsv(to_image(a))); },
        py::arg("image"));
  m.def("hsv_to_rgb",
        [](const ImageArray& a) { return from_image(hsv_to_rgb(to_image(a, ColorSpace::HSV))); },
        py::arg("image"));
  m.def("normalize_plane",
        [](const RealArray& p, double tol) { return from_plane(normalize_plane(to_plane(p), tol)); },
        py::arg("plane"), py::arg("constant_tolerance") = 0.0);

  // LBP.
  m.def("lbp_map",
        [](const RealArray& p, int n, double r, const std::string& v) {
          return from_plane(lbp_map(to_plane(p), lbp_config(n, r, v)));
        },
        py::arg("plane"), py::arg("neighbors") = 8, py::arg("radius") = 1.0,
        py::arg("variant") = "basic");
  m.def("cross_channel_lbp",
        [](const RealArray& nb, const RealArray& c, int n, double r, const std::string& v) {
          return from_plane(cross_channel_lbp(to_plane(nb), to_plane(c), lbp_config(n, r, v)));
        },
        py::arg("neighbor_plane"), py::arg("center_plane"), py::arg("neighbors") = 8,
        py::arg("radius") = 1.0, py::arg("variant") = "basic");
  m.def("bin_count",
        [](int n, double r, const std::string& v) { return bin_count(lbp_config(n, r, v)); },
        py::arg("neighbors") = 8, py::arg("radius") = 1.0, py::arg("variant") = "basic");

  // Gabor.
  m.def("gabor_filter",
        [](const RealArray& p, int orientation, int scale, double sigma, double f) {
          const GaborParams gp{orientation, scale, sigma, f};
          const GaborResponse r = filter(to_plane(p), build_kernel(gp, default_kernel_size(gp)));
          return py::make_tuple(from_plane(r.amplitude), from_plane(r.phase));
        },
        py::arg("plane"), py::arg("orientation"), py::arg("scale"),
        py::arg("sigma") = std::numbers::pi, py::arg("f") = std::numbers::sqrt2,
        "Amplitude and phase of one bank filter.");
  m.def("gabor_kernel",
        [](int orientation, int scale, double sigma, double f) {
          const GaborParams gp{orientation, scale, sigma, f};
          const GaborKernel k = build_kernel(gp, default_kernel_size(gp));
          py::array_t<std::complex<double>> out({k.size(), k.size()});
          std::copy(k.taps().begin(), k.taps().end(), out.mutable_data());
          return out;
        },
        py::arg("orientation"), py::arg("scale"), py::arg("sigma") = std::numbers::pi,
        py::arg("f") = std::numbers::sqrt2);
  m.def("gabor_bank_size", [] { return bank().size(); });
  m.def("convolve",
        [](const RealArray& p, int orientation, int scale) {
          const GaborParams gp{orientation, scale};
          return from_complex(convolve(to_plane(p), build_kernel(gp, default_kernel_size(gp))));
        },
        py::arg("plane"), py::arg("orientation"), py::arg("scale"));

  // DCT.
  m.def("dct2", [](const RealArray& p) { return from_plane(dct2(to_plane(p)).coeffs); },
        py::arg("plane"));
  m.def("idct2", [](const RealArray& c) { return from_plane(idct2({to_plane(c)})); },
        py::arg("coeffs"));
  m.def("lowpass", [](const RealArray& c, int k) { return from_plane(lowpass({to_plane(c)}, {k}).coeffs); },
        py::arg("coeffs"), py::arg("k"));

  // Descriptors.
  m.def("rgb_histogram", [](const ImageArray& a) { return vec(rgb_histogram(to_image(a)).vector); },
        py::arg("image"));
  m.def("lbp_descriptor",
        [](const ImageArray& a, int n, double r, const std::string& v) {
          return vec(lbp_descriptor(to_image(a), lbp_config(n, r, v)).vector);
        },
        py::arg("image"), py::arg("neighbors") = 8, py::arg("radius") = 1.0,
        py::arg("variant") = "basic");
  m.def("albpcsf",
        [](const ImageArray& a, int n, double r, const std::string& v) {
          return vec(albpcsf_descriptor(to_image(a), lbp_config(n, r, v)).vector);
        },
        py::arg("image"), py::arg("neighbors") = 8, py::arg("radius") = 1.0,
        py::arg("variant") = "basic");
  m.def("g_albpcsf",
        [](const ImageArray& a, double wavelength, double theta, int n, double r,
           const std::string& v) {
          return vec(g_albpcsf(to_image(a), params_from_wavelength(wavelength, theta),
                               lbp_config(n, r, v))
                         .vector);
        },
        py::arg("image"), py::arg("wavelength") = 4.0, py::arg("theta") = 0.0,
        py::arg("neighbors") = 8, py::arg("radius") = 1.0, py::arg("variant") = "basic");
  m.def("d_albpcsf",
        [](const ImageArray& a, int k, int n, double r, const std::string& v) {
          return vec(d_albpcsf(to_image(a), k, lbp_config(n, r, v)).vector);
        },
        py::arg("image"), py::arg("k") = 32, py::arg("neighbors") = 8, py::arg("radius") = 1.0,
        py::arg("variant") = "basic");

  // Distances.
  m.def("hist_intersection",
        [](const RealArray& a, const RealArray& b) {
          return hist_intersection(span_of(a), span_of(b)).value;
        },
        py::arg("h1"), py::arg("h2"));
  m.def("chi_square",
        [](const RealArray& a, const RealArray& b) { return chi_square(span_of(a), span_of(b)).value; },
        py::arg("h1"), py::arg("h2"));

  // Evaluation.
  m.def("confusion",
        [](const std::vector<std::vector<double>>& d, const std::vector<std::size_t>& labels,
           const std::string& metric, const std::string& score) {
          const ConfusionMatrix cm = confusion(corpus_of(d, labels), parse_metric(metric),
                                               score == "median" ? ClassScore::Median : ClassScore::Mean);
          py::array_t<std::uint64_t> out({cm.classes(), cm.classes()});
          std::copy(cm.counts().begin(), cm.counts().end(), out.mutable_data());
          return out;
        },
        py::arg("descriptors"), py::arg("labels"), py::arg("metric") = "hi",
        py::arg("score") = "mean",
        "Leave-one-out confusion matrix; labels are 0-based class indices.");
  m.def("binary_tallies",
        [](const py::array_t<std::uint64_t, py::array::c_style | py::array::forcecast>& a) {
          const BinaryTallies t = binary_tallies(matrix_of(a));
          py::dict d;
          d["vp"] = t.vp;
          d["fp"] = t.fp;
          d["vn"] = t.vn;
          d["fn"] = t.fn;
          return d;
        },
        py::arg("matrix"));
  m.def("metrics",
        [](const py::array_t<std::uint64_t, py::array::c_style | py::array::forcecast>& a) {
          return metrics_dict(metrics(binary_tallies(matrix_of(a))));
        },
        py::arg("matrix"), "Sensitivity, specificity, precision, accuracy, error rate.");
  m.def("per_class_report",
        [](const py::array_t<std::uint64_t, py::array::c_style | py::array::forcecast>& a) {
          py::list out;
          for (const ClassReport& r : per_class_report(matrix_of(a))) {
            py::dict d;
            d["index"] = r.index;
            d["vp"] = r.tallies.vp;
            d["fp"] = r.tallies.fp;
            d["vn"] = r.tallies.vn;
            d["fn"] = r.tallies.fn;
            d["accuracy"] = r.accuracy;
            d["positive_accuracy"] = r.positive_accuracy;
            d["negative_accuracy"] = r.negative_accuracy;
            out.append(d);
          }
          return out;
        },
        py::arg("matrix"));

  // Synthetic data.
  m.def("synth_image",
        [](std::uint64_t seed, int cls, int index, int classes, int per_class, int size) {
          return from_image(synth_image(seed, SynthSpec{classes, per_class, size}, cls, index));
        },
        py::arg("seed"), py::arg("cls"), py::arg("index"), py::arg("classes") = 8,
        py::arg("per_class") = 5, py::arg("size") = 256);
}
