#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rocktex/gabor.hpp"
#include "support.hpp"

using namespace rocktex;

namespace {

double max_abs(const PlaneF& p) {
  double m = 0.0;
  for (double v : p.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("wave vector and wavelength") {
  CHECK(GaborParams{0, 0}.wavelength() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(GaborParams{0, 2}.wavelength() == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(GaborParams{3, 0}.theta() == doctest::Approx(3 * std::numbers::pi / 8));
  for (int nu = 0; nu < 4; ++nu)
    CHECK(GaborParams{0, nu}.wavelength() < GaborParams{0, nu + 1}.wavelength());
  CHECK_THROWS_AS(GaborParams({8, 0}).validate(), Error);
  CHECK_THROWS_AS(GaborParams({0, 5}).validate(), Error);
  CHECK_THROWS_AS(GaborParams({0, 0, -1.0}).validate(), Error);
}

TEST_CASE("params_from_wavelength") {
  CHECK(params_from_wavelength(4.0, 0.0) == GaborParams{0, 0});
  CHECK(params_from_wavelength(8.0, 45.0) == GaborParams{2, 2});
  CHECK(params_from_wavelength(8.0, 180.0) == GaborParams{0, 2});
  CHECK(params_from_wavelength(4.0, 135.0) == GaborParams{6, 0});
  CHECK_THROWS_AS(params_from_wavelength(5.0, 0.0), Error);
  CHECK_THROWS_AS(params_from_wavelength(4.0, 10.0), Error);
}

TEST_CASE("kernel center tap without exact DC compensation") {
  const GaborKernel k = build_kernel(GaborParams{}, 25, KernelOptions{false, false});
  CHECK(k.at(0, 0).real() == doctest::Approx(1.0 - std::exp(-std::numbers::pi * std::numbers::pi / 2)).epsilon(1e-12));
  CHECK(k.at(0, 0).real() == doctest::Approx(0.99281).epsilon(1e-5));
  CHECK(k.at(0, 0).imag() == doctest::Approx(0.0));
}

TEST_CASE("kernel sizes") {
  CHECK(default_kernel_size(GaborParams{0, 0}) == 13);
  CHECK(default_kernel_size(GaborParams{0, 2}) == 25);
  CHECK(default_kernel_size(GaborParams{0, 4}) == 49);
  CHECK(default_kernel_size(GaborParams{0, 4}, 31) == 31);
  CHECK(default_kernel_size(GaborParams{0, 4}, 30) == 29);
  CHECK_THROWS_AS(build_kernel(GaborParams{}, 6), Error);
  CHECK_THROWS_AS(build_kernel(GaborParams{}, 5), Error);
}

TEST_CASE("taps sum to zero relative to the peak") {
  for (const GaborKernel& k : bank()) {
    double peak = 0.0;
    for (auto t : k.taps()) peak = std::max(peak, std::abs(t));
    CHECK(std::abs(k.sum()) <= 1e-6 * peak);
  }
}

TEST_CASE("bank has 40 kernels, scale-major") {
  const auto b = bank();
  REQUIRE(b.size() == 40);
  CHECK(b[0].params() == GaborParams{0, 0});
  CHECK(b[7].params() == GaborParams{7, 0});
  CHECK(b[8].params() == GaborParams{0, 1});
  CHECK(b[39].params() == GaborParams{7, 4});
}

TEST_CASE("amplitude prefactor scales every tap") {
  const GaborParams p{1, 1};
  const GaborKernel a = build_kernel(p, 19);
  const GaborKernel b = build_kernel(p, 19, KernelOptions{true, true});
  const double f = p.wave_number() * p.wave_number() / (p.sigma * p.sigma);
  for (std::size_t i = 0; i < a.taps().size(); ++i)
    CHECK(std::abs(b.taps()[i] - f * a.taps()[i]) <= 1e-12);
}

TEST_CASE("kernels are Hermitian: the -k kernel is the conjugate") {
  for (const GaborKernel& k : bank())
    for (int dy = -k.half(); dy <= k.half(); ++dy)
      for (int dx = -k.half(); dx <= k.half(); ++dx)
        CHECK(std::abs(k.at(-dx, -dy) - std::conj(k.at(dx, dy))) <= 1e-15);
}

TEST_CASE("k and -k give identical amplitudes") {
  const PlaneF img = testing::random_plane(40, 36, 11);
  for (const GaborParams p : {GaborParams{1, 0}, GaborParams{6, 2}}) {
    const GaborKernel k = build_kernel(p, default_kernel_size(p));
    std::vector<std::complex<double>> conj(k.taps().begin(), k.taps().end());
    for (auto& t : conj) t = std::conj(t);
    const auto a = filter(img, k);
    const auto b = filter(img, GaborKernel(p, k.size(), conj));
    for (std::size_t i = 0; i < a.amplitude.size(); ++i)
      CHECK(a.amplitude.values()[i] == doctest::Approx(b.amplitude.values()[i]).epsilon(1e-12));
  }
  CHECK(params_from_wavelength(4.0, 180.0) == params_from_wavelength(4.0, 0.0));
}

TEST_CASE("orientation mu+4 is mu rotated by 90 degrees") {
  const int n = 36;
  const PlaneF img = testing::random_plane(n, n, 12);
  PlaneF rot(n, n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) rot(x, y) = img(y, n - 1 - x);
  for (int mu = 0; mu < 4; ++mu) {
    const GaborParams p{mu, 1}, q{mu + 4, 1};
    const auto a = filter(img, build_kernel(p, default_kernel_size(p)));
    const auto b = filter(rot, build_kernel(q, default_kernel_size(q)));
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        CHECK(b.amplitude(x, y) == doctest::Approx(a.amplitude(y, n - 1 - x)).epsilon(1e-9));
  }
}

TEST_CASE("filter properties") {
  const GaborKernel k = build_kernel({2, 1}, default_kernel_size({2, 1}));
  SUBCASE("zero plane") {
    for (const auto& t = filter(PlaneF(24, 24, 0.0), k).amplitude; double v : t.values()) CHECK(v == 0.0);
  }
  SUBCASE("constant plane is below the DC bound") {
    for (double c : {1.0, 200.0})
      CHECK(max_abs(filter(PlaneF(30, 30, c), k).amplitude) <= 1e-6 * c * k.l1_norm());
  }
  SUBCASE("scaling the input scales the amplitude and keeps the phase") {
    const PlaneF p = testing::random_plane(28, 28, 12);
    PlaneF q = p;
    for (double& v : q.values()) v *= 2.5;
    const auto a = filter(p, k), b = filter(q, k);
    for (std::size_t i = 0; i < a.amplitude.size(); ++i) {
      CHECK(b.amplitude.values()[i] == doctest::Approx(2.5 * a.amplitude.values()[i]).epsilon(1e-9));
      if (a.amplitude.values()[i] > 1e-6)
        CHECK(b.phase.values()[i] == doctest::Approx(a.phase.values()[i]).epsilon(1e-9));
    }
  }
  SUBCASE("amplitude nonnegative and phase in (-pi, pi]") {
    const auto r = filter(testing::random_plane(30, 30, 13), k);
    for (double v : r.amplitude.values()) CHECK(v >= 0.0);
    for (double v : r.phase.values()) {
      CHECK(v > -std::numbers::pi);
      CHECK(v <= std::numbers::pi);
    }
  }
  SUBCASE("plane smaller than the kernel throws") {
    CHECK_THROWS_AS(filter(PlaneF(10, 30, 1.0), k), Error);
  }
}

TEST_CASE("direct, FFT and oracle convolutions agree") {
  for (std::uint64_t s = 0; s < 4; ++s) {
    const PlaneF p = testing::random_plane(32, 30, s);
    for (const GaborParams gp : {GaborParams{0, 0}, GaborParams{3, 2}, GaborParams{5, 1}}) {
      const GaborKernel k = build_kernel(gp, default_kernel_size(gp));
      const ComplexPlane ref = oracle::convolve(p, k);
      const ComplexPlane d = convolve(p, k, ConvolutionMethod::Direct);
      const ComplexPlane f = convolve(p, k, ConvolutionMethod::Fft);
      double scale = 0.0;
      for (auto v : ref.values()) scale = std::max(scale, std::abs(v));
      for (std::size_t i = 0; i < ref.size(); ++i) {
        CHECK(std::abs(d.values()[i] - ref.values()[i]) <= 1e-9 * scale);
        CHECK(std::abs(f.values()[i] - ref.values()[i]) <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("convolution is a true convolution, not a correlation") {
  // A unit impulse reproduces the kernel itself, not its mirror image.
  PlaneF p(31, 31, 0.0);
  p(15, 15) = 1.0;
  const GaborKernel k = build_kernel({1, 0}, 13);
  const ComplexPlane out = convolve(p, k, ConvolutionMethod::Direct);
  for (int dy = -6; dy <= 6; ++dy)
    for (int dx = -6; dx <= 6; ++dx)
      CHECK(std::abs(out(15 + dx, 15 + dy) - k.at(dx, dy)) <= 1e-15);
}
