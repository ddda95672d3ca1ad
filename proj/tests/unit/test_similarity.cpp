#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rocktex/similarity.hpp"

using namespace rocktex;

namespace {

std::vector<double> random_hist(std::size_t n, std::uint64_t seed, double zero_share = 0.3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  std::vector<double> h(n);
  double s = 0.0;
  for (double& v : h) s += (v = d(rng) < zero_share ? 0.0 : d(rng));
  for (double& v : h) v /= s;
  return h;
}

}  // namespace

TEST_CASE("two-bin worked values") {
  const std::array<double, 2> a{0.5, 0.5}, b{0.25, 0.75};
  CHECK(hist_intersection(a, b).value == 0.25);
  CHECK(hist_intersection(a, b).metric == Metric::HistIntersection);
  CHECK(chi_square(a, b).value == doctest::Approx(0.13333333333333333).epsilon(1e-15));
  CHECK(chi_square(a, b).metric == Metric::ChiSquare);
}

TEST_CASE("identical and disjoint histograms") {
  const std::array<double, 2> x{1.0, 0.0}, y{0.0, 1.0};
  CHECK(hist_intersection(x, y).value == 1.0);
  CHECK(hist_intersection(x, x).value == 0.0);
  CHECK(chi_square(x, x).value == 0.0);
  CHECK(chi_square(x, y).value == 2.0);
  const std::array<double, 3> z{0.0, 0.0, 0.0};
  CHECK(chi_square(z, z).value == 0.0);
}

TEST_CASE("axioms on random histograms") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto a = random_hist(64, s), b = random_hist(64, s + 1000);
    const double hi = hist_intersection(a, b).value;
    CHECK(hi >= 0.0);
    CHECK(hi <= 1.0);
    CHECK(hist_intersection(a, a).value == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
    CHECK(hi == hist_intersection(b, a).value);
    const double c = chi_square(a, b).value;
    CHECK(!std::isnan(c));
    CHECK(c > 0.0);
    CHECK(c == chi_square(b, a).value);
    CHECK(chi_square(a, a).value == 0.0);
    CHECK(hi == doctest::Approx(oracle::distance(Metric::HistIntersection, a, b)).epsilon(1e-12));
    CHECK(c == doctest::Approx(oracle::distance(Metric::ChiSquare, a, b)).epsilon(1e-12));
    CHECK(distance(Metric::ChiSquare, a, b) == c);
  }
}

TEST_CASE("input validation") {
  const std::array<double, 2> a{0.5, 0.5};
  const std::array<double, 3> b{0.2, 0.3, 0.5};
  const std::array<double, 2> unnorm{0.5, 0.6};
  const std::array<double, 2> neg{1.5, -0.5};
  CHECK_THROWS_AS(hist_intersection(a, b), Error);
  CHECK_THROWS_AS(chi_square(a, b), Error);
  CHECK_THROWS_AS(hist_intersection(a, unnorm), Error);
  CHECK_THROWS_AS(chi_square(a, neg), Error);
  const std::array<double, 2> near{0.5, 0.5 + 5e-7};
  CHECK_NOTHROW(hist_intersection(a, near));
}

TEST_CASE("metric names") {
  CHECK(to_string(Metric::HistIntersection) == "hi");
  CHECK(to_string(Metric::ChiSquare) == "chi2");
  CHECK(parse_metric("HI") == Metric::HistIntersection);
  CHECK(parse_metric("chi2") == Metric::ChiSquare);
  CHECK_THROWS_AS(parse_metric("l2"), Error);
}
