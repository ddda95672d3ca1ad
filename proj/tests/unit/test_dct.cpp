#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rocktex/dct.hpp"
#include "support.hpp"

using namespace rocktex;

namespace {

double energy(const PlaneF& p) {
  double s = 0.0;
  for (double v : p.values()) s += v * v;
  return s;
}

double diff_norm(const PlaneF& a, const PlaneF& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += (a.values()[i] - b.values()[i]) * (a.values()[i] - b.values()[i]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("2x2 ones") {
  const DctCoeffs c = dct2(PlaneF(2, 2, 1.0));
  CHECK(c.coeffs(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(c.coeffs(1, 0)) < 1e-14);
  CHECK(std::abs(c.coeffs(0, 1)) < 1e-14);
  CHECK(std::abs(c.coeffs(1, 1)) < 1e-14);
  CHECK(oracle::dct(PlaneF(2, 2, 1.0)).coeffs(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("constant plane has only a DC coefficient c*sqrt(MN)") {
  for (auto [m, n] : {std::pair{5, 3}, std::pair{8, 8}, std::pair{16, 7}}) {
    const DctCoeffs c = dct2(PlaneF(m, n, 3.5));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < m; ++i) {
        const double want = (i == 0 && j == 0) ? 3.5 * std::sqrt(m * n) : 0.0;
        CHECK(std::abs(c.coeffs(i, j) - want) < 1e-12);
      }
  }
}

TEST_CASE("delta at the origin") {
  PlaneF p(4, 4, 0.0);
  p(0, 0) = 1.0;
  const DctCoeffs c = dct2(p);
  const DctCoeffs ref = oracle::dct(p);
  auto a = [](int i) { return i == 0 ? 0.5 : std::sqrt(0.5); };
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) {
      const double want =
          a(i) * a(j) * std::cos(i * std::numbers::pi / 8) * std::cos(j * std::numbers::pi / 8);
      CHECK(c.coeffs(i, j) == doctest::Approx(want).epsilon(1e-12));
      CHECK(ref.coeffs(i, j) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("coefficient layout: column is horizontal frequency") {
  PlaneF p(8, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 8; ++x) p(x, y) = std::cos((2 * x + 1) * 3 * std::numbers::pi / 16);
  const DctCoeffs c = dct2(p);
  CHECK(c.width() == 8);
  CHECK(c.height() == 4);
  CHECK(std::abs(c.coeffs(3, 0)) > 1.0);
  CHECK(std::abs(c.coeffs(0, 3)) < 1e-12);
}

TEST_CASE("dct2 matches the quadruple-loop oracle") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const int m = 3 + static_cast<int>(s % 14), n = 16 - static_cast<int>(s % 9);
    const PlaneF p = testing::random_plane(m, n, s, -100.0, 100.0);
    const DctCoeffs a = dct2(p), b = oracle::dct(p);
    const double scale = std::sqrt(energy(b.coeffs));
    CHECK(diff_norm(a.coeffs, b.coeffs) <= 1e-9 * scale);
  }
  CHECK_THROWS_AS(oracle::dct(PlaneF(17, 4)), Error);
}

TEST_CASE("round trip, Parseval and linearity") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const PlaneF p = testing::random_plane(19, 12, s);
    const PlaneF q = testing::random_plane(19, 12, s + 50);
    const DctCoeffs c = dct2(p);
    CHECK(diff_norm(idct2(c), p) <= 1e-9 * std::sqrt(energy(p)));
    CHECK(energy(c.coeffs) == doctest::Approx(energy(p)).epsilon(1e-9));
    PlaneF lin(19, 12);
    for (std::size_t i = 0; i < lin.size(); ++i)
      lin.values()[i] = 2.0 * p.values()[i] - 0.5 * q.values()[i];
    const DctCoeffs cq = dct2(q), cl = dct2(lin);
    for (std::size_t i = 0; i < lin.size(); ++i)
      CHECK(cl.coeffs.values()[i] ==
            doctest::Approx(2.0 * c.coeffs.values()[i] - 0.5 * cq.coeffs.values()[i])
                .epsilon(1e-9)
                .scale(255.0));
  }
}

TEST_CASE("idct2 of special coefficient sets") {
  PlaneF dc(6, 5, 0.0);
  dc(0, 0) = std::sqrt(30.0);
  for (const auto& t = idct2({dc}); double v : t.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& t = idct2({PlaneF(6, 5, 0.0)}); double v : t.values()) CHECK(v == 0.0);
}

TEST_CASE("lowpass") {
  const PlaneF p = testing::random_plane(20, 16, 3);
  const DctCoeffs c = dct2(p);
  SUBCASE("k = side of a square plane is the identity") {
    const DctCoeffs sq = dct2(testing::random_plane(16, 16, 8));
    CHECK(lowpass(sq, {16}).coeffs == sq.coeffs);
  }
  SUBCASE("k = min side keeps the full short axis") {
    const DctCoeffs l = lowpass(c, {16});
    CHECK(l.coeffs(15, 15) == c.coeffs(15, 15));
    CHECK(l.coeffs(16, 0) == 0.0);
  }
  SUBCASE("k = 1 reconstructs the mean") {
    double mean = 0.0;
    for (double v : p.values()) mean += v;
    mean /= static_cast<double>(p.size());
    for (const auto& t = idct2(lowpass(c, {1})); double v : t.values()) CHECK(v == doctest::Approx(mean).epsilon(1e-12));
  }
  SUBCASE("k = 32 on 256x256 keeps 1024 coefficients") {
    const DctCoeffs big = dct2(PlaneF(256, 256, 1.0));
    DctCoeffs ones{PlaneF(256, 256, 1.0)};
    std::size_t kept = 0;
    for (const auto& t = lowpass(ones, {32}).coeffs; double v : t.values()) kept += v != 0.0;
    CHECK(kept == 1024);
    CHECK(big.width() == 256);
  }
  SUBCASE("reconstruction error does not grow with k") {
    double prev = INFINITY;
    for (int k = 1; k <= 16; ++k) {
      const double err = diff_norm(p, idct2(lowpass(c, {k})));
      CHECK(err <= prev + 1e-9);
      prev = err;
    }
  }
  SUBCASE("invalid k throws") {
    CHECK_THROWS_AS(lowpass(c, {0}), Error);
    CHECK_THROWS_AS(lowpass(c, {17}), Error);
  }
}
