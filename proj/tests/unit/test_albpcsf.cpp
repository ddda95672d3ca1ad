#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "rocktex/albpcsf.hpp"
#include "support.hpp"

using namespace rocktex;

TEST_CASE("cross_channel_lbp") {
  SUBCASE("same plane degenerates to lbp_map") {
    const PlaneF p = testing::random_int_plane(10, 9, 3, 0, 8);
    CHECK(cross_channel_lbp(p, p, LbpConfig{}) == lbp_map(p, LbpConfig{}));
  }
  SUBCASE("neighbors all below center give 0") {
    for (const auto& t = cross_channel_lbp(PlaneF(5, 5, 10.0), PlaneF(5, 5, 20.0), LbpConfig{}); auto c : t.values())
      CHECK(c == 0u);
  }
  SUBCASE("random pairs match the oracle") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const PlaneF n = testing::random_int_plane(14, 11, s, 0, 30);
      const PlaneF c = testing::random_int_plane(14, 11, s + 100, 0, 30);
      CHECK(cross_channel_lbp(n, c, LbpConfig{}) == oracle::lbp(n, c, LbpConfig{}));
      const LbpConfig riu2{8, 1.5, LbpVariant::Riu2};
      const PlaneF nf = testing::random_plane(14, 11, s), cf = testing::random_plane(14, 11, s + 7);
      CHECK(cross_channel_lbp(nf, cf, riu2) == oracle::lbp(nf, cf, riu2));
    }
  }
}

TEST_CASE("albpcsf shape and normalization") {
  const ColorImage img = testing::random_image(17, 13, 5);
  const FusedDescriptor d = albpcsf(img, LbpConfig{});
  REQUIRE(d.per_pair.size() == 3);
  CHECK(d.concatenated.size() == 768);
  for (const auto& h : d.per_pair) {
    CHECK(h.normalized);
    CHECK(h.total() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(std::accumulate(d.concatenated.begin(), d.concatenated.end(), 0.0) ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(albpcsf(img, LbpConfig{8, 1.0, LbpVariant::Riu2}).concatenated.size() == 30);
}

TEST_CASE("albpcsf pairs are (R,V), (G,V), (B,V) in order") {
  CHECK(to_string(kFusionPairs[0]) == "(R,V)");
  CHECK(to_string(kFusionPairs[1]) == "(G,V)");
  CHECK(to_string(kFusionPairs[2]) == "(B,V)");
  const ColorImage img = testing::random_image(12, 12, 6);
  const FusionPlanes planes = FusionPlanes::from_image(img);
  const FusedDescriptor d = albpcsf(planes, LbpConfig{});
  const std::array<const PlaneF*, 3> nb{&planes.r, &planes.g, &planes.b};
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(d.per_pair[i].bins == oracle::tally(oracle::lbp(*nb[i], planes.v, LbpConfig{}), 256, true));
}

TEST_CASE("gray content gives three identical sub-histograms") {
  ColorImage gray = testing::random_image(11, 10, 7);
  std::vector<Pixel> px(gray.pixels().begin(), gray.pixels().end());
  for (auto& p : px) p = {p[0], p[0], p[0]};
  const FusedDescriptor d = albpcsf(ColorImage(11, 10, ColorSpace::RGB, px), LbpConfig{});
  CHECK(d.per_pair[0].bins == d.per_pair[1].bins);
  CHECK(d.per_pair[1].bins == d.per_pair[2].bins);
}

TEST_CASE("albpcsf is invariant to positive affine maps of all planes") {
  const FusionPlanes p = FusionPlanes::from_image(testing::random_image(15, 15, 8));
  FusionPlanes q = p;
  for (PlaneF* pl : {&q.r, &q.g, &q.b, &q.v})
    for (double& v : pl->values()) v = 3.0 * v - 11.0;
  CHECK(albpcsf(p, LbpConfig{}).concatenated == albpcsf(q, LbpConfig{}).concatenated);
}

TEST_CASE("translation that keeps the interior content leaves histograms unchanged") {
  // Cyclic shift of a tile-periodic image keeps every interior code multiset.
  const ColorImage tile = testing::random_image(6, 6, 9);
  auto make = [&](int ox, int oy) {
    std::vector<Pixel> px;
    for (int y = 0; y < 38; ++y)
      for (int x = 0; x < 38; ++x) px.push_back(tile((x + ox) % 6, (y + oy) % 6));
    return ColorImage(38, 38, ColorSpace::RGB, px);
  };
  // 36x36 interior = 6x6 whole tiles, so any shift keeps the histogram.
  CHECK(albpcsf(make(0, 0), LbpConfig{}).concatenated ==
        albpcsf(make(2, 5), LbpConfig{}).concatenated);
}

TEST_CASE("FusionPlanes channel lookup") {
  const FusionPlanes p = FusionPlanes::from_image(testing::random_image(4, 4, 1));
  CHECK(&p[Channel::R] == &p.r);
  CHECK(&p[Channel::V] == &p.v);
  CHECK_THROWS_AS(p[Channel::H], Error);
  CHECK_THROWS_AS(FusionPlanes::from_image(rgb_to_hsv(testing::random_image(4, 4, 1))), Error);
}
