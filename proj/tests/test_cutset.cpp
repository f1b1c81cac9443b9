#include <doctest.h>

#include <cmath>

#include "deadline_bcast/cutset.hpp"

using namespace dbc;

namespace {

std::vector<BlockStats> stats_of(const char* pattern, int t1) {
  return block_stats(ErasurePattern::parse(pattern), t1);
}

}  // namespace

TEST_CASE("block capacities") {
  CHECK(block_capacities(BlockStats{0, 1, 1, 1}) == BlockCapacities{2, 2, 3});
  CHECK(block_capacities(BlockStats{3, 0, 0, 0}) == BlockCapacities{0, 0, 0});
  CHECK(block_capacities(BlockStats{0, 0, 0, 3}) == BlockCapacities{3, 3, 3});

  // a, b, c always satisfy max(a,b) <= c <= a+b <= ... and c <= T1
  for (const BlockConfig& cfg : enumerate_block_configs(5)) {
    const BlockCapacities cap = block_capacities(cfg.stats);
    CHECK(std::max(cap.a, cap.b) <= cap.c);
    CHECK(cap.c <= cap.a + cap.b);
    CHECK(cap.c <= 5);
  }
}

TEST_CASE("region coefficients") {
  const std::vector<BlockStats> one{BlockStats{0, 1, 1, 1}};
  const RegionCoefficients rc1 = region_coefficients(one);
  CHECK(rc1.a_min == 2);
  CHECK(rc1.v == std::vector<int>{2, 3});

  const std::vector<BlockStats> two{BlockStats{0, 0, 1, 1}, BlockStats{0, 1, 0, 1}};
  const RegionCoefficients rc2 = region_coefficients(two);
  CHECK(rc2.a_min == 1);
  CHECK(rc2.v == std::vector<int>{3, 3, 4});
  // subset-minimum cross-check for N = 2: v1 = min(b1+c2, c1+b2), v2 = c1+c2
  const BlockCapacities c1 = block_capacities(two[0]);
  const BlockCapacities c2 = block_capacities(two[1]);
  CHECK(rc2.v[1] == std::min(c1.b + c2.c, c1.c + c2.b));
  CHECK(rc2.v[2] == c1.c + c2.c);

  const RegionCoefficients all_ones = region_coefficients(stats_of("11,11,11,11,11,11", 3));
  CHECK(all_ones.a_min == 3);
  CHECK(all_ones.v == std::vector<int>{6, 6, 6});

  // v increments are the sorted n10 counts
  std::mt19937_64 rng = make_rng(99);
  for (int i = 0; i < 50; ++i) {
    const int t1 = 1 + static_cast<int>(rng() % 3);
    const int n = 1 + static_cast<int>(rng() % 3);
    const auto stats = block_stats(sample_pattern(ErasureProbs(0.1, 0.2, 0.2, 0.5), t1 * n, rng), t1);
    const RegionCoefficients rc = region_coefficients(stats);
    std::vector<int> n10s;
    for (const BlockStats& b : stats) n10s.push_back(b.n10);
    std::sort(n10s.begin(), n10s.end());
    for (std::size_t k = 0; k < n10s.size(); ++k) CHECK(rc.v[k + 1] - rc.v[k] == n10s[k]);
  }
}

TEST_CASE("feasibility: worked examples") {
  const auto ones3 = stats_of("11,11,11", 3);
  CHECK(is_feasible(ones3, 1.0, 2.0));
  CHECK(!is_feasible(ones3, 1.0, 2.5));

  const std::vector<BlockStats> two{BlockStats{0, 0, 1, 1}, BlockStats{0, 1, 0, 1}};
  CHECK(is_feasible(two, 1.0, 1.5));
  CHECK(is_feasible(two, 1.0, 2.0));
  CHECK(!is_feasible(two, 1.0, 2.25));

  CHECK(is_feasible(stats_of("00,00", 2), 0.0, 0.0));
  CHECK(!is_feasible(stats_of("00,00", 2), 0.25, 0.0));
  CHECK(!equivalent_feasible(stats_of("00,00", 1), 0.25, 0.0));
  CHECK(equivalent_feasible(stats_of("00,00", 1), 0.0, 0.0));
}

TEST_CASE("feasibility: the two forms agree exhaustively (T = 4, N = 2)") {
  for (std::uint64_t index = 0; index < pattern_count(4); ++index) {
    const auto stats = block_stats(pattern_at(index, 4), 2);
    for (int i1 = 0; i1 <= 17; ++i1) {
      for (int i2 = 0; i2 <= 17; ++i2) {
        const double l1 = 0.25 * i1;
        const double l2 = 0.25 * i2;
        CHECK(is_feasible(stats, l1, l2) == equivalent_feasible(stats, l1, l2));
      }
    }
  }
}

TEST_CASE("feasibility: monotone and axis-reduced") {
  std::mt19937_64 rng = make_rng(5);
  const ErasureProbs eps(0.1, 0.2, 0.2, 0.5);
  for (int i = 0; i < 200; ++i) {
    const int t1 = 1 + static_cast<int>(rng() % 3);
    const int n = 1 + static_cast<int>(rng() % 3);
    const auto stats = block_stats(sample_pattern(eps, t1 * n, rng), t1);
    const double l1 = 0.25 * static_cast<double>(rng() % 16);
    const double l2 = 0.25 * static_cast<double>(rng() % 16);
    if (is_feasible(stats, l1, l2)) {
      CHECK(is_feasible(stats, std::max(0.0, l1 - 0.25), l2));
      CHECK(is_feasible(stats, l1, std::max(0.0, l2 - 0.25)));
    }
    // on the lambda2 = 0 axis feasibility is exactly lambda1 <= a_min
    const RegionCoefficients rc = region_coefficients(stats);
    CHECK(is_feasible(stats, l1, 0.0) == (l1 <= rc.a_min + kRateTol));
  }
}

TEST_CASE("region boundary: worked examples") {
  const std::vector<BlockStats> one{BlockStats{0, 1, 1, 1}};
  const auto verts = region_boundary(one);
  REQUIRE(verts.size() == 5);
  const double expected[5][2] = {{0, 0}, {0, 2}, {1, 2}, {2, 1}, {2, 0}};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(verts[i].lambda1 == doctest::Approx(expected[i][0]));
    CHECK(verts[i].lambda2 == doctest::Approx(expected[i][1]));
  }

  const auto zeros = region_boundary(stats_of("00,00,00", 3));
  REQUIRE(zeros.size() == 1);
  CHECK(zeros[0].lambda1 == 0.0);
  CHECK(zeros[0].lambda2 == 0.0);

  const auto ones = region_boundary(stats_of("11,11,11", 3));
  REQUIRE(ones.size() == 3);
  CHECK(ones[0].lambda1 == doctest::Approx(0.0));
  CHECK(ones[0].lambda2 == doctest::Approx(0.0));
  CHECK(ones[1].lambda2 == doctest::Approx(3.0));
  CHECK(ones[2].lambda1 == doctest::Approx(3.0));
}

TEST_CASE("region boundary: vertices are feasible and boundary-tight") {
  std::mt19937_64 rng = make_rng(17);
  const ErasureProbs eps(0.1, 0.2, 0.2, 0.5);
  for (int i = 0; i < 100; ++i) {
    const int t1 = 1 + static_cast<int>(rng() % 3);
    const int n = 1 + static_cast<int>(rng() % 3);
    const auto stats = block_stats(sample_pattern(eps, t1 * n, rng), t1);
    const auto verts = region_boundary(stats);
    REQUIRE(!verts.empty());
    // the centroid is interior (or the origin, for degenerate regions)
    RatePoint centroid{0.0, 0.0};
    for (const RatePoint& v : verts) {
      centroid.lambda1 += v.lambda1 / static_cast<double>(verts.size());
      centroid.lambda2 += v.lambda2 / static_cast<double>(verts.size());
    }
    CHECK(is_feasible(stats, centroid.lambda1, centroid.lambda2));
    for (const RatePoint& v : verts) {
      CHECK(equivalent_feasible(stats, v.lambda1, v.lambda2));
      CHECK(is_feasible(stats, v.lambda1, v.lambda2));
      // pushing past the corner in both coordinates must leave the region,
      // except at the origin of a non-degenerate polygon
      const bool origin = v.lambda1 == 0.0 && v.lambda2 == 0.0;
      if (!origin || verts.size() == 1) {
        CHECK(!is_feasible(stats, v.lambda1 + 1e-5, v.lambda2 + 1e-5));
      }
    }
  }
}
