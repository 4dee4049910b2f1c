#include <catch2/catch.hpp>

#include "test_helpers.hpp"

using namespace qtest;

TEST_CASE("thin triangle degenerate cases", "[hyperbolicity]") {
  const QhGraph& g = shared_graph("disk", 24);
  Rng rng(47);
  const auto x = static_cast<std::int32_t>(rng.next_below(g.nodes().size()));
  CHECK(triple_thinness(g, x, x, x) == 0.0);

  SECTION("three nodes on one geodesic are nearly degenerate") {
    const std::int32_t a = g.nearest_node({-0.6, 0.0});
    const std::int32_t b = g.nearest_node({0.6, 0.2});
    const Geodesic geo = qh_geodesic(g, g.nodes()[a].p, g.nodes()[b].p);
    REQUIRE(geo.node_path.size() >= 5);
    const std::int32_t m = geo.node_path[geo.node_path.size() / 2];
    const double d = triple_thinness(g, a, m, b);
    CHECK(d <= 0.05 * geo.length_w + 0.1);
  }
}

TEST_CASE("thin triangle estimate on the disk is stable", "[hyperbolicity]") {
  // Reference run: delta ~= 0.897 at the default resolution; the estimate
  // moves by under 3% across a resolution doubling and across seeds.
  const double reference = 0.897;
  std::vector<double> values;
  for (double res : {64.0, 128.0}) {
    const QhGraph& g = shared_graph("disk", res);
    for (std::uint64_t seed : {7ULL, 8ULL})
      values.push_back(thin_triangle_delta(g, 200, seed).delta_thin);
  }
  for (double v : values) {
    CHECK(v > 0.0);
    CHECK(std::abs(v - reference) <= 0.15 * reference);
  }
}

TEST_CASE("thin triangle estimate on the disk", "[hyperbolicity]") {
  const QhGraph& g = shared_graph("disk", 32);
  const DeltaEstimate est = thin_triangle_delta(g, 60, 7);
  CHECK(est.delta_thin > 0.0);
  CHECK(est.delta_thin < 5.0);

  SECTION("witness reproduces the reported value") {
    const std::int32_t x = g.nearest_node(est.witness_triple[0]);
    const std::int32_t y = g.nearest_node(est.witness_triple[1]);
    const std::int32_t z = g.nearest_node(est.witness_triple[2]);
    CHECK(triple_thinness(g, x, y, z) == est.delta_thin);
  }
  SECTION("monotone in the sample count for a fixed seed") {
    const DeltaEstimate small = thin_triangle_delta(g, 20, 7);
    CHECK(est.delta_thin >= small.delta_thin - 1e-12);
  }
}

TEST_CASE("four point delta", "[hyperbolicity]") {
  SECTION("fewer than four points is vacuous") {
    const std::vector<std::vector<double>> m{{0, 1, 2}, {1, 0, 1.5}, {2, 1.5, 0}};
    CHECK(four_point_delta(m) == 0.0);
  }
  SECTION("path metrics on trees are 0-hyperbolic") {
    // Path a - b - c - d with unit edges.
    const std::vector<std::vector<double>> m{
        {0, 1, 2, 3}, {1, 0, 1, 2}, {2, 1, 0, 1}, {3, 2, 1, 0}};
    CHECK(four_point_delta(m) == Approx(0.0).margin(1e-12));
  }
  SECTION("duplicated points contribute nothing") {
    std::vector<std::vector<double>> m{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    CHECK(four_point_delta(m) == 0.0);
  }
  SECTION("invalid matrices are rejected") {
    CHECK_THROWS_AS(four_point_delta({{0, 1}, {2, 0}}), error);          // asymmetric
    CHECK_THROWS_AS(four_point_delta({{1, 1}, {1, 0}}), error);          // nonzero diagonal
    CHECK_THROWS_AS(four_point_delta({{0, 5, 1}, {5, 0, 1}, {1, 1, 0}}), error);  // triangle fails
  }
  SECTION("sampled value lower-bounds the exhaustive one") {
    const QhGraph& g = shared_graph("l_shape", 24);
    Rng rng(53);
    std::vector<std::int32_t> ids;
    while (ids.size() < 16) ids.push_back(static_cast<std::int32_t>(rng.next_below(g.nodes().size())));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    const auto m = k_matrix(g, ids);
    const double exhaustive = four_point_delta(m);
    // A sampled sub-matrix can only do worse.
    std::vector<std::vector<double>> sub(8, std::vector<double>(8));
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) sub[i][j] = m[i][j];
    CHECK(four_point_delta(sub) <= exhaustive + 1e-12);
  }
}

TEST_CASE("rough starlikeness of the disk", "[hyperbolicity]") {
  const QhGraph& g = shared_graph("disk", 64);
  const auto data = rough_starlikeness_data(g, {0.0, 0.0});
  CHECK(data.estimate.K <= 0.5);
  CHECK(data.estimate.K >= 0.0);

  SECTION("the base point lies on every ray") {
    const std::int32_t wn = g.nearest_node({0.0, 0.0});
    CHECK(data.K_at_node[wn] == 0.0);
  }
  SECTION("witness reproduces") {
    const std::int32_t worst = g.nearest_node(data.estimate.worst_point);
    CHECK(data.K_at_node[worst] == Approx(data.estimate.K));
  }
  SECTION("a point between the base and a deep proxy sits on a ray") {
    // Rays from (0.5, 0) toward the boundary near (1, 0) run along the axis,
    // so the axis point (0.7, 0) is on (or next to) one of them.
    const auto shifted = rough_starlikeness_data(g, {0.5, 0.0});
    const std::int32_t witness = g.nearest_node({0.7, 0.0});
    CHECK(shifted.K_at_node[witness] <= 0.2);
  }
}

TEST_CASE("rough starlikeness of the slit disk", "[hyperbolicity]") {
  // K converges from below on slit geometries: the proxy-ray tree picks up
  // the rays shadowed by the slit tip only as the resolution deepens, so the
  // cross-resolution window here is the measured drift bound, not the disk's.
  const QhGraph& c = shared_graph("slit_disk", 48);
  const QhGraph& f = shared_graph("slit_disk", 96);
  const auto coarse = rough_starlikeness(c, {-0.5, 0.0});
  const auto fine = rough_starlikeness(f, {-0.5, 0.0});
  CHECK(coarse.K > 0.0);
  CHECK(fine.K > 0.0);
  CHECK(std::isfinite(fine.K));
  CHECK(fine.K >= coarse.K * 0.95);  // converging from below
  CHECK(std::max(coarse.K, fine.K) / std::min(coarse.K, fine.K) <= 1.45);
  // The hard region is the lens behind the slit tip.
  CHECK(fine.worst_point.x > 0.9);
  CHECK(std::abs(fine.worst_point.y) < 0.1);
}
