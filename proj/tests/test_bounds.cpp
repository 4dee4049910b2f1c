#include <catch2/catch.hpp>

#include "test_helpers.hpp"

using namespace qtest;

TEST_CASE("cone bound chain at unit inputs", "[bounds]") {
  const BoundChain ch = cone_bound_chain({1, 1, 1, 1, 1});
  CHECK(ch.ln_a6 == Approx(16.0 * std::log(8.0)).margin(1e-9));
  CHECK(ch.ln_a6 == Approx(33.2711).margin(1e-3));
  CHECK(ch.ln_a5 == Approx(133.0843).margin(1e-3));
  CHECK(ch.ln_a4 == Approx(1064.674).margin(1e-2));
  CHECK(ch.ln_ln_b == Approx(1064.674).margin(1e-2));
}

TEST_CASE("cone bound chain structure", "[bounds]") {
  SECTION("ln ln b dominates ln a4") {
    for (double a : {1.0, 1.5, 3.0}) {
      const BoundChain ch = cone_bound_chain({a, 1.2, 1.1, 2.0, 1.7});
      CHECK(ch.ln_ln_b >= ch.ln_a4 - 1e-9);
      CHECK(ch.ln_a6 <= ch.ln_a5);
      CHECK(ch.ln_a5 <= ch.ln_a4);
    }
  }
  SECTION("doubling M more than doubles ln a4") {
    const BoundChain m1 = cone_bound_chain({1.5, 1.5, 1.0, 1.5, 1.5});
    const BoundChain m2 = cone_bound_chain({1.5, 1.5, 2.0, 1.5, 1.5});
    CHECK(m2.ln_a4 > 2.0 * m1.ln_a4);
  }
  SECTION("monotone in every input") {
    const BoundInputs base{1.3, 1.4, 1.5, 1.6, 1.7};
    const BoundChain ref = cone_bound_chain(base);
    auto bump = [&](int which) {
      BoundInputs b = base;
      (which == 0 ? b.a : which == 1 ? b.c : which == 2 ? b.M : which == 3 ? b.a1 : b.a3) += 0.3;
      return cone_bound_chain(b);
    };
    for (int i = 0; i < 5; ++i) {
      const BoundChain ch = bump(i);
      CHECK(ch.ln_a6 >= ref.ln_a6 - 1e-12);
      CHECK(ch.ln_a5 >= ref.ln_a5 - 1e-12);
      CHECK(ch.ln_a4 >= ref.ln_a4 - 1e-12);
      CHECK(ch.ln_ln_b >= ref.ln_ln_b - 1e-12);
    }
  }
  SECTION("inputs below 1 are rejected") {
    CHECK_THROWS_AS(cone_bound_chain({0.5, 1, 1, 1, 1}), error);
    CHECK_THROWS_AS(cone_bound_chain({1, 1, std::numeric_limits<double>::quiet_NaN(), 1, 1}), error);
  }
}

TEST_CASE("dyadic decomposition of the radial geodesic", "[bounds]") {
  const QhGraph& g = shared_graph("disk", 64);
  // Traverse from the shallow end: d_D rises 0.1 -> 1, giving m = 3.
  const Geodesic geo = qh_geodesic(g, {0.9, 0}, {0, 0});
  const DyadicDecomposition d = dyadic_decompose(geo);
  CHECK(d.m == 3);
  REQUIRE(d.points.size() == static_cast<std::size_t>(d.m) + 2);
  const double d1 = d.d_boundary.front();
  double max_cell = 0.0;
  for (std::size_t i = 0; i < geo.d_boundary.size(); ++i)
    max_cell = std::max(max_cell, g.cell_size(g.level_for_distance(geo.d_boundary[i])));
  for (int i = 2; i <= d.m + 1; ++i) {
    const double threshold = std::ldexp(d1, i - 1);
    CHECK(d.d_boundary[i - 1] >= threshold - 1e-9);
    CHECK(d.d_boundary[i - 1] <= threshold + 3.0 * max_cell);
  }
  SECTION("gaps sum along the geodesic") {
    double total = 0.0;
    for (double gap : d.gaps) total += gap;
    CHECK(total == Approx(geo.length_w).margin(1e-9));
  }
}

TEST_CASE("dyadic decomposition collapses for flat profiles", "[bounds]") {
  const QhGraph& g = shared_graph("square", 32);
  const Geodesic geo = qh_geodesic(g, {0.35, 0.5}, {0.65, 0.5});
  const DyadicDecomposition d = dyadic_decompose(geo);
  CHECK(d.m == 0);
  CHECK(d.points.size() == 2);
}

TEST_CASE("cone from gaps", "[bounds]") {
  const QhGraph& g = shared_graph("disk", 64);
  const Geodesic geo = qh_geodesic(g, {0.9, 0}, {0, 0});
  const DyadicDecomposition d = dyadic_decompose(geo);
  double max_gap = 0.0;
  for (double gap : d.gaps) max_gap = std::max(max_gap, gap);

  SECTION("bound below the max gap is rejected") {
    CHECK_THROWS_AS(cone_from_gaps(d, max_gap * 0.5), error);
  }
  SECTION("implied constant dominates the measured cone constant") {
    const ConeFromGaps cf = cone_from_gaps(d, max_gap);
    CHECK(cf.implied_cone_constant == Approx(4.0 * max_gap * std::exp(max_gap)));
    const double measured = cone_constant(g.domain(), geo.path).value;
    CHECK(measured <= cf.implied_cone_constant * 1.01);
    CHECK(cf.subarc_violations == 0);
  }
  SECTION("degenerate decomposition still yields 4 G exp(G)") {
    const QhGraph& sq = shared_graph("square", 32);
    const Geodesic flat = qh_geodesic(sq, {0.35, 0.5}, {0.65, 0.5});
    const DyadicDecomposition fd = dyadic_decompose(flat);
    REQUIRE(fd.gaps.size() == 1);
    const ConeFromGaps cf = cone_from_gaps(fd, fd.gaps[0]);
    CHECK(cf.implied_cone_constant == Approx(4.0 * fd.gaps[0] * std::exp(fd.gaps[0])));
  }
}
