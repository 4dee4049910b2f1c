#include <catch2/catch.hpp>

#include "test_helpers.hpp"

using namespace qtest;

TEST_CASE("coarse length of a geodesic telescopes at h = 0", "[coarse]") {
  const QhGraph& g = shared_graph("disk", 32);
  const Geodesic geo = qh_geodesic(g, {0, 0}, {0.9, 0});
  const double coarse = coarse_qh_length(g, geo.path, 0.0);
  CHECK(coarse == Approx(geo.length_w).epsilon(0.01));
}

TEST_CASE("coarse length edge cases", "[coarse]") {
  const QhGraph& g = shared_graph("disk", 32);
  const Polyline short_curve({{0.1, 0.0}, {0.2, 0.0}});

  SECTION("h above the k-diameter gives the empty family") {
    CHECK(coarse_qh_length(g, short_curve, 50.0) == 0.0);
  }
  SECTION("negative h is rejected") {
    CHECK_THROWS_AS(coarse_qh_length(g, short_curve, -0.1), error);
  }
  SECTION("bounded by the quasihyperbolic length") {
    Rng rng(41);
    for (int t = 0; t < 6; ++t) {
      std::vector<Point> pts{{rng.next_in(-0.4, 0.4), rng.next_in(-0.4, 0.4)}};
      for (int i = 0; i < 3; ++i) {
        const Point q{rng.next_in(-0.5, 0.5), rng.next_in(-0.5, 0.5)};
        if (g.domain().segment_inside(pts.back(), q)) pts.push_back(q);
      }
      if (pts.size() < 2) continue;
      const Polyline c(pts);
      for (double h : {0.0, 0.25, 0.7}) {
        CHECK(coarse_qh_length(g, c, h) <= qh_length(g.domain(), c) * 1.01 + 1e-9);
      }
    }
  }
  SECTION("nonincreasing in h") {
    const Geodesic geo = qh_geodesic(g, {-0.5, 0.2}, {0.6, -0.3});
    double prev = std::numeric_limits<double>::infinity();
    for (double h : {0.0, 0.3, 0.6, 1.2, 2.4}) {
      const double v = coarse_qh_length(g, geo.path, h);
      CHECK(v <= prev + 1e-9);
      prev = v;
    }
  }
}

TEST_CASE("geodesics are 1-solid", "[coarse]") {
  const QhGraph& g = shared_graph("disk", 32);
  Rng rng(43);
  const std::size_t n = g.nodes().size();
  for (int t = 0; t < 5; ++t) {
    const Point a = g.nodes()[rng.next_below(n)].p;
    const Point b = g.nodes()[rng.next_below(n)].p;
    if (a == b) continue;
    const Geodesic geo = qh_geodesic(g, a, b);
    if (geo.path.degenerate()) continue;
    for (double h : {0.0, 0.5, 1.0}) {
      const SolidnessReport rep = solidness(g, geo.path, h);
      CHECK(rep.nu <= 1.05);
      CHECK(rep.nu >= 1.0);
    }
  }
}

TEST_CASE("solidness rejects degenerate curves", "[coarse]") {
  const QhGraph& g = shared_graph("disk", 32);
  CHECK_THROWS_AS(solidness(g, Polyline({{0.1, 0.1}}), 0.5), error);
}

TEST_CASE("center-routed cone arcs are solid at their cone scale", "[coarse]") {
  const QhGraph& g = shared_graph("disk", 32);
  const Polyline arc({{-0.85, 0.1}, {0, 0}, {0.6, 0.65}});
  const double a = cone_constant(g.domain(), arc).value;
  REQUIRE(a > 0.5);  // keep 4a^2 above the nu >= 1 floor
  const SolidnessReport rep = solidness(g, arc, 4.0 * a * a);
  CHECK(rep.nu <= 4.0 * a * a * 1.10);
}

TEST_CASE("quasigeodesic verdicts", "[coarse]") {
  const QhGraph& g = shared_graph("disk", 32);

  SECTION("a geodesic passes at (1, graph tolerance)") {
    const Geodesic geo = qh_geodesic(g, {-0.4, 0.1}, {0.5, 0.3});
    const auto rep = quasigeodesic_check(g, geo.path, 1.0, 0.05);
    CHECK(rep.ok);
  }
  SECTION("the diameter chord passes at (4a^2, 4a^2)") {
    const Polyline chord({{-0.5, 0.0}, {0.5, 0.0}});
    const double a = cone_constant(g.domain(), chord).value;
    CHECK(a == Approx(0.5).margin(0.01));
    const auto rep = quasigeodesic_check(g, chord, std::max(1.0, 4 * a * a), 4 * a * a);
    CHECK(rep.ok);
  }
  SECTION("a near-boundary loop fails at (1, 0)") {
    std::vector<Point> pts;
    for (int i = 0; i <= 48; ++i) {
      const double th = 1.9 * M_PI * i / 48.0;
      pts.push_back({0.9 * std::cos(th), 0.9 * std::sin(th)});
    }
    const auto rep = quasigeodesic_check(g, Polyline(pts), 1.0, 0.0);
    CHECK_FALSE(rep.ok);
    CHECK(rep.worst_ratio > 2.0);
  }
  SECTION("invalid parameters") {
    CHECK_THROWS_AS(quasigeodesic_check(g, Polyline({{0, 0}, {0.1, 0}}), 0.5, 0.0), error);
  }
}
