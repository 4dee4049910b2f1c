#include <catch2/catch.hpp>

#include "test_helpers.hpp"

using namespace qtest;

TEST_CASE("cone constant of model arcs", "[checkers]") {
  auto disk = shared_domain("disk");

  SECTION("diameter chord") {
    const auto rep = cone_constant(*disk, segment_curve({-0.5, 0}, {0.5, 0}));
    CHECK(rep.value == Approx(0.5).margin(0.01));
  }
  SECTION("center-routed bent path") {
    const auto rep = cone_constant(*disk, Polyline({{-0.9, 0}, {0, 0}, {0.9, 0}}));
    CHECK(rep.value == Approx(0.9).margin(0.01));
  }
  SECTION("short curves have vanishing cone constant") {
    const auto rep = cone_constant(*disk, segment_curve({0.3, 0.0}, {0.31, 0.0}));
    CHECK(rep.value <= 0.02);
  }
  SECTION("degenerate curves are rejected") {
    CHECK_THROWS_AS(cone_constant(*disk, Polyline({{0.2, 0.2}})), error);
  }
  SECTION("witness re-evaluates to the reported value") {
    const Polyline arc({{-0.9, 0}, {0, 0}, {0.9, 0}});
    const auto rep = cone_constant(*disk, arc);
    const Point z = arc.at_arclength(rep.witness_arclength);
    const double again = std::min(rep.witness_arclength, arc.length() - rep.witness_arclength) /
                         disk->boundary_distance(z);
    CHECK(again == Approx(rep.value).margin(1e-9));
  }
  SECTION("subarc from the shared endpoint never exceeds the full arc") {
    const Polyline arc({{-0.5, 0}, {0.5, 0}});
    const auto full = cone_constant(*disk, arc);
    const auto sub = cone_constant(*disk, arc.subarc(0.0, 0.6));
    CHECK(sub.value <= full.value + 1e-9);
  }
  SECTION("similarity invariance") {
    const Polyline arc({{-0.5, 0}, {0.5, 0}});
    const double v1 = cone_constant(*disk, arc).value;
    std::vector<Point> big;
    for (Point p : disk->outer()) big.push_back({2 * p.x + 1, 2 * p.y - 3});
    const Domain scaled("disk2", big);
    const double v2 = cone_constant(scaled, segment_curve({0, -3}, {2, -3})).value;
    CHECK(v2 == Approx(v1).epsilon(0.01));
  }
}

TEST_CASE("quasiconvexity of model arcs", "[checkers]") {
  auto disk = shared_domain("disk");
  CHECK(quasiconvexity(*disk, segment_curve({-0.5, 0}, {0.5, 0}), DistanceMode::euclidean) ==
        Approx(1.0).epsilon(1e-12));

  SECTION("half circle between antipodes") {
    std::vector<Point> pts;
    for (int i = 0; i <= 64; ++i) {
      const double th = M_PI * i / 64.0;
      pts.push_back({0.4 * std::cos(th), 0.4 * std::sin(th)});
    }
    CHECK(quasiconvexity(*disk, Polyline(pts), DistanceMode::euclidean) ==
          Approx(M_PI / 2.0).epsilon(0.01));
  }
  SECTION("slit-crossing pairs have exploding inner distance") {
    const QhGraph& g = shared_graph("slit_disk", 32);
    const double near_ratio = inner_distance(g, {0.5, 0.02}, {0.5, -0.02}) / 0.04;
    const double nearer_ratio = inner_distance(g, {0.5, 0.01}, {0.5, -0.01}) / 0.02;
    CHECK(near_ratio > 10.0);
    CHECK(nearer_ratio > near_ratio);
  }
}

TEST_CASE("uniform constant of model arcs", "[checkers]") {
  auto disk = shared_domain("disk");
  CHECK(uniform_constant(*disk, segment_curve({-0.5, 0}, {0.5, 0})) == Approx(1.0).epsilon(0.01));
}

TEST_CASE("john estimate", "[checkers]") {
  SECTION("unit disk is nearly 1-John") {
    const QhGraph& g = shared_graph("disk", 48);
    const auto rep = john_estimate(g.domain(), g, 40, 7);
    CHECK(rep.direction == Certificate::upper_bound);
    CHECK(rep.value <= 1.2);
    CHECK(rep.value > 0.2);
  }
  SECTION("convex domains stay finite") {
    const QhGraph& g = shared_graph("square", 24);
    const auto rep = john_estimate(g.domain(), g, 30, 7);
    CHECK(std::isfinite(rep.value));
  }
  SECTION("comb teeth degrade the constant monotonically") {
    const QhGraph& c4 = shared_graph("comb", 32, {{"teeth", 4}});
    const QhGraph& c8 = shared_graph("comb", 32, {{"teeth", 8}});
    const double j4 = john_estimate(c4.domain(), c4, 40, 7).value;
    const double j8 = john_estimate(c8.domain(), c8, 40, 7).value;
    CHECK(j8 > j4);
  }
}

TEST_CASE("gehring hayman ratios", "[checkers]") {
  const QhGraph& g = shared_graph("disk", 32);
  const auto rep = gehring_hayman(g.domain(), g, 50, 7);
  CHECK(rep.direction == Certificate::lower_bound);
  CHECK(rep.value >= 1.0 - 0.02);
  CHECK(std::isfinite(rep.value));
}

TEST_CASE("ball separation", "[checkers]") {
  const QhGraph& g = shared_graph("square", 24);
  const auto rep = ball_separation(g.domain(), g, 30, 7);
  CHECK(rep.direction == Certificate::lower_bound);
  CHECK(rep.value >= 0.0);
  CHECK(std::isfinite(rep.value));
}

TEST_CASE("llc constants", "[checkers]") {
  SECTION("convex domains have trivial llc1") {
    const QhGraph& g = shared_graph("square", 24);
    const auto rep = llc_check(g.domain(), g, 8, 3, 7);
    CHECK(rep.c1 <= 1.05);
    CHECK(std::isfinite(rep.c2));
  }
  SECTION("the slit forces large llc1") {
    const QhGraph& g = shared_graph("slit_disk", 32);
    const auto rep = llc_check(g.domain(), g, 24, 4, 7);
    CHECK(rep.c1 >= 5.0);
  }
  SECTION("llc1 grows as the probing radius shrinks") {
    // Pairs across the slit must detour around the tip, so the needed
    // inflation scales like dist(center, tip) / r.
    const QhGraph& g = shared_graph("slit_disk", 32);
    const Point center{0.5, 0.02};
    const Point p{0.5, 0.015}, q{0.5, -0.015};
    const double c_wide = llc1_pair(g, center, 0.08, p, q);
    const double c_mid = llc1_pair(g, center, 0.04, p, q);
    const double c_tight = llc1_pair(g, center, 0.02, p, q);
    CHECK(c_mid > c_wide);
    CHECK(c_tight > c_mid);
    CHECK(c_tight >= 5.0);
  }
}

TEST_CASE("annular quasiconvexity", "[checkers]") {
  SECTION("deep annuli in a large square detour around the hole") {
    const QhGraph& g = shared_graph("square", 32, {{"side", 4.0}});
    const double lam = annular_quasiconvexity(g.domain(), g, 12, 7, 64.0, true);
    CHECK(lam <= 2.2);
    CHECK(lam >= 1.0);
  }
  SECTION("annuli crossing the slit force large detours") {
    const QhGraph& g = shared_graph("slit_disk", 32);
    const double lam = annular_quasiconvexity(g.domain(), g, 20, 7);
    CHECK(lam >= 3.0);
  }
}

TEST_CASE("solid arc shape diagnostic", "[checkers]") {
  auto disk = shared_domain("disk");
  SECTION("radial segment") {
    const auto rep = solid_arc_shape(*disk, segment_curve({0, 0}, {0.9, 0}));
    CHECK(rep.value == Approx(0.9).epsilon(0.02));
  }
  SECTION("single point gives zero") {
    CHECK(solid_arc_shape(*disk, Polyline({{0.2, 0.2}})).value == 0.0);
  }
  SECTION("geodesics in the disk stay bounded") {
    const QhGraph& g = shared_graph("disk", 32);
    Rng rng(67);
    double worst = 0.0;
    for (int t = 0; t < 8; ++t) {
      const Point a = g.nodes()[rng.next_below(g.nodes().size())].p;
      const Point b = g.nodes()[rng.next_below(g.nodes().size())].p;
      if (a == b) continue;
      const Geodesic geo = qh_geodesic(g, a, b);
      if (geo.path.degenerate()) continue;
      worst = std::max(worst, solid_arc_shape(*disk, geo.path).value);
    }
    CHECK(worst < 20.0);
  }
}

TEST_CASE("cone arc estimates on center-routed arcs", "[checkers]") {
  const QhGraph& g = shared_graph("disk", 48);
  const Domain& disk = g.domain();
  Rng rng(71);
  for (int t = 0; t < 6; ++t) {
    const double th1 = rng.next_in(0.0, 2 * M_PI), th2 = rng.next_in(0.0, 2 * M_PI);
    const double r1 = rng.next_in(0.3, 0.85), r2 = rng.next_in(0.3, 0.85);
    const Point x{r1 * std::cos(th1), r1 * std::sin(th1)};
    const Point y{r2 * std::cos(th2), r2 * std::sin(th2)};
    const Polyline arc({x, {0, 0}, y});
    const double a = cone_constant(disk, arc).value;
    const double total = arc.length();

    // Points ordered toward the arclength bisector on the first half.
    for (int i = 0; i < 4; ++i) {
      const double s1 = total * 0.5 * rng.next_double();
      const double s2 = s1 + (total * 0.5 - s1) * rng.next_double();
      if (s2 - s1 < 1e-3) continue;
      const Polyline sub = arc.subarc(s1, s2);
      const double lk = qh_length(disk, sub);
      const Point z1 = arc.at_arclength(s1), z2 = arc.at_arclength(s2);
      const double d1 = disk.boundary_distance(z1);
      // k <= l_k, by way of the closed-form lower bound for k.
      CHECK(std::log1p(dist(z1, z2) / std::min(d1, disk.boundary_distance(z2))) <= lk * 1.01 + 1e-9);
      // l_k <= 2a log(1 + 2 len / d(z1))
      CHECK(lk <= 2.0 * a * std::log1p(2.0 * sub.length() / d1) * 1.01 + 1e-9);
      // l_k <= 4a^2 k + 4a^2 with the graph upper bound for k on the right.
      const double kg = qh_distance(g, z1, z2);
      CHECK(lk <= (4.0 * a * a * kg + 4.0 * a * a) * 1.01 + 1e-9);
    }
  }
}

TEST_CASE("uniform-space distance bound", "[checkers]") {
  const QhGraph& g = shared_graph("disk", 48);
  Rng rng(73);
  // Measured uniform constant over a small geodesic suite.
  double c_star = 1.0;
  for (int t = 0; t < 10; ++t) {
    const Point a = g.nodes()[rng.next_below(g.nodes().size())].p;
    const Point b = g.nodes()[rng.next_below(g.nodes().size())].p;
    if (a == b) continue;
    const Geodesic geo = qh_geodesic(g, a, b);
    if (geo.path.degenerate()) continue;
    c_star = std::max(c_star, uniform_constant(g.domain(), geo.path));
  }
  for (int t = 0; t < 30; ++t) {
    const auto ia = static_cast<std::int32_t>(rng.next_below(g.nodes().size()));
    const auto ib = static_cast<std::int32_t>(rng.next_below(g.nodes().size()));
    if (ia == ib) continue;
    const Point a = g.nodes()[ia].p, b = g.nodes()[ib].p;
    const double k = qh_distance(g, a, b);
    const double bound = 4.0 * c_star * c_star *
                         std::log1p(dist(a, b) / std::min(g.nodes()[ia].d_boundary,
                                                          g.nodes()[ib].d_boundary));
    CHECK(k <= bound * 1.02 + 1e-6);
  }
}
