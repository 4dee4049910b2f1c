#include <catch2/catch.hpp>

#include "test_helpers.hpp"

using namespace qtest;

TEST_CASE("deformation density basics", "[uniformization]") {
  const QhGraph& g = shared_graph("square", 24);
  const Point w = g.nodes()[max_depth_node(g)].p;
  const DeformedSpace ds = deform(g, w, 0.2);

  SECTION("rho is 1 at the base point and below 1 elsewhere") {
    CHECK(ds.rho_at(ds.w_node()) == 1.0);
    const std::int32_t far = g.nearest_node({0.05, 0.05});
    CHECK(ds.rho_at(far) < 1.0);
  }
  SECTION("every deformed edge weight is at most its k weight") {
    const auto eps_w = ds.edge_weights_eps();
    for (std::size_t i = 0; i < g.edges().size(); ++i) CHECK(eps_w[i] <= g.edges()[i].w_qh + 1e-15);
  }
  SECTION("deformed boundary distance is positive everywhere") {
    for (double b : ds.boundary_distance_eps()) CHECK(b > 0.0);
  }
  SECTION("epsilon range is enforced") {
    CHECK_THROWS_AS(deform(g, w, 0.0), error);
    CHECK_THROWS_AS(deform(g, w, 1.5), error);
    CHECK_THROWS_AS(deform(g, w, -0.2), error);
  }
}

TEST_CASE("deformed distances", "[uniformization]") {
  const QhGraph& g = shared_graph("square", 24);
  const Point w = g.nodes()[max_depth_node(g)].p;
  const DeformedSpace ds = deform(g, w, 0.5);
  Rng rng(59);
  const std::size_t n = g.nodes().size();

  SECTION("identical points, symmetry, domination by k") {
    CHECK(deformed_distance(ds, {0.3, 0.3}, {0.3, 0.3}) == 0.0);
    for (int t = 0; t < 8; ++t) {
      const Point a = g.nodes()[rng.next_below(n)].p;
      const Point b = g.nodes()[rng.next_below(n)].p;
      const double d1 = deformed_distance(ds, a, b);
      CHECK(d1 == deformed_distance(ds, b, a));
      CHECK(d1 <= qh_distance(g, a, b) + 1e-12);
    }
  }
  SECTION("sampled diameter respects 2/eps") {
    const BandReport rep = band_report(ds, 60, 7);
    CHECK(rep.diam_eps <= (2.0 / 0.5) * 1.05);
  }
}

TEST_CASE("band report on the square", "[uniformization]") {
  const QhGraph& g = shared_graph("square", 32);
  const Point w = g.nodes()[max_depth_node(g)].p;
  const DeformedSpace ds = deform(g, w, 0.2);
  const BandReport rep = band_report(ds, 80, 7);
  CHECK(rep.upper_violations == 0);
  CHECK(rep.c0_empirical > 0.0);
  CHECK(rep.M_empirical >= 1.0);
  CHECK(rep.pairs_tested >= 80);
}

TEST_CASE("deformed space of the slit disk stays uniform", "[uniformization]") {
  const QhGraph& g = shared_graph("slit_disk", 24);
  const Point w = g.nodes()[max_depth_node(g)].p;
  const DeformedSpace ds = deform(g, w, 0.2);
  const double uc = uniformity_of_deformation(ds, 40, 7);
  CHECK(uc >= 1.0);
  CHECK(std::isfinite(uc));
}

TEST_CASE("images of geodesics are solid in the deformed space", "[uniformization]") {
  const QhGraph& g = shared_graph("square", 24);
  const Point w = g.nodes()[max_depth_node(g)].p;
  const DeformedSpace ds = deform(g, w, 0.2);
  const BandReport band = band_report(ds, 60, 7);
  const double M = band.M_empirical;
  Rng rng(61);
  const std::size_t n = g.nodes().size();
  for (int t = 0; t < 4; ++t) {
    const Point a = g.nodes()[rng.next_below(n)].p;
    const Point b = g.nodes()[rng.next_below(n)].p;
    if (a == b) continue;
    const Geodesic geo = qh_geodesic(g, a, b);
    if (geo.path.degenerate()) continue;
    // Base geodesics are (1, mu)-quasigeodesics with small graph tolerance;
    // their images should be (nu, h)-solid with nu <= M^2 (1 + mu), h <= M(1 + mu).
    const double mu = 0.05;
    const SolidnessReport rep = solidness_deformed(ds, geo.path, M * (1.0 + mu));
    CHECK(rep.nu <= M * M * (1.0 + mu) * 1.15 + 0.1);
  }
}
