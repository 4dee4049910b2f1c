#include <catch2/catch.hpp>

#include "test_helpers.hpp"

using namespace qtest;

TEST_CASE("boundary distance on the polygonal disk", "[geometry]") {
  auto disk = shared_domain("disk", {{"vertices", 256}});
  const double apothem = disk_apothem(256);

  SECTION("center sits one apothem from the 256-gon") {
    const double d = disk->boundary_distance({0.0, 0.0});
    CHECK(d == Approx(apothem).epsilon(1e-12));
    CHECK(std::abs(d - 1.0) <= 8e-4);
  }
  SECTION("a boundary vertex is not interior") {
    CHECK_THROWS_AS(disk->boundary_distance({1.0, 0.0}), error);
    try {
      disk->boundary_distance({1.0, 0.0});
    } catch (const error& e) {
      CHECK(e.code() == errc::point_outside_domain);
    }
  }
}

TEST_CASE("boundary distance on the unit square", "[geometry]") {
  auto sq = shared_domain("square");
  CHECK(sq->boundary_distance({0.5, 0.25}) == Approx(0.25).epsilon(1e-12));
  CHECK_FALSE(sq->contains({1.2, 0.5}));
  CHECK_FALSE(sq->contains({0.5, 0.0}));
}

TEST_CASE("boundary distance is 1-Lipschitz", "[geometry]") {
  auto dom = shared_domain("l_shape");
  Rng rng(11);
  std::vector<Point> pts;
  while (pts.size() < 60) {
    const Point p{rng.next_in(0.0, 1.0), rng.next_in(0.0, 1.0)};
    if (dom->contains(p)) pts.push_back(p);
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double lhs = std::abs(dom->boundary_distance(pts[i]) - dom->boundary_distance(pts[j]));
      CHECK(lhs <= dist(pts[i], pts[j]) + 1e-12);
    }
}

TEST_CASE("curve length basics", "[geometry]") {
  CHECK(curve_length(Polyline({{0, 0}, {3, 4}})) == Approx(5.0));
  CHECK(curve_length(Polyline({{0, 0}})) == 0.0);
  CHECK(curve_length(Polyline({{0, 0}, {1, 0}, {1, 1}})) == Approx(2.0));

  SECTION("additive under concatenation, invariant under reversal") {
    const Polyline a({{0, 0}, {0.5, 0.2}, {1, 0}});
    const Polyline b({{1, 0}, {1.5, -0.3}});
    CHECK(curve_length(concatenate(a, b)) == Approx(a.length() + b.length()));
    CHECK(a.reversed().length() == Approx(a.length()));
  }
  SECTION("arclength parametrization walks the curve") {
    const Polyline c({{0, 0}, {1, 0}, {1, 1}});
    const Point mid = c.at_arclength(1.0);
    CHECK(mid.x == Approx(1.0));
    CHECK(mid.y == Approx(0.0).margin(1e-12));
    const Point q = c.at_arclength(1.5);
    CHECK(q.x == Approx(1.0));
    CHECK(q.y == Approx(0.5));
    CHECK(c.subarc(0.5, 1.5).length() == Approx(1.0));
  }
}

TEST_CASE("line integral of simple densities", "[geometry]") {
  auto sq = shared_domain("square");
  const Polyline c({{0.2, 0.3}, {0.6, 0.3}, {0.6, 0.7}});

  CHECK(line_integral(*sq, c, [](Point) { return 1.0; }) == Approx(c.length()).epsilon(1e-10));
  CHECK(line_integral(*sq, c, [](Point) { return 0.0; }) == Approx(0.0).margin(1e-12));

  SECTION("non-finite density is rejected") {
    CHECK_THROWS_AS(line_integral(*sq, c,
                                  [](Point p) {
                                    return p.x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
                                  }),
                    error);
  }
  SECTION("additive under concatenation, monotone in the density") {
    const Polyline a({{0.2, 0.3}, {0.6, 0.3}});
    const Polyline b({{0.6, 0.3}, {0.6, 0.7}});
    const Density rho = [](Point p) { return 1.0 + p.x * p.y; };
    const double whole = line_integral(*sq, c, rho);
    CHECK(whole == Approx(line_integral(*sq, a, rho) + line_integral(*sq, b, rho)).epsilon(1e-8));
    const Density rho2 = [](Point p) { return 1.5 + p.x * p.y; };
    CHECK(line_integral(*sq, c, rho2) >= whole - 1e-10);
  }
}

TEST_CASE("radial quasihyperbolic length in the disk", "[geometry]") {
  auto disk = shared_domain("disk");  // 512-gon
  const Polyline radial({{0, 0}, {0.9, 0}});
  const double got = qh_length(*disk, radial);
  // Exact for the polygon: d_D(t) = cos(pi/n) (1 - t) along a radius toward a
  // vertex, so the integral is ln(10)/cos(pi/n).
  const double expect = std::log(10.0) / disk_apothem();
  CHECK(got == Approx(expect).margin(1e-6));
  CHECK(std::abs(got - std::log(10.0)) <= 5e-5);  // polygonal error is O(1/n^2)

  CHECK(qh_length(*disk, Polyline({{0.1, 0.1}})) == 0.0);
}

TEST_CASE("similarity equivariance of lengths and qh integrals", "[geometry]") {
  auto unit = shared_domain("l_shape");
  const Polyline c({{0.2, 0.3}, {0.6, 0.3}, {0.2, 0.7}});
  const double s = 3.5;
  std::vector<Point> outer2;
  for (Point p : unit->outer()) outer2.push_back({s * p.x + 2.0, s * p.y - 1.0});
  const Domain scaled("l_scaled", outer2);
  std::vector<Point> cpts;
  for (Point p : c.points()) cpts.push_back({s * p.x + 2.0, s * p.y - 1.0});
  const Polyline c2(cpts);

  CHECK(c2.length() == Approx(s * c.length()).epsilon(1e-12));
  CHECK(qh_length(scaled, c2) == Approx(qh_length(*unit, c)).epsilon(1e-7));
}

TEST_CASE("line integral matches (li-2) style lower bound", "[geometry]") {
  auto disk = shared_domain("disk");
  Rng rng(5);
  for (int t = 0; t < 12; ++t) {
    std::vector<Point> pts;
    Point p{rng.next_in(-0.5, 0.5), rng.next_in(-0.5, 0.5)};
    pts.push_back(p);
    for (int i = 0; i < 3; ++i) {
      const Point q{rng.next_in(-0.6, 0.6), rng.next_in(-0.6, 0.6)};
      if (disk->segment_inside(pts.back(), q)) pts.push_back(q);
    }
    if (pts.size() < 2) continue;
    const Polyline c(pts);
    const double lk = qh_length(*disk, c);
    const double dmin = std::min(disk->boundary_distance(c.front()), disk->boundary_distance(c.back()));
    CHECK(lk >= std::log1p(c.length() / dmin) - 1e-6);
  }
}

TEST_CASE("domain json round trip and slit containment", "[geometry]") {
  auto slit = shared_domain("slit_disk", {{"vertices", 128}});
  const auto j = slit->to_json();
  const Domain back = Domain::from_json(j);
  CHECK(back.hash() == slit->hash());
  CHECK(back.name() == slit->name());

  // Points on the slit are non-interior; segments across it are rejected.
  CHECK_FALSE(slit->contains({0.5, 0.0}));
  CHECK(slit->contains({0.5, 0.1}));
  CHECK_FALSE(slit->segment_inside({0.5, 0.1}, {0.5, -0.1}));
  CHECK(slit->segment_inside({0.97, 0.05}, {0.97, -0.05}));

  SECTION("bad domains are rejected") {
    CHECK_THROWS_AS(Domain("bowtie", {{0, 0}, {1, 1}, {1, 0}, {0, 1}}), error);
    CHECK_THROWS_AS(Domain("line", {{0, 0}, {1, 0}}), error);
  }
}

TEST_CASE("polyline containment verification", "[geometry]") {
  auto slit = shared_domain("slit_disk", {{"vertices", 128}});
  CHECK_THROWS_AS(require_inside(*slit, Polyline({{0.5, 0.1}, {0.5, -0.1}})), error);
  CHECK_NOTHROW(require_inside(*slit, Polyline({{0.5, 0.1}, {0.2, 0.4}})));
}
