#include <cmath>
#include <numbers>

#include "doctest.h"

#include "circmap/geometry.hpp"
#include "circmap/verify.hpp"

using namespace circmap;

TEST_CASE("circle samples and measures") {
  const auto c = ClosedCurve::circle({1, 2}, 3.0, 256);
  CHECK(c.size() == 256);
  CHECK(c.smooth());
  CHECK(c.signed_area() > 0.0);
  CHECK(c.perimeter() == doctest::Approx(6.0 * std::numbers::pi).epsilon(1e-3));
  CHECK(std::abs(c.centroid() - Complex(1, 2)) < 1e-12);
  CHECK(c.distance({1, 2}) == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(c.reversed().signed_area() < 0.0);
  CHECK(c.reversed()[0] == c[0]);
}

TEST_CASE("curve construction rejects bad samples") {
  CHECK_THROWS_AS(ClosedCurve(std::vector<Complex>(5, Complex(0))), Error);
  std::vector<Complex> pts;
  for (int k = 0; k < 20; ++k) pts.push_back(std::polar(1.0, 0.3 * k));
  pts[3] = pts[2];
  try {
    ClosedCurve c(pts);
    FAIL("expected InvalidCurve");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidCurve);
  }
}

TEST_CASE("resampling a smooth curve is spectrally accurate") {
  const auto e = ClosedCurve::ellipse(0, 1.3, 0.7, 64);
  const auto r = e.resampled(256);
  const auto ref = ClosedCurve::ellipse(0, 1.3, 0.7, 256);
  double err = 0.0;
  for (std::size_t k = 0; k < 256; ++k) err = std::max(err, std::abs(r[k] - ref[k]));
  CHECK(err < 1e-12);
}

TEST_CASE("winding numbers and location") {
  const auto c = ClosedCurve::circle(0, 1, 128);
  CHECK(winding_number(c, 0.0) == 1);
  CHECK(winding_number(c, 2.0) == 0);
  CHECK(winding_number(c.reversed(), 0.0) == -1);
  try {
    winding_number(c, 1.0);
    FAIL("expected PointOnCurve");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PointOnCurve);
  }
  const auto d = validate_nesting({ClosedCurve::circle(0, 1, 128), ClosedCurve::circle(4, 1, 128)});
  CHECK(std::holds_alternative<InDomain>(locate(d, {2, 0})));
  const auto loc = locate(d, {4, 0.5});
  REQUIRE(std::holds_alternative<InHole>(loc));
  CHECK(std::get<InHole>(loc).index == 1);
}

TEST_CASE("nesting validation") {
  SUBCASE("holes are oriented counterclockwise") {
    const auto d = validate_nesting({ClosedCurve::circle(0, 1, 64, false), ClosedCurve::circle(5, 1, 64)});
    for (const auto& c : d.boundary) CHECK(c.signed_area() > 0.0);
  }
  SUBCASE("nested curves") {
    try {
      validate_nesting({ClosedCurve::circle(0, 2, 64), ClosedCurve::circle(0, 1, 64)});
      FAIL("expected NestedCurves");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NestedCurves);
    }
  }
  SUBCASE("intersecting curves") {
    try {
      validate_nesting({ClosedCurve::circle(0, 1, 64), ClosedCurve::circle(1.5, 1, 64)});
      FAIL("expected IntersectingCurves");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::IntersectingCurves);
    }
  }
  SUBCASE("zero in the domain") {
    try {
      validate_nesting({ClosedCurve::circle(3, 1, 64), ClosedCurve::circle(-3, 1, 64)});
      FAIL("expected ZeroInDomain");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ZeroInDomain);
    }
    CHECK_NOTHROW(validate_nesting({ClosedCurve::circle(3, 1, 64)}, {.require_zero_in_hole = false}));
  }
}

TEST_CASE("bounded domains keep the domain on the right") {
  const auto d = validate_bounded({ClosedCurve::circle(0, 0.5, 64), ClosedCurve::circle(0, 1, 64)});
  REQUIRE(d.n() == 2);
  CHECK(d.boundary[0].signed_area() < 0.0);
  CHECK(d.boundary[1].signed_area() > 0.0);
  CHECK(d.source[0] == 1);
  CHECK(d.source[1] == 0);
  CHECK(d.contains({0.75, 0}));
  CHECK_FALSE(d.contains({0.2, 0}));
  CHECK(d.clearance({0.75, 0}) == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("inversion sends a hole to the outer curve") {
  const DomainSpec d = validate_nesting({ClosedCurve::circle(0, 1, 128), ClosedCurve::circle(4, 1, 128)});
  const auto b = invert(d, 0.0);
  CHECK(b.n() == 2);
  CHECK(b.source[0] == 0);
  CHECK(b.contains({1e-3, 0}));
  CHECK(b.contains({0.5, 0}));
  CHECK_FALSE(b.contains({0.25, 0}));
}

TEST_CASE("cut arcs are disjoint and stay inside the domain") {
  const auto d = validate_bounded({ClosedCurve::circle(0, 4, 256), ClosedCurve::circle({-1.5, 0}, 0.8, 128),
                                   ClosedCurve::circle({1.5, 0.3}, 0.8, 128)});
  const auto arcs = cut_arcs(d);
  REQUIRE(arcs.sigma.size() == 2);
  REQUIRE(arcs.tau.size() == 2);
  CHECK(arcs.order.front() == 0);
  std::vector<Polyline> all = arcs.sigma;
  all.insert(all.end(), arcs.tau.begin(), arcs.tau.end());
  for (const auto& a : all) {
    for (std::size_t i = 1; i + 1 < a.size(); ++i) CHECK(d.contains(a[i]));
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      double sep = 1e300;
      for (std::size_t k = 0; k + 1 < all[j].size(); ++k) {
        for (int s = 0; s <= 20; ++s) {
          sep = std::min(sep, polyline_distance(all[i], all[j][k] + (all[j][k + 1] - all[j][k]) * (s / 20.0)));
        }
      }
      CHECK(sep > 0.0);
    }
  }
}

TEST_CASE("circle fits") {
  SUBCASE("exact circle") {
    const auto c = ClosedCurve::circle({2, -1}, 0.7, 200);
    const auto f = circularity_residual(c);
    CHECK(f.residual <= 1e-12);
    CHECK(std::abs(f.circle.center - Complex(2, -1)) < 1e-12);
    CHECK(f.circle.radius == doctest::Approx(0.7).epsilon(1e-12));
  }
  SUBCASE("ellipse 1.1 by 0.9") {
    const auto f = circularity_residual(ClosedCurve::ellipse(0, 1.1, 0.9, 256));
    CHECK(f.residual == doctest::Approx(0.1).epsilon(0.1));
  }
  SUBCASE("square of side 2") {
    const std::vector<Complex> v{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    const auto f = circularity_residual(ClosedCurve::polygon(v, 256));
    CHECK(f.circle.radius > 1.0);
    CHECK(f.circle.radius < std::sqrt(2.0));
    const double r = f.circle.radius;
    CHECK(f.residual == doctest::Approx(std::max(std::sqrt(2.0) - r, r - 1.0) / r).epsilon(1e-6));
  }
  SUBCASE("collinear points") {
    std::vector<Complex> pts;
    for (int k = 0; k < 10; ++k) pts.push_back(Complex(k, 2 * k));
    try {
      fit_circle(pts);
      FAIL("expected DegenerateFit");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::DegenerateFit);
    }
  }
}

TEST_CASE("hausdorff distances") {
  const auto a = ClosedCurve::circle(0, 1, 256);
  const auto b = ClosedCurve::circle(0, 1.1, 256);
  CHECK(hausdorff_distance(a, b) == doctest::Approx(0.1).epsilon(1e-3));
  CHECK_THROWS_AS(hausdorff_distance(std::span<const Complex>{}, a.samples()), Error);
}

TEST_CASE("inscribed disk of a circle") {
  const auto [c, r] = inscribed_disk(ClosedCurve::circle({1, 1}, 2, 256));
  CHECK(std::abs(c - Complex(1, 1)) < 0.05);
  CHECK(r == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("curve JSON round trip") {
  const std::vector<ClosedCurve> curves{ClosedCurve::circle(0, 1, 32), ClosedCurve::ellipse(3, 1, 0.5, 40)};
  const auto back = curves_from_json(curves_to_json(curves));
  REQUIRE(back.size() == 2);
  CHECK(back[1].size() == 40);
  CHECK(back[1][7] == curves[1][7]);
  CHECK(back[0].smooth());
  try {
    curves_from_json("{\"shapes\": []}");
    FAIL("expected InvalidInput");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidInput);
    CHECK(std::string(e.what()).find("curves: field required") != std::string::npos);
  }
}
