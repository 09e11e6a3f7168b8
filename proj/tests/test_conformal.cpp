#include <cmath>

#include "doctest.h"

#include "circmap/conformal.hpp"

using namespace circmap;

TEST_CASE("chain evaluation") {
  const ConformalChain id;
  CHECK(id.eval({1, 2}) == Complex(1, 2));
  CHECK(id.eval_derivative({1, 2}) == Complex(1));

  const ConformalChain lin({MapAtom::mobius(2, 3, 0, 1)});
  CHECK(std::abs(lin.eval(1.0) - 5.0) < 1e-15);
  CHECK(std::abs(lin.eval_derivative(1.0) - 2.0) < 1e-15);

  const ConformalChain inv({MapAtom::inversion(0, 1)});
  CHECK(std::abs(inv.eval({0, 2}) - Complex(0, -0.5)) < 1e-15);
  CHECK(std::abs(inv.eval_derivative({0, 2}) - 0.25) < 1e-15);
}

TEST_CASE("disk automorphism swaps a point with the origin") {
  const MapAtom a = MapAtom::disk_automorphism({0.3, 0.2});
  CHECK(std::abs(a.eval({0.3, 0.2})) < 1e-15);
  CHECK(std::abs(a.eval(0.0) - Complex(0.3, 0.2)) < 1e-15);
  CHECK(std::abs(std::abs(a.eval(std::polar(1.0, 0.7))) - 1.0) < 1e-14);
}

TEST_CASE("inverse chain undoes the chain") {
  const ConformalChain f({MapAtom::mobius({1, 1}, 2, {0, 1}, 3), MapAtom::inversion({0.5, -1}, 2),
                          MapAtom::affine({1, 1}, {0, 2})});
  const auto g = f.inverse();
  for (Complex z : {Complex(0.4, 0.3), Complex(-2, 5), Complex(7, -1)}) {
    CHECK(std::abs(g.eval(f.eval(z)) - z) < 1e-12);
  }
}

TEST_CASE("laurent coefficients") {
  auto a = laurent_coeffs([](Complex z) { return z; }, 0.0, 2.0, 1);
  CHECK(std::abs(a[0] - 1.0) < 1e-14);
  CHECK(std::abs(a[1]) < 1e-14);
  CHECK(std::abs(a[2]) < 1e-14);
  a = laurent_coeffs([](Complex z) { return 2.0 * z + 3.0 + 5.0 / z; }, 0.0, 2.0, 1);
  CHECK(std::abs(a[0] - 2.0) < 1e-13);
  CHECK(std::abs(a[1] - 3.0) < 1e-13);
  CHECK(std::abs(a[2] - 5.0) < 1e-13);
  a = laurent_coeffs([](Complex z) { return z + 1.0 / z; }, 0.0, 2.0, 1, 64);
  CHECK(std::abs(a[0] - 1.0) <= 1e-12);
  CHECK(std::abs(a[1]) <= 1e-12);
  CHECK(std::abs(a[2] - 1.0) <= 1e-12);
  try {
    laurent_coeffs([](Complex z) { return z * z; }, 0.0, 2.0, 1);
    FAIL("expected UnderResolved");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnderResolved);
  }
}

TEST_CASE("normalization at infinity") {
  auto n = normalize_at_infinity([](Complex z) { return 2.0 * z + 3.0; }, 2.0);
  CHECK(std::abs(n.post_map.eval(3.0)) < 1e-13);
  CHECK(std::abs(n.post_map.eval(5.0) - 1.0) < 1e-13);
  const Circle c = n.transform({3.0, 2.0});
  CHECK(std::abs(c.center) < 1e-13);
  CHECK(c.radius == doctest::Approx(1.0).epsilon(1e-13));

  n = normalize_at_infinity([](Complex z) { return z + 4.0 + 9.0 / z; }, 4.0);
  CHECK(std::abs(n.a_minus1 - 1.0) < 1e-13);
  CHECK(std::abs(n.a0 - 4.0) < 1e-13);
  CHECK(std::abs(n.post_map.eval(10.0) - 6.0) < 1e-13);
}

TEST_CASE("exterior map of a circle is the identity") {
  const auto e = exterior_map(ClosedCurve::circle({1, -2}, 0.5, 128));
  CHECK(std::abs(e.circle.center - Complex(1, -2)) < 1e-12);
  CHECK(e.circle.radius == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(e.chain.eval({4, 4}) - Complex(4, 4)) < 1e-12);
}

TEST_CASE("exterior map of a Joukowski ellipse") {
  const double R = 1.5;
  const auto e = exterior_map(ClosedCurve::ellipse(0, R + 1 / R, R - 1 / R, 256));
  CHECK(std::abs(e.circle.center) < 1e-4);
  CHECK(e.circle.radius == doctest::Approx(R).epsilon(1e-4));
  for (Complex z : {Complex(3, 0.5), Complex(-1, 2.5), Complex(0.5, -4), Complex(-6, -1)}) {
    Complex w = (z + std::sqrt(z * z - 4.0)) / 2.0;
    if (std::abs(w) < 1.0) w = (z - std::sqrt(z * z - 4.0)) / 2.0;
    CHECK(std::abs(e.chain.eval(z) - w) <= 1e-4);
  }
  const auto a = laurent_coeffs([&](Complex z) { return e.chain.eval(z); }, 0.0, 6.0, 4);
  CHECK(std::abs(a[0] - 1.0) <= 1e-8);
  CHECK(std::abs(a[1]) <= 1e-8);
}

TEST_CASE("exterior map of a square converges under refinement") {
  const std::vector<Complex> v{{4, -1}, {6, -1}, {6, 1}, {4, 1}};
  const auto coarse = exterior_map(ClosedCurve::polygon(v, 256));
  const auto fine = exterior_map(ClosedCurve::polygon(v, 1024));
  CHECK(std::abs(coarse.circle.center - 5.0) < 1e-3);
  CHECK(std::abs(coarse.circle.radius - fine.circle.radius) <= 1e-4);
}

TEST_CASE("interior disk maps") {
  SUBCASE("unit circle") {
    const auto m = interior_disk_map(ClosedCurve::circle(0, 1, 128), 0.0);
    CHECK(std::abs(m.chain.eval({0.3, 0.4}) - Complex(0.3, 0.4)) < 1e-10);
  }
  SUBCASE("circle (1, 2)") {
    const auto m = interior_disk_map(ClosedCurve::circle(1, 2, 128), 1.0);
    for (Complex w : {Complex(0), Complex(0.5, 0.1), Complex(-0.2, -0.7)}) {
      CHECK(std::abs(m.chain.eval(w) - (2.0 * w + 1.0)) < 1e-10);
    }
  }
  SUBCASE("ellipse converges under refinement") {
    const auto coarse = interior_disk_map(ClosedCurve::ellipse(0, 1.2, 0.8, 256), 0.0);
    const auto fine = interior_disk_map(ClosedCurve::ellipse(0, 1.2, 0.8, 1024), 0.0);
    const Complex d0 = coarse.chain.eval_derivative(0.0);
    const Complex d1 = fine.chain.eval_derivative(0.0);
    CHECK(std::abs(coarse.chain.eval(0.0)) < 1e-8);
    CHECK(std::abs(d0.imag()) < 1e-6);
    CHECK(d0.real() > 0.0);
    CHECK(std::abs(d0 - d1) <= 1e-4);
    for (const auto& b : coarse.boundary_images) CHECK(std::abs(b.real() * b.real() / 1.44 + b.imag() * b.imag() / 0.64 - 1.0) < 1e-3);
  }
}

TEST_CASE("chain JSON round trip") {
  const auto e = exterior_map(ClosedCurve::ellipse({1, 1}, 1.2, 0.7, 128, 0.3));
  ConformalChain f = e.chain;
  f.append(MapAtom::disk_automorphism({0.1, 0.2}));
  const auto g = ConformalChain::from_json(f.to_json());
  REQUIRE(g.size() == f.size());
  for (Complex z : {Complex(3, 1), Complex(-2, 0.5)}) CHECK(std::abs(g.eval(z) - f.eval(z)) < 1e-12);
  CHECK(g.to_json() == f.to_json());
}
