#include <cmath>
#include <numbers>

#include "doctest.h"

#include "circmap/harmonic.hpp"

using namespace circmap;

namespace {

std::vector<double> circle_data(std::size_t m, double (*f)(double)) {
  std::vector<double> d(m);
  for (std::size_t k = 0; k < m; ++k) d[k] = f(2.0 * std::numbers::pi * double(k) / double(m));
  return d;
}

HarmonicSolution disk_function(HarmonicSolution::Scalar u, double radius = 1.0) {
  return HarmonicSolution(
      std::move(u), [=](Complex z) { return std::abs(z) < radius; },
      [=](Complex z) { return radius - std::abs(z); }, "closed form");
}

BoundedDomain annulus(std::size_t n = 256) {
  return validate_bounded({ClosedCurve::circle(0, 1, n), ClosedCurve::circle(0, 0.5, n)});
}

}  // namespace

TEST_CASE("Poisson integral on the disk") {
  const auto one = circle_data(256, [](double) { return 1.0; });
  CHECK(poisson_disk(one, {0.3, -0.4}) == doctest::Approx(1.0).epsilon(1e-12));
  const auto cosine = circle_data(256, [](double t) { return std::cos(t); });
  CHECK(poisson_disk(cosine, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  const auto step = circle_data(256, [](double t) { return t < std::numbers::pi ? 1.0 : 0.0; });
  CHECK(poisson_disk(step, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(poisson_disk(one, 0.999), Error);
}

TEST_CASE("local harmonic conjugates") {
  const auto re = disk_function([](Complex z) { return z.real(); }, 2.0);
  CHECK(local_conjugate(re, 0.0, 1.0, {0.3, 0.4}) == doctest::Approx(0.4).epsilon(1e-9));
  const auto sq = disk_function([](Complex z) { return (z * z).real(); }, 2.0);
  CHECK(local_conjugate(sq, 0.0, 1.0, {0.3, 0.4}) == doctest::Approx(0.24).epsilon(1e-9));
  const auto lg = disk_function([](Complex z) { return std::log(std::abs(z - 2.0)); }, 1.5);
  const double want = std::arg(Complex(-2, 0.5)) - std::arg(Complex(-2, 0));
  CHECK(local_conjugate(lg, 0.0, 1.0, {0, 0.5}) == doctest::Approx(want).epsilon(1e-9));
  try {
    local_conjugate(re, 0.0, 3.0, 0.5);
    FAIL("expected DiskNotContained");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DiskNotContained);
  }
}

TEST_CASE("gradients") {
  const auto sq = HarmonicSolution::entire([](Complex z) { return (z * z).real(); }, "x^2 - y^2");
  auto g = harmonic_gradient(sq, {1, 1});
  CHECK(g.ux == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(g.uy == doctest::Approx(-2.0).epsilon(1e-9));
  const auto re = HarmonicSolution::entire([](Complex z) { return z.real(); }, "x");
  g = harmonic_gradient(re, {-3, 7});
  CHECK(g.ux == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(g.uy) < 1e-12);
  const auto lg = HarmonicSolution(
      [](Complex z) { return std::log(std::abs(z)); }, [](Complex z) { return std::abs(z) > 0.0; },
      [](Complex z) { return std::abs(z); }, "log|z|");
  g = harmonic_gradient(lg, 2.0);
  CHECK(g.ux == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(g.uy) < 1e-9);
}

TEST_CASE("normal derivatives") {
  const auto lg = HarmonicSolution(
      [](Complex z) { return std::log(std::abs(z)); }, [](Complex z) { return std::abs(z) > 0.0; },
      [](Complex z) { return std::abs(z); }, "log|z|");
  const auto c = ClosedCurve::circle(0, 2, 64);
  for (std::size_t k = 0; k < 64; k += 8) CHECK(normal_derivative(lg, c, k) == doctest::Approx(0.5).epsilon(1e-9));
  const auto cw = c.reversed();
  CHECK(normal_derivative(lg, cw, 5) == doctest::Approx(-0.5).epsilon(1e-9));
  const auto one = HarmonicSolution::entire([](Complex) { return 1.0; }, "1");
  CHECK(std::abs(normal_derivative(one, c, 3)) < 1e-12);
  const auto re = HarmonicSolution::entire([](Complex z) { return z.real(); }, "x");
  // at gamma = i on the counterclockwise unit circle the tangent is -1, so the right normal is i
  CHECK(std::abs(normal_derivative(re, ClosedCurve::circle(0, 1, 64), 16)) < 1e-12);
  CHECK(normal_derivative(re, ClosedCurve::circle(0, 1, 64), 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(normal_derivative(re, ClosedCurve::polygon(std::vector<Complex>{0, 1, {0, 1}}, 30), 0), Error);
}

TEST_CASE("Dirichlet problem on an annulus") {
  const auto d = annulus();
  const DirichletSolver solver(d);
  SUBCASE("constants") {
    const auto u = solver.solve(BoundaryData::constant(d, 2.5));
    for (double r : {0.55, 0.7, 0.9}) CHECK(u(std::polar(r, 1.0)) == doctest::Approx(2.5).epsilon(1e-7));
  }
  SUBCASE("logarithm") {
    const auto u = solver.solve(BoundaryData::sampled(d, [](Complex z) { return std::log(std::abs(z)); }));
    double err = 0.0, lo = 1.0, hi = -1.0;
    for (int k = 0; k < 50; ++k) {
      const Complex z = std::polar(0.52 + 0.46 * double(k % 10) / 9.0, 0.37 * k);
      err = std::max(err, std::abs(u(z) - std::log(std::abs(z))));
      lo = std::min(lo, u(z));
      hi = std::max(hi, u(z));
    }
    CHECK(err <= 1e-4);
    CHECK(lo >= std::log(0.5) - 1e-9);
    CHECK(hi <= 1e-9);
  }
  SUBCASE("measures, periods and energy") {
    const auto w = harmonic_measures(solver);
    REQUIRE(w.size() == 2);
    const std::size_t inner = d.source[0] == 1 ? 0 : 1;
    const double r = std::sqrt(0.5);
    CHECK(w[inner](r) == doctest::Approx(0.5).epsilon(1e-4));
    for (int k = 0; k < 20; ++k) {
      const Complex z = std::polar(0.6 + 0.015 * k, 0.9 * k);
      CHECK(std::abs(w[0](z) + w[1](z) - 1.0) <= 1e-6);
    }
    const auto P = riemann_matrix(solver, w);
    const double exact = 2.0 * std::numbers::pi / std::log(2.0);
    CHECK(P[inner][inner] == doctest::Approx(exact).epsilon(1e-4));
    CHECK(P[0][1] == doctest::Approx(-exact).epsilon(1e-4));
    const double D = dirichlet_integral(w[inner], d);
    CHECK(D == doctest::Approx(exact).epsilon(1e-3));
    CHECK(std::exp(2.0 * std::numbers::pi / D) == doctest::Approx(2.0).epsilon(1e-3));
  }
}

TEST_CASE("simply connected measures are constant") {
  const auto d = validate_bounded({ClosedCurve::ellipse(0, 1.2, 0.8, 128)});
  const auto w = harmonic_measure(d, 0);
  CHECK(w({0.3, 0.2}) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Dirichlet integral of a linear function") {
  const auto d = validate_bounded({ClosedCurve::circle(0, 1, 256)});
  const auto u = HarmonicSolution(
      [](Complex z) { return z.real(); }, [&](Complex z) { return d.contains(z); },
      [&](Complex z) { return d.clearance(z); }, "x");
  CHECK(dirichlet_integral(u, d, 1e-3) == doctest::Approx(std::numbers::pi).epsilon(1e-3));
  const auto c = HarmonicSolution(
      [](Complex) { return 4.0; }, [&](Complex z) { return d.contains(z); },
      [&](Complex z) { return d.clearance(z); }, "4");
  CHECK(std::abs(dirichlet_integral(c, d)) < 1e-12);
}

TEST_CASE("odd reflection across a circle") {
  const auto u = HarmonicSolution(
      [](Complex z) { return std::log(std::abs(z)); },
      [](Complex z) { return std::abs(z) > 1.0 && std::abs(z) < 2.0; },
      [](Complex z) { return std::min(std::abs(z) - 1.0, 2.0 - std::abs(z)); }, "log|z|");
  const ReflectionPatch patch{ConformalChain{}, ConformalChain{}, 0.2};
  const auto v = reflect_extension(u, {patch});
  for (double r : {0.85, 0.95, 1.3, 1.8}) {
    CHECK(v(std::polar(r, 0.4)) == doctest::Approx(std::log(r)).epsilon(1e-12));
  }
  const auto zero = HarmonicSolution(
      [](Complex) { return 0.0; }, [](Complex z) { return std::abs(z) > 1.0 && std::abs(z) < 2.0; },
      [](Complex z) { return std::min(std::abs(z) - 1.0, 2.0 - std::abs(z)); }, "0");
  CHECK(reflect_extension(zero, {patch})(0.9) == 0.0);
}

TEST_CASE("boundary data JSON round trip") {
  const auto d = annulus(32);
  const auto b = BoundaryData::sampled(d, [](Complex z) { return z.real(); });
  const auto back = BoundaryData::from_json(b.to_json(), d);
  REQUIRE(back.values.size() == 2);
  CHECK(back.values[1] == b.values[1]);
}

TEST_CASE("grid export") {
  const auto u = HarmonicSolution::entire([](Complex z) { return z.real(); }, "x");
  const auto csv = export_grid_csv(u, {0, 0}, {1, 1}, 2, 2);
  CHECK(csv.rfind("x,y,u\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}
