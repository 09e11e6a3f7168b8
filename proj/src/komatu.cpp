#include <algorithm>
#include <cmath>
#include <numbers>

#include "circmap/koebe.hpp"
#include "circmap/parallel.hpp"
#include "circmap/verify.hpp"

namespace circmap {

namespace {

constexpr std::string_view kModule = "koebe_engine";

ClosedCurve map_curve(const ClosedCurve& curve, const ConformalChain& f) {
  if (f.empty()) return curve;
  std::vector<Complex> z(curve.size()), dz(curve.size());
  parallel_for(curve.size(), [&](std::size_t i) {
    const auto [w, dw] = f.eval_with_derivative(curve[i]);
    z[i] = w;
    if (curve.smooth()) dz[i] = dw * curve.derivatives()[i];
  });
  return ClosedCurve(std::move(z), curve.smooth() ? std::move(dz) : std::vector<Complex>{});
}

void map_points(std::vector<Complex>& pts, const ConformalChain& f) {
  parallel_for(pts.size(), [&](std::size_t i) { pts[i] = f.eval(pts[i]); });
}

Circle invert_circle(const Circle& c, Complex z0) {
  const Complex d = c.center - z0;
  const double den = std::norm(d) - c.radius * c.radius;
  return {std::conj(d) / den, c.radius / std::abs(den)};
}

}  // namespace

KomatuResult komatu_2connected(const DomainSpec& domain, const KomatuOptions& options) {
  if (domain.n() != 2) throw Error(Errc::InvalidInput, kModule, "Komatu construction needs two boundary curves");
  if (!(options.tol > 0.0)) throw Error(Errc::InvalidInput, kModule, "tolerance must be positive");
  KomatuResult out;
  auto& report = out.report;

  // bounded ring: outer curve the unit circle, 0 inside the inner hole
  const ExteriorMap phi = exterior_map(domain.boundary[1], options.exterior);
  ConformalChain ring = phi.chain;
  ring.append(MapAtom::inversion(phi.circle.center, phi.circle.radius));
  const ClosedCurve j0 = map_curve(domain.boundary[0], ring);
  const Complex a = inscribed_disk(j0).first;
  const MapAtom alpha = MapAtom::disk_automorphism(a);
  ring.append(alpha);
  const std::size_t samples = domain.boundary[0].size();
  ClosedCurve inner = map_curve(j0, ConformalChain({alpha}));
  ClosedCurve outer = ClosedCurve::circle(0.0, 1.0, std::max(samples, domain.boundary[1].size()));

  const BoundedDomain bounded = validate_bounded({outer, inner});
  const DirichletSolver solver(bounded, options.dirichlet);
  const auto omega = solver.solve(BoundaryData::indicator(bounded, bounded.source[0] == 1 ? 0 : 1));
  report.dirichlet = dirichlet_integral(omega, bounded);
  if (!(report.dirichlet > 0.0) || !std::isfinite(report.dirichlet)) {
    throw Error(Errc::ModulusBoundFailed, kModule, "Dirichlet integral quadrature did not give a positive bound");
  }
  report.N = report.dirichlet * (1.0 + options.margin);
  report.q = std::exp(-2.0 * std::numbers::pi / report.N);
  report.k_star = std::size_t(std::max(1.0, std::ceil(std::log(options.tol / 13.0) / (2.0 * std::log(report.q)))));

  std::vector<Complex> probes = options.probes.empty() ? probe_points(domain, 100) : options.probes;
  map_points(probes, ring);
  Complex far = a;  // image of infinity
  ConformalChain iteration;
  for (std::size_t k = 0; k < report.k_star; ++k) {
    const ExteriorMap e = exterior_map(inner, options.exterior);
    ConformalChain h1 = e.chain;
    h1.append(MapAtom::affine(e.circle.center, e.circle.radius));
    outer = map_curve(outer, h1);
    inner = ClosedCurve::circle(0.0, 1.0, inner.size());

    const InteriorMap im = interior_disk_map(outer, 0.0, options.exterior);
    const ConformalChain h2 = im.chain.inverse();
    inner = map_curve(inner, h2);
    outer = ClosedCurve::circle(0.0, 1.0, outer.size());

    ConformalChain step = h1;
    step.append(h2);
    std::vector<Complex> next = probes;
    map_points(next, step);
    double gap = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) gap = std::max(gap, std::abs(next[i] - probes[i]));
    report.gaps.push_back(gap);
    probes = std::move(next);
    far = step.eval(far);
    iteration.append(step);
  }

  const Circle inner_circle = fit_circle(inner.samples()).circle;
  const Circle unit{0.0, 1.0};
  report.modulus = ring_modulus(unit, inner_circle);

  ConformalChain chain = ring;
  chain.append(iteration);
  chain.append(MapAtom::inversion(far, 1.0));
  double probe = 0.0;
  for (const auto& c : domain.boundary) probe = std::max(probe, c.max_radius(0.0));
  const auto norm = normalize_at_infinity([&](Complex z) { return chain.eval(z); }, 2.0 * probe);
  chain.append(norm.post_map);

  out.chain = std::move(chain);
  out.circles.circles = {norm.transform(invert_circle(inner_circle, far)), norm.transform(invert_circle(unit, far))};
  return out;
}

}  // namespace circmap
