#include "circmap/koebe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "circmap/parallel.hpp"

namespace circmap {

namespace {

constexpr std::string_view kModule = "koebe_engine";

double curve_separation(const ClosedCurve& a, const ClosedCurve& b) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& z : b.samples()) d = std::min(d, a.distance(z));
  for (const auto& z : a.samples()) d = std::min(d, b.distance(z));
  return d;
}

std::vector<double> residuals(const std::vector<ClosedCurve>& curves) {
  std::vector<double> r;
  for (const auto& c : curves) r.push_back(fit_circle(c.samples()).residual);
  return r;
}

}  // namespace

KoebeState koebe_init(const DomainSpec& domain, double h) {
  KoebeState s;
  s.curves = domain.boundary;
  s.circled.assign(domain.n(), std::nullopt);
  s.h = h > 0.0 ? h : default_resolution(domain.boundary);
  return s;
}

KoebeState koebe_step(const KoebeState& state, const ExteriorOptions& options) {
  const std::size_t n = state.curves.size();
  const std::size_t j = state.k % n;
  const ExteriorMap phi = exterior_map(state.curves[j], options);

  KoebeState next;
  next.k = state.k + 1;
  next.h = state.h;
  next.chain = state.chain;
  next.chain.append(phi.chain);
  next.circled = state.circled;
  next.circled[j] = phi.circle;
  for (std::size_t c = 0; c < n; ++c) {
    if (c == j) {
      next.curves.push_back(ClosedCurve::circle(phi.circle.center, phi.circle.radius, state.curves[c].size()));
    } else if (phi.chain.empty()) {
      next.curves.push_back(state.curves[c]);
    } else {
      const auto& src = state.curves[c];
      std::vector<Complex> z(src.size()), dz(src.size());
      parallel_for(src.size(), [&](std::size_t i) {
        const auto [w, dw] = phi.chain.eval_with_derivative(src[i]);
        z[i] = w;
        dz[i] = src.smooth() ? dw * src.derivatives()[i] : Complex(0.0);
      });
      next.curves.emplace_back(std::move(z), src.smooth() ? std::move(dz) : std::vector<Complex>{});
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (curve_separation(next.curves[a], next.curves[b]) < 2.0 * state.h) {
        throw Error(Errc::CurveCollision, kModule,
                    "curves " + std::to_string(a) + " and " + std::to_string(b) + " came within 2h");
      }
    }
  }
  return next;
}

std::string KoebeReport::residuals_csv() const {
  std::string out = "step";
  if (!residuals.empty()) {
    for (std::size_t c = 0; c < residuals[0].size(); ++c) out += ",component_" + std::to_string(c);
  }
  out += ",max\n";
  char buf[64];
  for (std::size_t s = 0; s < residuals.size(); ++s) {
    out += std::to_string(s);
    double mx = 0.0;
    for (double r : residuals[s]) {
      std::snprintf(buf, sizeof buf, ",%.17g", r);
      out += buf;
      mx = std::max(mx, r);
    }
    std::snprintf(buf, sizeof buf, ",%.17g\n", mx);
    out += buf;
  }
  return out;
}

KoebeResult koebe_run(const DomainSpec& domain, const KoebeOptions& options) {
  if (!(options.tol > 0.0)) throw Error(Errc::InvalidInput, kModule, "tolerance must be positive");
  const std::size_t n = domain.n();
  if (n == 0) throw Error(Errc::InvalidInput, kModule, "domain has no boundary curves");
  const bool certified = options.mode == KoebeMode::Certified;
  if (certified && !options.certificate) {
    throw Error(Errc::InvalidInput, kModule, "certified mode needs a certificate");
  }

  KoebeResult out;
  KoebeState state = koebe_init(domain, options.h);
  auto& report = out.report;
  report.residuals.push_back(residuals(state.curves));

  std::size_t cap = options.max_rounds * n;
  if (certified) {
    const double budget = options.certificate->N_star();
    if (budget < double(cap)) cap = std::size_t(std::max(budget, 0.0));
  }

  std::vector<std::vector<Complex>> track{options.probes};
  auto done = [&] {
    const auto& r = report.residuals.back();
    return state.k >= n && *std::max_element(r.begin(), r.end()) <= options.tol;
  };
  while (!done() && state.k < cap) {
    const std::size_t first = state.chain.size();
    state = koebe_step(state, options.exterior);
    report.residuals.push_back(residuals(state.curves));
    const ConformalChain step_map(
        std::vector<MapAtom>(state.chain.atoms().begin() + std::ptrdiff_t(first), state.chain.atoms().end()));
    std::vector<Complex> img(track.back().size());
    parallel_for(img.size(), [&](std::size_t i) { img[i] = step_map.eval(track.back()[i]); });
    track.push_back(std::move(img));
    if (track.size() > n) {
      const auto& now = track.back();
      const auto& then = track[track.size() - 1 - n];
      double g = 0.0;
      for (std::size_t i = 0; i < now.size(); ++i) g = std::max(g, std::abs(now[i] - then[i]));
      report.gaps.push_back(g);
    }
  }
  report.steps = state.k;

  if (!done()) {
    if (!certified) {
      throw Error(Errc::BudgetExceeded, kModule,
                  "circularity residual above tolerance after " + std::to_string(options.max_rounds) + " rounds");
    }
    report.budget_exhausted = true;
  }
  if (certified) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "a-priori guarantee needs N_star = 10^%.6f steps; stopped after %zu",
                  options.certificate->log10_N_star, state.k);
    report.note = buf;
  }

  out.chain = state.chain;
  out.curves = state.curves;
  for (const auto& c : state.curves) out.circles.circles.push_back(fit_circle(c.samples()).circle);
  return out;
}

double ring_modulus(const Circle& outer, const Circle& inner) {
  const double d = std::abs(outer.center - inner.center);
  const double I = (outer.radius * outer.radius + inner.radius * inner.radius - d * d) /
                   (2.0 * outer.radius * inner.radius);
  return I + std::sqrt(std::max(I * I - 1.0, 0.0));
}

double exterior_ring_modulus(const Circle& a, const Circle& b) {
  const double d = std::abs(a.center - b.center);
  const double I = (d * d - a.radius * a.radius - b.radius * b.radius) / (2.0 * a.radius * b.radius);
  return I + std::sqrt(std::max(I * I - 1.0, 0.0));
}

}  // namespace circmap
