#include "circmap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "circmap/parallel.hpp"

namespace circmap {

namespace {

constexpr std::string_view kModule = "verify";
constexpr double kInf = std::numeric_limits<double>::infinity();

double radical_inverse(std::size_t i, std::size_t base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= double(base);
    r += f * double(i % base);
    i /= base;
  }
  return r;
}

double boundary_distance(std::span<const ClosedCurve> curves, Complex z) {
  double d = kInf;
  for (const auto& c : curves) d = std::min(d, c.distance(z));
  return d;
}

template <class ImageDistance>
QuarterReport quarter(const ConformalChain& f, std::span<const ClosedCurve> boundary,
                      std::span<const Complex> probes, double slack, ImageDistance image_distance) {
  QuarterReport r;
  r.probes = probes.size();
  r.lower_margin = kInf;
  r.upper_margin = kInf;
  std::vector<double> lower(probes.size()), upper(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) {
    const Complex z = probes[i];
    const auto [w, dw] = f.eval_with_derivative(z);
    const double d = boundary_distance(boundary, z);
    const double dimg = image_distance(w);
    const double scale = std::abs(dw) * d;
    lower[i] = dimg / (0.25 * scale);
    upper[i] = 4.0 * scale / dimg;
  });
  for (std::size_t i = 0; i < probes.size(); ++i) {
    r.lower_margin = std::min(r.lower_margin, lower[i]);
    r.upper_margin = std::min(r.upper_margin, upper[i]);
  }
  const double need = 1.0 / (1.0 + slack);
  r.pass = probes.empty() || (r.lower_margin >= need && r.upper_margin >= need);
  return r;
}

}  // namespace

CircleFit circularity_residual(const ClosedCurve& curve) { return fit_circle(curve.samples()); }

ResidualReport circularity_report(std::span<const ClosedCurve> curves) {
  ResidualReport r;
  for (const auto& c : curves) {
    r.components.push_back(circularity_residual(c));
    r.global = std::max(r.global, r.components.back().residual);
  }
  return r;
}

std::string ResidualReport::to_json() const {
  std::string out = "{\"components\":[";
  char buf[256];
  for (std::size_t j = 0; j < components.size(); ++j) {
    const auto& c = components[j];
    std::snprintf(buf, sizeof buf, "%s{\"center\":[%.17g,%.17g],\"radius\":%.17g,\"max_deviation\":%.17g,\"residual\":%.17g}",
                  j ? "," : "", c.circle.center.real(), c.circle.center.imag(), c.circle.radius, c.max_deviation,
                  c.residual);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "],\"global\":%.17g}", global);
  return out + buf;
}

std::string ResidualReport::to_text() const {
  std::string out;
  char buf[256];
  for (std::size_t j = 0; j < components.size(); ++j) {
    const auto& c = components[j];
    std::snprintf(buf, sizeof buf, "component %zu: center (%.17g, %.17g) radius %.17g residual %.17g\n", j,
                  c.circle.center.real(), c.circle.center.imag(), c.circle.radius, c.residual);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "global residual %.17g\n", global);
  return out + buf;
}

QuarterReport quarter_theorem_check(const ConformalChain& f, std::span<const ClosedCurve> boundary,
                                    const CircularDomain& image, std::span<const Complex> probes, double slack) {
  return quarter(f, boundary, probes, slack, [&](Complex w) {
    double d = kInf;
    for (const auto& c : image.circles) d = std::min(d, std::abs(std::abs(w - c.center) - c.radius));
    return d;
  });
}

QuarterReport quarter_theorem_check(const ConformalChain& f, std::span<const ClosedCurve> boundary,
                                    std::span<const ClosedCurve> image, std::span<const Complex> probes,
                                    double slack) {
  return quarter(f, boundary, probes, slack, [&](Complex w) { return boundary_distance(image, w); });
}

std::vector<Complex> probe_points(const DomainSpec& domain, std::size_t count, double min_clearance) {
  double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
  for (const auto& c : domain.boundary) {
    for (const auto& z : c.samples()) {
      xmin = std::min(xmin, z.real());
      xmax = std::max(xmax, z.real());
      ymin = std::min(ymin, z.imag());
      ymax = std::max(ymax, z.imag());
    }
  }
  const double pad = 0.25 * std::max(xmax - xmin, ymax - ymin);
  xmin -= pad;
  xmax += pad;
  ymin -= pad;
  ymax += pad;
  if (min_clearance <= 0.0) min_clearance = 2.0 * default_resolution(domain.boundary);
  std::vector<Complex> out;
  for (std::size_t i = 1; out.size() < count && i < 200 * count; ++i) {
    const Complex z(xmin + (xmax - xmin) * radical_inverse(i, 2), ymin + (ymax - ymin) * radical_inverse(i, 3));
    if (boundary_distance(domain.boundary, z) < min_clearance) continue;
    if (!std::holds_alternative<InDomain>(locate(domain, z))) continue;
    out.push_back(z);
  }
  return out;
}

double boundary_roundtrip(const ConformalChain& f, const CircularDomain& circles, const DomainSpec& domain,
                          double offset, std::size_t samples) {
  if (circles.circles.size() != domain.n()) {
    throw Error(Errc::InvalidInput, kModule, "circle count does not match the domain");
  }
  const ConformalChain inv = f.inverse();
  double worst = 0.0;
  for (std::size_t j = 0; j < domain.n(); ++j) {
    const Circle& c = circles.circles[j];
    auto attempt = [&](double off) {
      std::vector<Complex> pts(samples);
      parallel_for(samples, [&](std::size_t k) {
        const double t = 2.0 * std::numbers::pi * double(k) / double(samples);
        pts[k] = inv.eval(c.center + std::polar(c.radius + off, t));
      });
      return pts;
    };
    const double cap = 3.0 * default_resolution(domain.boundary);
    std::vector<Complex> pts;
    for (double off = offset > 0.0 ? offset : 1e-6 * c.radius;; off = std::min(4.0 * off, cap)) {
      try {
        pts = attempt(off);
        break;
      } catch (const Error& e) {
        if (off >= cap) {
          throw Error(Errc::InverseEvaluationFailed, kModule,
                      "inverse map failed near circle " + std::to_string(j) + ": " + e.what());
        }
      }
    }
    worst = std::max(worst, hausdorff_distance(domain.boundary[j], ClosedCurve(pts)));
  }
  return worst;
}

}  // namespace circmap
