#include "circmap/conformal.hpp"

#include <cmath>
#include <numbers>

#include "circmap/fourier.hpp"

namespace circmap {

namespace {

constexpr std::string_view kModule = "conformal_core";

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double node_scale(const GeodesicZipper& g) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& z : g.nodes()) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  return std::max(xmax - xmin, ymax - ymin);
}

Complex numeric_eval(const GeodesicZipper& g, bool inverse, Complex z) {
  if (inverse) {
    if (std::abs(z) > 1.0 + 1e-12) {
      throw Error(Errc::OutOfDomain, kModule, "point outside the unit disk passed to an inverse numeric map");
    }
    return g.from_disk(z);
  }
  const Complex w = g.to_disk(z);
  if (!finite(w) || std::abs(w) > 1.0 + 1e-8) {
    throw Error(Errc::OutOfDomain, kModule, "point outside the numeric map's domain");
  }
  return w;
}

}  // namespace

std::string_view to_string(MapAtom::Kind kind) {
  switch (kind) {
    case MapAtom::Kind::Mobius: return "Mobius";
    case MapAtom::Kind::DiskAutomorphism: return "DiskAutomorphism";
    case MapAtom::Kind::Inversion: return "Inversion";
    case MapAtom::Kind::AffineNormalize: return "AffineNormalize";
    case MapAtom::Kind::NumericMap: return "NumericMap";
  }
  return "Unknown";
}

MapAtom MapAtom::mobius(Complex a, Complex b, Complex c, Complex d) {
  if (a * d - b * c == Complex(0.0)) {
    throw Error(Errc::InvalidInput, kModule, "Mobius determinant is zero");
  }
  MapAtom m;
  m.kind = Kind::Mobius;
  m.p = {a, b, c, d};
  return m;
}

MapAtom MapAtom::disk_automorphism(Complex z0) {
  if (!(std::abs(z0) < 1.0)) throw Error(Errc::InvalidInput, kModule, "disk automorphism point must lie in the unit disk");
  MapAtom m;
  m.kind = Kind::DiskAutomorphism;
  m.p = {z0, 0.0, 0.0, 0.0};
  return m;
}

MapAtom MapAtom::inversion(Complex z0, double r0) {
  if (!(r0 > 0.0)) throw Error(Errc::InvalidInput, kModule, "inversion scale must be positive");
  MapAtom m;
  m.kind = Kind::Inversion;
  m.p = {z0, r0, 0.0, 0.0};
  return m;
}

MapAtom MapAtom::affine(Complex shift, Complex scale) {
  if (scale == Complex(0.0)) throw Error(Errc::InvalidInput, kModule, "affine scale must be nonzero");
  MapAtom m;
  m.kind = Kind::AffineNormalize;
  m.p = {shift, scale, 0.0, 0.0};
  return m;
}

MapAtom MapAtom::numeric_map(std::shared_ptr<const GeodesicZipper> zipper, bool inverse) {
  MapAtom m;
  m.kind = Kind::NumericMap;
  m.numeric = std::move(zipper);
  m.inverse = inverse;
  return m;
}

MapAtom MapAtom::inverted() const {
  MapAtom m = *this;
  m.inverse = !inverse;
  return m;
}

Complex MapAtom::eval(Complex z) const {
  switch (kind) {
    case Kind::Mobius:
      return inverse ? (p[3] * z - p[1]) / (-p[2] * z + p[0]) : (p[0] * z + p[1]) / (p[2] * z + p[3]);
    case Kind::DiskAutomorphism:
      return (p[0] - z) / (1.0 - std::conj(p[0]) * z);
    case Kind::Inversion:
      return inverse ? p[0] + p[1] / z : p[1] / (z - p[0]);
    case Kind::AffineNormalize:
      return inverse ? z * p[1] + p[0] : (z - p[0]) / p[1];
    case Kind::NumericMap:
      return numeric_eval(*numeric, inverse, z);
  }
  return z;
}

Complex MapAtom::derivative(Complex z) const {
  switch (kind) {
    case Kind::Mobius: {
      const Complex det = p[0] * p[3] - p[1] * p[2];
      if (inverse) {
        const Complex q = -p[2] * z + p[0];
        return det / (q * q);
      }
      const Complex q = p[2] * z + p[3];
      return det / (q * q);
    }
    case Kind::DiskAutomorphism: {
      const Complex q = 1.0 - std::conj(p[0]) * z;
      return (std::norm(p[0]) - 1.0) / (q * q);
    }
    case Kind::Inversion:
      return inverse ? -p[1] / (z * z) : -p[1] / ((z - p[0]) * (z - p[0]));
    case Kind::AffineNormalize:
      return inverse ? p[1] : 1.0 / p[1];
    case Kind::NumericMap: {
      const double h = 1e-5 * (inverse ? 1.0 : node_scale(*numeric));
      if (inverse) {
        // stay inside the disk near the boundary
        const double room = 1.0 - std::abs(z);
        const double hh = std::min(h, 0.5 * std::max(room, 1e-12));
        return (numeric->from_disk(z + hh) - numeric->from_disk(z - hh)) / (2.0 * hh);
      }
      return (numeric->to_disk(z + h) - numeric->to_disk(z - h)) / (2.0 * h);
    }
  }
  return 1.0;
}

Complex ConformalChain::eval(Complex z) const {
  for (const auto& a : atoms_) z = a.eval(z);
  if (!finite(z)) throw Error(Errc::OutOfDomain, kModule, "chain evaluation produced a non-finite value");
  return z;
}

std::pair<Complex, Complex> ConformalChain::eval_with_derivative(Complex z) const {
  Complex d = 1.0;
  for (const auto& a : atoms_) {
    d *= a.derivative(z);
    z = a.eval(z);
  }
  if (!finite(z) || !finite(d)) {
    throw Error(Errc::OutOfDomain, kModule, "chain evaluation produced a non-finite value");
  }
  return {z, d};
}

Complex ConformalChain::eval_derivative(Complex z) const { return eval_with_derivative(z).second; }

ConformalChain ConformalChain::inverse() const {
  std::vector<MapAtom> out;
  out.reserve(atoms_.size());
  for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) out.push_back(it->inverted());
  return ConformalChain(std::move(out));
}

void ConformalChain::append(const ConformalChain& tail) {
  atoms_.insert(atoms_.end(), tail.atoms_.begin(), tail.atoms_.end());
}

ConformalChain ConformalChain::truncated(std::size_t count) const {
  const std::size_t keep = count >= atoms_.size() ? 0 : atoms_.size() - count;
  return ConformalChain(std::vector<MapAtom>(atoms_.begin(), atoms_.begin() + keep));
}

std::vector<Complex> laurent_coeffs(const MapFn& f, Complex center, double radius, int k_max,
                                    std::size_t samples) {
  if (!(radius > 0.0) || k_max < 0) throw Error(Errc::InvalidInput, kModule, "bad Laurent probe");
  const std::size_t n = std::max<std::size_t>(samples, 4 * std::size_t(k_max + 2));
  std::vector<Complex> values(n);
  double fmax = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = f(center + std::polar(radius, 2.0 * std::numbers::pi * double(k) / double(n)));
    fmax = std::max(fmax, std::abs(values[k]));
  }
  // c[m + n/2] multiplies e^{i m t}
  const auto c = fourier::coefficients(values);
  const long half = long(n / 2);
  auto coef = [&](long m) { return c[std::size_t(m + half)]; };

  double growing = 0.0;
  for (long m = 2; m < half / 2; ++m) growing = std::max(growing, std::abs(coef(m)));
  if (growing > 1e-6 * std::max(fmax, 1e-300)) {
    throw Error(Errc::UnderResolved, kModule, "Laurent probe sees growing powers beyond z");
  }
  std::vector<Complex> out(std::size_t(k_max) + 2);
  out[0] = coef(1) / radius;
  for (int k = 0; k <= k_max; ++k) out[std::size_t(k) + 1] = coef(-k) * std::pow(radius, k);
  return out;
}

Circle Normalization::transform(const Circle& c) const {
  return {(c.center - a0) / a_minus1, c.radius / std::abs(a_minus1)};
}

Normalization normalize_at_infinity(const MapFn& f, double probe_radius, std::size_t samples) {
  const auto a = laurent_coeffs(f, 0.0, probe_radius, 1, samples);
  if (std::abs(a[0]) < 1e-12) {
    throw Error(Errc::DegenerateLeadingCoefficient, kModule, "leading Laurent coefficient vanishes");
  }
  return {a[0], a[1], MapAtom::affine(a[1], a[0])};
}

std::size_t zipper_nodes(const ClosedCurve& curve, const ExteriorOptions& options) {
  const std::size_t n = curve.size();
  const std::size_t target = options.nodes          ? options.nodes
                             : curve.smooth() ? std::max<std::size_t>(1024, 4 * n)
                                              : std::max<std::size_t>(2048, 8 * n);
  const std::size_t factor = std::max<std::size_t>(1, (target + n - 1) / n);
  return factor * n;
}

ExteriorMap exterior_map(const ClosedCurve& curve, const ExteriorOptions& options) {
  ExteriorMap out;
  const auto fit = fit_circle(curve.samples());
  if (fit.residual <= options.circle_tolerance) {
    out.circle = fit.circle;
    out.boundary_images.assign(curve.samples().begin(), curve.samples().end());
    return out;
  }

  const Complex p = inscribed_disk(curve).first;
  const std::size_t m = zipper_nodes(curve, options);
  const std::size_t step = m / curve.size();
  const ClosedCurve dense = curve.resampled(m);
  std::vector<Complex> nodes(m);
  for (std::size_t k = 0; k < m; ++k) nodes[k] = 1.0 / (dense[k] - p);
  auto zipper = std::make_shared<const GeodesicZipper>(nodes, 0.0);

  ConformalChain raw({MapAtom::inversion(p, 1.0), MapAtom::numeric_map(zipper), MapAtom::inversion(0.0, 1.0)});
  const double probe = 2.0 * curve.max_radius(0.0);
  const auto norm = normalize_at_infinity([&](Complex z) { return raw.eval(z); }, probe);

  out.chain = raw;
  out.chain.append(norm.post_map);
  out.circle = norm.transform({0.0, 1.0});
  out.boundary_images.resize(curve.size());
  const auto disk = zipper->node_disk();
  for (std::size_t k = 0; k < curve.size(); ++k) {
    out.boundary_images[k] = norm.post_map.eval(1.0 / disk[k * step]);
  }
  return out;
}

InteriorMap interior_disk_map(const ClosedCurve& curve, Complex z0, const ExteriorOptions& options,
                              std::size_t boundary_samples) {
  if (std::abs(winding_number(curve, z0)) != 1) {
    throw Error(Errc::InvalidInput, kModule, "interior point is not inside the curve");
  }
  InteriorMap out;
  const auto fit = fit_circle(curve.samples());
  if (fit.residual <= options.circle_tolerance) {
    const Complex c = fit.circle.center;
    const double r = fit.circle.radius;
    const Complex a = (z0 - c) / r;
    out.chain.append(MapAtom::mobius(r + c * std::conj(a), r * a + c, std::conj(a), 1.0));
  } else {
    const std::size_t m = zipper_nodes(curve, options);
    const ClosedCurve dense = curve.resampled(m);
    auto zipper = std::make_shared<const GeodesicZipper>(dense.samples(), z0);
    const double h = 1e-6;
    const Complex d = (zipper->from_disk(h) - zipper->from_disk(-h)) / (2.0 * h);
    const Complex rot = std::polar(1.0, -std::arg(d));
    out.chain.append(MapAtom::mobius(rot, 0.0, 0.0, 1.0));
    out.chain.append(MapAtom::numeric_map(zipper, true));
  }
  out.boundary_images.resize(boundary_samples);
  for (std::size_t k = 0; k < boundary_samples; ++k) {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * double(k) / double(boundary_samples));
    out.boundary_images[k] = out.chain.eval(w);
  }
  return out;
}

}  // namespace circmap
