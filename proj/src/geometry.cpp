#include "circmap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <numbers>

#include "circmap/fourier.hpp"

namespace circmap {

namespace {

constexpr std::string_view kModule = "geometry";

double segment_distance(Complex a, Complex b, Complex z, double* fraction = nullptr) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  double t = len2 > 0.0 ? std::real((z - a) * std::conj(d)) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  if (fraction) *fraction = t;
  return std::abs(z - (a + t * d));
}

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  auto on_segment = [](Complex a, Complex b, Complex p) {
    return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
  };
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

bool curves_intersect(const ClosedCurve& a, const ClosedCurve& b) {
  const auto pa = a.samples();
  const auto pb = b.samples();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const Complex a1 = pa[i], a2 = pa[(i + 1) % pa.size()];
    for (std::size_t j = 0; j < pb.size(); ++j) {
      if (segments_intersect(a1, a2, pb[j], pb[(j + 1) % pb.size()])) return true;
    }
  }
  return false;
}

// Winding of polyline about z without the on-curve check.
double raw_winding(std::span<const Complex> pts, Complex z) {
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    total += std::arg((pts[(i + 1) % pts.size()] - z) / (pts[i] - z));
  }
  return total / (2.0 * std::numbers::pi);
}

}  // namespace

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::InvalidCurve: return "InvalidCurve";
    case Errc::PointOnCurve: return "PointOnCurve";
    case Errc::NonIntegerResidual: return "NonIntegerResidual";
    case Errc::NestedCurves: return "NestedCurves";
    case Errc::IntersectingCurves: return "IntersectingCurves";
    case Errc::ZeroInDomain: return "ZeroInDomain";
    case Errc::ArcSearchFailed: return "ArcSearchFailed";
    case Errc::EmptySet: return "EmptySet";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::UnderResolved: return "UnderResolved";
    case Errc::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case Errc::MapperDiverged: return "MapperDiverged";
    case Errc::TooCloseToBoundary: return "TooCloseToBoundary";
    case Errc::DiskNotContained: return "DiskNotContained";
    case Errc::MissingDerivatives: return "MissingDerivatives";
    case Errc::ContractionStalled: return "ContractionStalled";
    case Errc::OffsetContourFailed: return "OffsetContourFailed";
    case Errc::GridGenerationFailed: return "GridGenerationFailed";
    case Errc::PatchesOverlap: return "PatchesOverlap";
    case Errc::BoundaryValueNotZero: return "BoundaryValueNotZero";
    case Errc::CurveCollision: return "CurveCollision";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ModulusBoundFailed: return "ModulusBoundFailed";
    case Errc::RadiusConditionViolated: return "RadiusConditionViolated";
    case Errc::RecursionFailed: return "RecursionFailed";
    case Errc::DegenerateFit: return "DegenerateFit";
    case Errc::InverseEvaluationFailed: return "InverseEvaluationFailed";
    case Errc::CertifyUnavailable: return "CertifyUnavailable";
    case Errc::MissingArtifacts: return "MissingArtifacts";
  }
  return "Unknown";
}

ClosedCurve::ClosedCurve(std::vector<Complex> samples, std::vector<Complex> derivatives)
    : samples_(std::move(samples)), derivatives_(std::move(derivatives)) {
  if (samples_.size() < min_samples) {
    throw Error(Errc::InvalidCurve, kModule,
                "curve needs at least " + std::to_string(min_samples) + " samples, got " +
                    std::to_string(samples_.size()));
  }
  if (!derivatives_.empty() && derivatives_.size() != samples_.size()) {
    throw Error(Errc::InvalidCurve, kModule, "derivative sample count does not match point count");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const Complex z = samples_[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(Errc::InvalidCurve, kModule, "non-finite sample");
    }
    if (z == samples_[(i + 1) % samples_.size()]) {
      throw Error(Errc::InvalidCurve, kModule, "repeated consecutive sample");
    }
  }
}

ClosedCurve ClosedCurve::circle(Complex center, double radius, std::size_t n, bool counterclockwise) {
  std::vector<Complex> pts(n), der(n);
  const double sign = counterclockwise ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex e = std::polar(1.0, sign * 2.0 * std::numbers::pi * double(k) / double(n));
    pts[k] = center + radius * e;
    der[k] = Complex(0.0, sign) * radius * e;
  }
  return ClosedCurve(std::move(pts), std::move(der));
}

ClosedCurve ClosedCurve::ellipse(Complex center, double semi_x, double semi_y, std::size_t n,
                                 double rotation) {
  std::vector<Complex> pts(n), der(n);
  const Complex rot = std::polar(1.0, rotation);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * double(k) / double(n);
    pts[k] = center + rot * Complex(semi_x * std::cos(t), semi_y * std::sin(t));
    der[k] = rot * Complex(-semi_x * std::sin(t), semi_y * std::cos(t));
  }
  return ClosedCurve(std::move(pts), std::move(der));
}

ClosedCurve ClosedCurve::polygon(std::span<const Complex> vertices, std::size_t n) {
  const std::size_t m = vertices.size();
  std::vector<double> cumulative(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    cumulative[i + 1] = cumulative[i] + std::abs(vertices[(i + 1) % m] - vertices[i]);
  }
  const double total = cumulative[m];
  std::vector<Complex> pts(n);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = total * double(k) / double(n);
    while (seg + 1 < m && cumulative[seg + 1] <= s) ++seg;
    const double t = (s - cumulative[seg]) / (cumulative[seg + 1] - cumulative[seg]);
    pts[k] = vertices[seg] + t * (vertices[(seg + 1) % m] - vertices[seg]);
  }
  return ClosedCurve(std::move(pts));
}

double ClosedCurve::max_gap() const {
  double gap = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    gap = std::max(gap, std::abs(samples_[(i + 1) % size()] - samples_[i]));
  }
  return gap;
}

double ClosedCurve::perimeter() const {
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) total += std::abs(samples_[(i + 1) % size()] - samples_[i]);
  return total;
}

double ClosedCurve::signed_area() const {
  double area = 0.0;
  for (std::size_t i = 0; i < size(); ++i) area += cross(samples_[i], samples_[(i + 1) % size()]);
  return 0.5 * area;
}

Complex ClosedCurve::centroid() const {
  // area centroid of the polygon
  Complex acc{};
  double area = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const Complex a = samples_[i], b = samples_[(i + 1) % size()];
    const double c = cross(a, b);
    area += c;
    acc += c * (a + b);
  }
  return acc / (3.0 * area);
}

double ClosedCurve::max_radius(Complex center) const {
  double r = 0.0;
  for (const auto& z : samples_) r = std::max(r, std::abs(z - center));
  return r;
}

double ClosedCurve::distance(Complex z) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) {
    best = std::min(best, segment_distance(samples_[i], samples_[(i + 1) % size()], z));
  }
  return best;
}

Complex ClosedCurve::closest_point(Complex z, std::size_t* segment, double* fraction) const {
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  double best_t = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double t = 0.0;
    const double d = segment_distance(samples_[i], samples_[(i + 1) % size()], z, &t);
    if (d < best) {
      best = d;
      best_i = i;
      best_t = t;
    }
  }
  if (segment) *segment = best_i;
  if (fraction) *fraction = best_t;
  return samples_[best_i] + best_t * (samples_[(best_i + 1) % size()] - samples_[best_i]);
}

ClosedCurve ClosedCurve::reversed() const {
  // t -> -t keeps sample 0 fixed
  std::vector<Complex> pts(size()), der;
  for (std::size_t k = 0; k < size(); ++k) pts[k] = samples_[(size() - k) % size()];
  if (smooth()) {
    der.resize(size());
    for (std::size_t k = 0; k < size(); ++k) der[k] = -derivatives_[(size() - k) % size()];
  }
  return ClosedCurve(std::move(pts), std::move(der));
}

ClosedCurve ClosedCurve::resampled(std::size_t count) const {
  if (count == size()) return *this;
  if (smooth()) {
    auto pts = fourier::interpolate(samples_, count);
    auto der = fourier::interpolate(derivatives_, count);
    return ClosedCurve(std::move(pts), std::move(der));
  }
  std::vector<Complex> pts(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double s = double(k) * double(size()) / double(count);
    const auto i = static_cast<std::size_t>(std::floor(s));
    const double t = s - double(i);
    pts[k] = samples_[i % size()] + t * (samples_[(i + 1) % size()] - samples_[i % size()]);
  }
  return ClosedCurve(std::move(pts));
}

ClosedCurve ClosedCurve::mapped(const std::function<Complex(Complex)>& f,
                                const std::function<Complex(Complex)>& derivative) const {
  std::vector<Complex> pts(size());
  for (std::size_t k = 0; k < size(); ++k) pts[k] = f(samples_[k]);
  std::vector<Complex> der;
  if (smooth()) {
    if (derivative) {
      der.resize(size());
      for (std::size_t k = 0; k < size(); ++k) der[k] = derivative(samples_[k]) * derivatives_[k];
    } else {
      der = fourier::derivative(pts);
    }
  }
  return ClosedCurve(std::move(pts), std::move(der));
}

bool ClosedCurve::is_simple() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a1 = samples_[i], a2 = samples_[(i + 1) % n];
    const double minx = std::min(a1.real(), a2.real()), maxx = std::max(a1.real(), a2.real());
    const double miny = std::min(a1.imag(), a2.imag()), maxy = std::max(a1.imag(), a2.imag());
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const Complex b1 = samples_[j], b2 = samples_[(j + 1) % n];
      if (std::max(b1.real(), b2.real()) < minx || std::min(b1.real(), b2.real()) > maxx ||
          std::max(b1.imag(), b2.imag()) < miny || std::min(b1.imag(), b2.imag()) > maxy) {
        continue;
      }
      if (segments_intersect(a1, a2, b1, b2)) return false;
    }
  }
  return true;
}

bool BoundedDomain::contains(Complex z) const {
  if (raw_winding(boundary[0].samples(), z) > -0.5 && raw_winding(boundary[0].samples(), z) < 0.5) {
    return false;
  }
  for (std::size_t j = 1; j < boundary.size(); ++j) {
    if (std::abs(raw_winding(boundary[j].samples(), z)) > 0.5) return false;
  }
  return true;
}

double BoundedDomain::clearance(Complex z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& c : boundary) d = std::min(d, c.distance(z));
  return d;
}

int winding_number(const ClosedCurve& curve, Complex z, double h) {
  if (h < 0.0) h = curve.max_gap();
  if (curve.distance(z) <= h) {
    throw Error(Errc::PointOnCurve, kModule, "point lies within the curve resolution");
  }
  const double w = raw_winding(curve.samples(), z);
  const double rounded = std::round(w);
  if (std::abs(w - rounded) >= 0.25) {
    throw Error(Errc::NonIntegerResidual, kModule, "winding sum is not near an integer");
  }
  return static_cast<int>(rounded);
}

Location locate(const DomainSpec& domain, Complex z, double h) {
  for (std::size_t j = 0; j < domain.n(); ++j) {
    const double hj = h < 0.0 ? domain.boundary[j].max_gap() : h;
    if (domain.boundary[j].distance(z) <= hj) return OnBoundary{j};
  }
  for (std::size_t j = 0; j < domain.n(); ++j) {
    if (winding_number(domain.boundary[j], z, 0.0) != 0) return InHole{j};
  }
  return InDomain{};
}

namespace {

void check_simple(const std::vector<ClosedCurve>& curves) {
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (!curves[i].is_simple()) {
      throw Error(Errc::IntersectingCurves, kModule, "curve " + std::to_string(i) + " is not simple");
    }
  }
}

bool inside(const ClosedCurve& outer, Complex z) {
  return std::abs(raw_winding(outer.samples(), z)) > 0.5;
}

}  // namespace

DomainSpec validate_nesting(std::vector<ClosedCurve> curves, NestingOptions options) {
  if (curves.empty()) throw Error(Errc::InvalidInput, kModule, "no boundary curves");
  check_simple(curves);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      if (curves_intersect(curves[i], curves[j])) {
        throw Error(Errc::IntersectingCurves, kModule,
                    "curves " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      }
      if (inside(curves[j], curves[i][0]) || inside(curves[i], curves[j][0])) {
        throw Error(Errc::NestedCurves, kModule,
                    "curves " + std::to_string(i) + " and " + std::to_string(j) + " are nested");
      }
    }
  }
  for (auto& c : curves) {
    if (c.signed_area() < 0.0) c = c.reversed();
  }
  if (options.require_zero_in_hole) {
    const bool zero_in_hole =
        std::any_of(curves.begin(), curves.end(), [](const ClosedCurve& c) {
          return c.distance(0.0) > 0.0 && inside(c, 0.0);
        });
    if (!zero_in_hole) throw Error(Errc::ZeroInDomain, kModule, "0 does not lie inside any hole");
  }
  return DomainSpec{std::move(curves)};
}

BoundedDomain validate_bounded(std::vector<ClosedCurve> curves) {
  if (curves.empty()) throw Error(Errc::InvalidInput, kModule, "no boundary curves");
  check_simple(curves);
  std::size_t outer = curves.size();
  for (std::size_t i = 0; i < curves.size() && outer == curves.size(); ++i) {
    bool encloses_all = true;
    for (std::size_t j = 0; j < curves.size(); ++j) {
      if (j != i && !inside(curves[i], curves[j][0])) encloses_all = false;
    }
    if (encloses_all) outer = i;
  }
  if (outer == curves.size()) {
    throw Error(Errc::InvalidInput, kModule, "no curve encloses all the others");
  }
  std::rotate(curves.begin(), curves.begin() + static_cast<long>(outer),
              curves.begin() + static_cast<long>(outer) + 1);
  std::vector<std::size_t> source(curves.size());
  std::iota(source.begin(), source.end(), std::size_t{0});
  std::rotate(source.begin(), source.begin() + static_cast<long>(outer),
              source.begin() + static_cast<long>(outer) + 1);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      if (curves_intersect(curves[i], curves[j])) {
        throw Error(Errc::IntersectingCurves, kModule,
                    "curves " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      }
      if (i > 0 && (inside(curves[j], curves[i][0]) || inside(curves[i], curves[j][0]))) {
        throw Error(Errc::NestedCurves, kModule,
                    "curves " + std::to_string(i) + " and " + std::to_string(j) + " are nested");
      }
    }
  }
  if (curves[0].signed_area() > 0.0) curves[0] = curves[0].reversed();
  for (std::size_t j = 1; j < curves.size(); ++j) {
    if (curves[j].signed_area() < 0.0) curves[j] = curves[j].reversed();
  }
  return BoundedDomain{std::move(curves), std::move(source)};
}

BoundedDomain invert(const DomainSpec& domain, Complex center) {
  std::vector<ClosedCurve> images;
  images.reserve(domain.n());
  for (const auto& c : domain.boundary) {
    images.push_back(c.mapped([center](Complex z) { return 1.0 / (z - center); },
                              [center](Complex z) { return -1.0 / ((z - center) * (z - center)); }));
  }
  return validate_bounded(std::move(images));
}

double polyline_distance(const Polyline& line, Complex z) {
  if (line.size() == 1) return std::abs(z - line[0]);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    best = std::min(best, segment_distance(line[i], line[i + 1], z));
  }
  return best;
}

double hausdorff_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.empty() || b.empty()) throw Error(Errc::EmptySet, kModule, "hausdorff distance of an empty set");
  auto directed = [](std::span<const Complex> from, std::span<const Complex> to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double hausdorff_distance(const ClosedCurve& a, const ClosedCurve& b) {
  double worst = 0.0;
  for (const auto& p : a.samples()) worst = std::max(worst, b.distance(p));
  for (const auto& q : b.samples()) worst = std::max(worst, a.distance(q));
  return worst;
}

double default_resolution(std::span<const ClosedCurve> curves) {
  double h = 0.0;
  for (const auto& c : curves) h = std::max(h, c.max_gap());
  return h;
}

std::pair<Complex, double> inscribed_disk(const ClosedCurve& curve) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& z : curve.samples()) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  constexpr int grid = 40;
  Complex best{};
  double best_d = -1.0;
  for (int i = 1; i < grid; ++i) {
    for (int j = 1; j < grid; ++j) {
      const Complex z(xmin + (xmax - xmin) * i / grid, ymin + (ymax - ymin) * j / grid);
      if (!inside(curve, z)) continue;
      const double d = curve.distance(z);
      if (d > best_d) {
        best_d = d;
        best = z;
      }
    }
  }
  if (best_d < 0.0) {
    best = curve.centroid();
    best_d = curve.distance(best);
  }
  // pattern search refinement
  double step = std::max(xmax - xmin, ymax - ymin) / grid;
  while (step > 1e-9 * std::max(1.0, std::abs(best))) {
    bool moved = false;
    for (const Complex dir : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
      const Complex z = best + step * dir;
      if (!inside(curve, z)) continue;
      const double d = curve.distance(z);
      if (d > best_d) {
        best_d = d;
        best = z;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return {best, best_d};
}

}  // namespace circmap

namespace circmap {

CircleFit fit_circle(std::span<const Complex> points) {
  const std::size_t n = points.size();
  if (n < 3) throw Error(Errc::DegenerateFit, "verify", "circle fit needs at least three points");
  Complex mean{};
  for (const auto& z : points) mean += z;
  mean /= double(n);
  double scale = 0.0;
  for (const auto& z : points) scale = std::max(scale, std::abs(z - mean));
  if (scale == 0.0) throw Error(Errc::DegenerateFit, "verify", "all points coincide");

  // algebraic fit x^2 + y^2 + D x + E y + F = 0 on centered, scaled data
  double m[3][4] = {};
  for (const auto& p : points) {
    const Complex z = (p - mean) / scale;
    const double row[3] = {z.real(), z.imag(), 1.0};
    const double rhs = -std::norm(z);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += row[i] * row[j];
      m[i][3] += row[i] * rhs;
    }
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (std::abs(m[piv][col]) < 1e-14 * double(n)) {
      throw Error(Errc::DegenerateFit, "verify", "points are collinear");
    }
    std::swap(m[col], m[piv]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  const double D = m[0][3] / m[0][0], E = m[1][3] / m[1][1], F = m[2][3] / m[2][2];
  Complex c(-D / 2.0, -E / 2.0);
  const double r2 = std::norm(c) - F;
  if (!(r2 > 0.0)) throw Error(Errc::DegenerateFit, "verify", "no real circle fits the points");
  double r = std::sqrt(r2);

  // Gauss-Newton on sum (|z - c| - r)^2
  for (int it = 0; it < 20; ++it) {
    double a[3][4] = {};
    for (const auto& p : points) {
      const Complex z = (p - mean) / scale;
      const double d = std::abs(z - c);
      if (d == 0.0) continue;
      const double res = d - r;
      const double J[3] = {-(z.real() - c.real()) / d, -(z.imag() - c.imag()) / d, -1.0};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) a[i][j] += J[i] * J[j];
        a[i][3] -= J[i] * res;
      }
    }
    bool singular = false;
    for (int col = 0; col < 3 && !singular; ++col) {
      int piv = col;
      for (int rr = col + 1; rr < 3; ++rr) {
        if (std::abs(a[rr][col]) > std::abs(a[piv][col])) piv = rr;
      }
      if (std::abs(a[piv][col]) < 1e-300) {
        singular = true;
        break;
      }
      std::swap(a[col], a[piv]);
      for (int rr = 0; rr < 3; ++rr) {
        if (rr == col) continue;
        const double f = a[rr][col] / a[col][col];
        for (int cc = col; cc < 4; ++cc) a[rr][cc] -= f * a[col][cc];
      }
    }
    if (singular) break;
    const Complex dc(a[0][3] / a[0][0], a[1][3] / a[1][1]);
    const double dr = a[2][3] / a[2][2];
    c += dc;
    r += dr;
    if (std::abs(dc) + std::abs(dr) < 1e-15) break;
  }

  CircleFit fit;
  fit.circle = {mean + scale * c, scale * r};
  for (const auto& p : points) {
    fit.max_deviation = std::max(fit.max_deviation, std::abs(std::abs(p - fit.circle.center) - fit.circle.radius));
  }
  fit.residual = fit.max_deviation / fit.circle.radius;
  return fit;
}

}  // namespace circmap
