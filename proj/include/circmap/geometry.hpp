#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "circmap/error.hpp"

namespace circmap {

using Complex = std::complex<double>;

/// Sampled closed curve. Samples are uniform in an (unspecified) periodic
/// parameter t in [0, 2pi); derivative samples, when present, are d(gamma)/dt
/// at the same parameters and mark the curve as smooth.
class ClosedCurve {
 public:
  static constexpr std::size_t min_samples = 16;

  explicit ClosedCurve(std::vector<Complex> samples, std::vector<Complex> derivatives = {});

  static ClosedCurve circle(Complex center, double radius, std::size_t n, bool counterclockwise = true);
  static ClosedCurve ellipse(Complex center, double semi_x, double semi_y, std::size_t n,
                             double rotation = 0.0);
  /// Polygon boundary sampled uniformly by arc length (not smooth).
  static ClosedCurve polygon(std::span<const Complex> vertices, std::size_t n);

  std::span<const Complex> samples() const { return samples_; }
  std::span<const Complex> derivatives() const { return derivatives_; }
  const Complex& operator[](std::size_t i) const { return samples_[i]; }
  std::size_t size() const { return samples_.size(); }
  bool smooth() const { return !derivatives_.empty(); }

  /// Largest distance between consecutive samples.
  double max_gap() const;
  double perimeter() const;
  /// Shoelace area; positive for counterclockwise traversal.
  double signed_area() const;
  Complex centroid() const;
  /// Largest |z - center| over the samples.
  double max_radius(Complex center = {}) const;

  /// Euclidean distance from z to the closed polyline.
  double distance(Complex z) const;
  /// Closest point on the polyline; `segment` receives the segment index and
  /// `fraction` the position along it.
  Complex closest_point(Complex z, std::size_t* segment = nullptr, double* fraction = nullptr) const;

  ClosedCurve reversed() const;
  /// Resampled to `count` points: trigonometric interpolation for smooth
  /// curves, piecewise-linear for polygons.
  ClosedCurve resampled(std::size_t count) const;
  /// Image under an analytic map; derivatives transform by the chain rule
  /// when `derivative` is supplied, otherwise are recomputed spectrally.
  ClosedCurve mapped(const std::function<Complex(Complex)>& f,
                     const std::function<Complex(Complex)>& derivative = {}) const;

  /// True when no two non-adjacent polyline segments intersect.
  bool is_simple() const;

 private:
  std::vector<Complex> samples_;
  std::vector<Complex> derivatives_;
};

/// Unbounded n-connected domain: the exterior of n pairwise exterior Jordan
/// curves. Every curve is positively oriented with respect to the domain,
/// i.e. the domain lies to the right (counterclockwise traversal).
struct DomainSpec {
  std::vector<ClosedCurve> boundary;
  std::size_t n() const { return boundary.size(); }
};

/// Bounded Jordan domain; boundary[0] is the outer curve. Orientation keeps
/// the domain to the right: outer curve clockwise, inner curves counterclockwise.
struct BoundedDomain {
  std::vector<ClosedCurve> boundary;
  /// Position of each curve in the list handed to validate_bounded.
  std::vector<std::size_t> source;
  std::size_t n() const { return boundary.size(); }
  bool contains(Complex z) const;
  /// Distance from z to the nearest boundary curve.
  double clearance(Complex z) const;
};

struct Circle {
  Complex center;
  double radius = 0.0;
};

struct CircularDomain {
  std::vector<Circle> circles;
};

struct CircleFit {
  Circle circle;
  double max_deviation = 0.0;  // max | |z - c| - r |
  double residual = 0.0;       // max_deviation / r
};

/// Least-squares circle: algebraic fit followed by Gauss-Newton refinement of
/// the radial deviations. Throws DegenerateFit for collinear points.
CircleFit fit_circle(std::span<const Complex> points);

/// Winding number of the polyline about z. Throws PointOnCurve when z lies
/// within `h` of the curve (h < 0 selects the curve's max sample gap).
int winding_number(const ClosedCurve& curve, Complex z, double h = -1.0);

struct InDomain {};
struct InHole { std::size_t index; };
struct OnBoundary { std::size_t index; };
using Location = std::variant<InDomain, InHole, OnBoundary>;

Location locate(const DomainSpec& domain, Complex z, double h = -1.0);

struct NestingOptions {
  bool require_zero_in_hole = true;
};

/// Checks mutual exteriority and disjointness of hole curves and orients
/// them counterclockwise. Throws NestedCurves, IntersectingCurves, ZeroInDomain.
DomainSpec validate_nesting(std::vector<ClosedCurve> curves, NestingOptions options = {});

/// Builds a bounded Jordan domain: identifies the outer curve (the one
/// enclosing all others), checks the rest are mutually exterior, and orients.
BoundedDomain validate_bounded(std::vector<ClosedCurve> curves);

/// Image of an unbounded domain under w = 1/(z - center) with `center` in a
/// hole; the result is a bounded Jordan domain with 0 the image of infinity.
BoundedDomain invert(const DomainSpec& domain, Complex center);

using Polyline = std::vector<Complex>;

struct CutArcs {
  /// hole order used for the chain outer -> holes; order[0] == 0 (outer).
  std::vector<std::size_t> order;
  std::vector<Polyline> sigma;
  std::vector<Polyline> tau;
};

/// Two families of disjoint polyline arcs, each linking consecutive curves
/// of the chain outer -> holes (holes sorted by center real part, then imag).
CutArcs cut_arcs(const BoundedDomain& domain, double h = 0.0);

double polyline_distance(const Polyline& line, Complex z);

/// Symmetric Hausdorff distance between finite point sets.
double hausdorff_distance(std::span<const Complex> a, std::span<const Complex> b);

/// Symmetric Hausdorff distance between two closed polylines, measuring
/// point-to-segment distances in both directions.
double hausdorff_distance(const ClosedCurve& a, const ClosedCurve& b);

/// Default geometric resolution for a set of curves: the largest sample gap.
double default_resolution(std::span<const ClosedCurve> curves);

/// Interior point of a closed curve far from its boundary (approximate
/// center of the largest inscribed disk) and that disk's radius.
std::pair<Complex, double> inscribed_disk(const ClosedCurve& curve);

// JSON interchange: {"curves":[{"points":[[x,y],...],"derivatives":[[x,y],...]}]}
std::vector<ClosedCurve> curves_from_json(const std::string& text);
std::string curves_to_json(std::span<const ClosedCurve> curves);

}  // namespace circmap
