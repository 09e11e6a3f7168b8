#pragma once

#include <string>
#include <vector>

#include "circmap/conformal.hpp"
#include "circmap/geometry.hpp"

namespace circmap {

struct ResidualReport {
  std::vector<CircleFit> components;
  double global = 0.0;

  std::string to_json() const;
  std::string to_text() const;
};

/// Least-squares circle and max | |z - c| - r | / r. Throws DegenerateFit.
CircleFit circularity_residual(const ClosedCurve& curve);
ResidualReport circularity_report(std::span<const ClosedCurve> curves);

struct QuarterReport {
  bool pass = true;
  /// min over probes of d(f(z), df(U)) / (|f'(z)| d(z, dU) / 4); >= 1/(1 + slack) passes.
  double lower_margin = 0.0;
  /// min over probes of 4 |f'(z)| d(z, dU) / d(f(z), df(U)); >= 1/(1 + slack) passes.
  double upper_margin = 0.0;
  std::size_t probes = 0;
};

/// (1/4)|f'| d(z, dU) <= d(f(z), df(U)) <= 4 |f'| d(z, dU) at every probe,
/// with relative slack. The image boundary is given by its circles.
QuarterReport quarter_theorem_check(const ConformalChain& f, std::span<const ClosedCurve> boundary,
                                    const CircularDomain& image, std::span<const Complex> probes,
                                    double slack = 0.1);
/// Same, with a sampled image boundary.
QuarterReport quarter_theorem_check(const ConformalChain& f, std::span<const ClosedCurve> boundary,
                                    std::span<const ClosedCurve> image, std::span<const Complex> probes,
                                    double slack = 0.1);

/// Deterministic points of the unbounded domain at distance >= min_clearance
/// from its boundary, spread over a box around the holes.
std::vector<Complex> probe_points(const DomainSpec& domain, std::size_t count, double min_clearance = 0.0);

/// Hausdorff distance between each input curve and the inverse image of its
/// circle, sampled just inside the circular domain. The offset starts at
/// `offset` (0 selects 1e-6 times the radius) and grows by 4 up to 3h while
/// the inverse map rejects a point. Returns the maximum over components.
double boundary_roundtrip(const ConformalChain& f, const CircularDomain& circles, const DomainSpec& domain,
                          double offset = 0.0, std::size_t samples = 512);

}  // namespace circmap
