#pragma once

#include <complex>
#include <span>
#include <vector>

#include "circmap/geometry.hpp"

namespace circmap {

/// Geodesic zipper: conformal map of the interior of a closed polyline onto
/// the upper half-plane and the unit disk, built from explicit elementary
/// maps (one square-root slit map per boundary node) so both directions are
/// closed form.
///
/// Each boundary arc between consecutive nodes is interpolated by a
/// hyperbolic geodesic of the intermediate half-plane, so the map is exact
/// for the region bounded by those arcs and the nodes land exactly on the
/// unit circle.
class GeodesicZipper {
 public:
  /// `nodes` traverse a Jordan curve (either orientation); `interior` is the
  /// point sent to the disk center.
  GeodesicZipper(std::span<const Complex> nodes, Complex interior);

  struct Slit {
    double b_inv;  // Re a / |a|^2 of the slit tip a
    double c;      // |a|^2 / Im a
  };

  struct Parameters {
    Complex z0, z1;            // first two nodes (after orientation fix)
    std::vector<Slit> slits;   // one per remaining node
    double zeta0;              // image of z0 before the closing map (inf allowed)
    double sign;               // +-1 in the closing square
    Complex anchor;            // half-plane image of the interior point
  };

  /// Rebuild from serialized parameters.
  explicit GeodesicZipper(Parameters params, std::vector<Complex> nodes,
                          std::vector<Complex> node_images);

  Complex to_halfplane(Complex z) const;
  /// Half-plane image and its complex derivative.
  std::pair<Complex, Complex> to_halfplane_with_derivative(Complex z) const;
  Complex from_halfplane(Complex w) const;
  Complex to_disk(Complex z) const;
  Complex from_disk(Complex w) const;

  /// Half-plane images of the nodes, in the caller's node order. The node
  /// that goes to infinity reports +inf.
  std::span<const double> node_halfplane() const { return node_halfplane_; }
  /// Disk images of the nodes (on the unit circle), caller's node order.
  std::span<const Complex> node_disk() const { return node_disk_; }
  std::span<const Complex> nodes() const { return nodes_; }
  const Parameters& parameters() const { return params_; }
  Complex interior() const { return interior_; }
  std::size_t size() const { return nodes_.size(); }

 private:
  Complex closing_map(Complex w) const;
  Complex closing_inverse(Complex u) const;

  Parameters params_;
  std::vector<Complex> nodes_;
  std::vector<double> node_halfplane_;
  std::vector<Complex> node_disk_;
  Complex interior_{};
};

}  // namespace circmap
