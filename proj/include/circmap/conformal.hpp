#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "circmap/geometry.hpp"
#include "circmap/zipper.hpp"

namespace circmap {

using MapFn = std::function<Complex(Complex)>;

/// One elementary conformal map. Forward formulas:
///   Mobius           (a z + b) / (c z + d)
///   DiskAutomorphism (z0 - z) / (1 - conj(z0) z)   (swaps z0 and 0, involution)
///   Inversion        r0 / (z - z0)
///   AffineNormalize  (z - shift) / scale
///   NumericMap       zipper map from the interior of a polyline onto the unit disk
/// With `inverse` set the atom evaluates the inverse map.
struct MapAtom {
  enum class Kind { Mobius, DiskAutomorphism, Inversion, AffineNormalize, NumericMap };

  Kind kind = Kind::Mobius;
  std::array<Complex, 4> p{Complex(1), Complex(0), Complex(0), Complex(1)};
  std::shared_ptr<const GeodesicZipper> numeric;
  bool inverse = false;

  static MapAtom mobius(Complex a, Complex b, Complex c, Complex d);
  static MapAtom disk_automorphism(Complex z0);
  static MapAtom inversion(Complex z0, double r0);
  static MapAtom affine(Complex shift, Complex scale);
  static MapAtom numeric_map(std::shared_ptr<const GeodesicZipper> zipper, bool inverse = false);

  Complex eval(Complex z) const;
  Complex derivative(Complex z) const;
  MapAtom inverted() const;
};

std::string_view to_string(MapAtom::Kind kind);

/// Composition of atoms applied left to right: atoms[0] acts first.
class ConformalChain {
 public:
  ConformalChain() = default;
  explicit ConformalChain(std::vector<MapAtom> atoms) : atoms_(std::move(atoms)) {}

  Complex eval(Complex z) const;
  Complex eval_derivative(Complex z) const;
  /// Value and derivative in one pass.
  std::pair<Complex, Complex> eval_with_derivative(Complex z) const;

  ConformalChain inverse() const;
  void append(const MapAtom& atom) { atoms_.push_back(atom); }
  void append(const ConformalChain& tail);
  /// Chain with the last `count` atoms removed.
  ConformalChain truncated(std::size_t count) const;

  std::span<const MapAtom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  std::string to_json() const;
  static ConformalChain from_json(const std::string& text);

 private:
  std::vector<MapAtom> atoms_;
};

/// Coefficients of f(z) = a_{-1} (z-c) + a_0 + a_1 (z-c)^{-1} + ... + a_kmax (z-c)^{-kmax}
/// from `samples` trapezoid points on |z - c| = radius. Index k+1 holds a_k.
/// Throws UnderResolved when growing powers beyond the linear term are present.
std::vector<Complex> laurent_coeffs(const MapFn& f, Complex center, double radius, int k_max,
                                    std::size_t samples = 256);

struct Normalization {
  Complex a_minus1;
  Complex a0;
  MapAtom post_map;  // w -> (w - a0) / a_minus1
  Circle transform(const Circle& c) const;
};

/// Affine post-map bringing f to z + O(1/z) at infinity. The probe circle is
/// centered at the origin.
Normalization normalize_at_infinity(const MapFn& f, double probe_radius, std::size_t samples = 256);

struct ExteriorOptions {
  /// Zipper node count; 0 picks max(1024, 4 * samples) for smooth curves and
  /// max(2048, 8 * samples) for polygons.
  std::size_t nodes = 0;
  /// Circles are recognized (and mapped exactly) below this circularity residual.
  double circle_tolerance = 1e-12;
};

struct ExteriorMap {
  ConformalChain chain;  // exterior of curve -> exterior of circle, z + O(1/z)
  Circle circle;
  /// Images of the curve's samples on the output circle.
  std::vector<Complex> boundary_images;
};

ExteriorMap exterior_map(const ClosedCurve& curve, const ExteriorOptions& options = {});

struct InteriorMap {
  ConformalChain chain;  // unit disk -> interior of curve
  /// Images of `boundary_samples` uniform points of the unit circle.
  std::vector<Complex> boundary_images;
};

/// phi: unit disk -> interior, phi(0) = z0, phi'(0) > 0.
InteriorMap interior_disk_map(const ClosedCurve& curve, Complex z0, const ExteriorOptions& options = {},
                              std::size_t boundary_samples = 256);

/// Node count used for the zipper of a curve.
std::size_t zipper_nodes(const ClosedCurve& curve, const ExteriorOptions& options);

}  // namespace circmap
