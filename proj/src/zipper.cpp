#include "circmap/zipper.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace circmap {

namespace {

constexpr std::string_view kModule = "conformal_core";
constexpr double kInf = std::numeric_limits<double>::infinity();

Complex upper_sqrt(Complex q) {
  const Complex r = std::sqrt(q);
  return r.imag() < 0.0 ? -r : r;
}

Complex slit_forward(const GeodesicZipper::Slit& s, Complex w) {
  const Complex m = w / (1.0 - w * s.b_inv);
  return upper_sqrt(m * m + s.c * s.c);
}

Complex slit_inverse(const GeodesicZipper::Slit& s, Complex r) {
  const Complex m = upper_sqrt(r * r - s.c * s.c);
  return m / (1.0 + m * s.b_inv);
}

// Boundary (real axis) version; the base point 0 goes to the left prime end.
double slit_real(const GeodesicZipper::Slit& s, double t) {
  double m;
  if (std::isinf(t)) {
    m = s.b_inv != 0.0 ? -1.0 / s.b_inv : kInf;
  } else {
    const double denom = 1.0 - t * s.b_inv;
    m = denom == 0.0 ? kInf : t / denom;
  }
  if (std::isinf(m)) return kInf;
  if (m == 0.0) return -s.c;
  return std::copysign(std::sqrt(m * m + s.c * s.c), m);
}

double signed_area(const std::vector<Complex>& pts) {
  double a = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Complex p = pts[i], q = pts[(i + 1) % pts.size()];
    a += p.real() * q.imag() - p.imag() * q.real();
  }
  return 0.5 * a;
}

}  // namespace

GeodesicZipper::GeodesicZipper(std::span<const Complex> nodes, Complex interior)
    : nodes_(nodes.begin(), nodes.end()), interior_(interior) {
  const std::size_t n = nodes_.size();
  if (n < 3) throw Error(Errc::InvalidCurve, kModule, "zipper needs at least three nodes");

  // internal traversal is counterclockwise so the domain stays on the left
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (signed_area(nodes_) < 0.0) {
    for (std::size_t k = 0; k < n; ++k) order[k] = (n - k) % n;
  }
  std::vector<Complex> pts(n);
  for (std::size_t k = 0; k < n; ++k) pts[k] = nodes_[order[k]];

  params_.z0 = pts[0];
  params_.z1 = pts[1];
  auto first = [&](Complex z) {
    return Complex(0.0, 1.0) * std::sqrt((z - params_.z1) / (z - params_.z0));
  };

  // complex images of not-yet-unzipped nodes; real images of unzipped ones
  std::vector<Complex> work(n);
  std::vector<double> real_image(n, 0.0);
  real_image[0] = kInf;
  real_image[1] = 0.0;
  for (std::size_t k = 2; k < n; ++k) work[k] = first(pts[k]);
  Complex anchor = first(interior);

  params_.slits.reserve(n - 2);
  for (std::size_t k = 2; k < n; ++k) {
    Complex a = work[k];
    if (!(std::isfinite(a.real()) && std::isfinite(a.imag())) || a.imag() == 0.0) {
      throw Error(Errc::MapperDiverged, kModule,
                  "zipper node " + std::to_string(k) + " left the half-plane");
    }
    if (a.imag() < 0.0) a = std::conj(a);
    const double a2 = std::norm(a);
    const Slit s{a.real() / a2, a2 / a.imag()};
    params_.slits.push_back(s);
    for (std::size_t j = 0; j < k; ++j) real_image[j] = slit_real(s, real_image[j]);
    real_image[k] = 0.0;
    for (std::size_t j = k + 1; j < n; ++j) work[j] = slit_forward(s, work[j]);
    anchor = slit_forward(s, anchor);
  }

  params_.zeta0 = real_image[0];
  const double z0 = params_.zeta0;
  auto closing_base = [z0](Complex w) { return std::isinf(z0) ? w : w / (1.0 - w / z0); };
  const Complex u = closing_base(anchor);
  params_.sign = (u * u).imag() > 0.0 ? 1.0 : -1.0;
  params_.anchor = params_.sign * u * u;
  if (!(params_.anchor.imag() > 0.0) || !std::isfinite(params_.anchor.real())) {
    throw Error(Errc::MapperDiverged, kModule, "interior point did not map into the half-plane");
  }

  node_halfplane_.assign(n, kInf);
  node_disk_.assign(n, Complex(1.0, 0.0));
  const Complex A = params_.anchor;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = real_image[k];
    double v;
    if (std::isinf(t)) {
      v = std::isinf(z0) ? kInf : params_.sign * z0 * z0;
    } else if (!std::isinf(z0) && t == z0) {
      v = kInf;
    } else {
      const double uu = std::isinf(z0) ? t : t / (1.0 - t / z0);
      v = params_.sign * uu * uu;
    }
    node_halfplane_[order[k]] = v;
    node_disk_[order[k]] = std::isinf(v) ? Complex(1.0, 0.0) : (v - A) / (v - std::conj(A));
  }
}

GeodesicZipper::GeodesicZipper(Parameters params, std::vector<Complex> nodes,
                               std::vector<Complex> node_images)
    : params_(std::move(params)), nodes_(std::move(nodes)), node_disk_(std::move(node_images)) {
  node_halfplane_.resize(node_disk_.size());
  const Complex A = params_.anchor;
  for (std::size_t k = 0; k < node_disk_.size(); ++k) {
    const Complex w = node_disk_[k];
    node_halfplane_[k] = std::abs(1.0 - w) < 1e-300 ? kInf : ((A - std::conj(A) * w) / (1.0 - w)).real();
  }
  interior_ = from_disk(0.0);
}

Complex GeodesicZipper::closing_map(Complex w) const {
  const double z0 = params_.zeta0;
  const Complex u = std::isinf(z0) ? w : w / (1.0 - w / z0);
  return params_.sign * u * u;
}

Complex GeodesicZipper::closing_inverse(Complex v) const {
  const Complex u = upper_sqrt(params_.sign * v);
  const double z0 = params_.zeta0;
  return std::isinf(z0) ? u : u / (1.0 + u / z0);
}

Complex GeodesicZipper::to_halfplane(Complex z) const {
  Complex w = Complex(0.0, 1.0) * std::sqrt((z - params_.z1) / (z - params_.z0));
  for (const auto& s : params_.slits) w = slit_forward(s, w);
  return closing_map(w);
}

std::pair<Complex, Complex> GeodesicZipper::to_halfplane_with_derivative(Complex z) const {
  const Complex q = (z - params_.z1) / (z - params_.z0);
  const Complex sq = std::sqrt(q);
  Complex w = Complex(0.0, 1.0) * sq;
  Complex d = Complex(0.0, 1.0) * ((params_.z1 - params_.z0) / ((z - params_.z0) * (z - params_.z0))) / (2.0 * sq);
  for (const auto& s : params_.slits) {
    const Complex den = 1.0 - w * s.b_inv;
    const Complex m = w / den;
    const Complex r = upper_sqrt(m * m + s.c * s.c);
    d *= m / (den * den * r);
    w = r;
  }
  const double z0 = params_.zeta0;
  Complex u = w, du = 1.0;
  if (!std::isinf(z0)) {
    const Complex den = 1.0 - w / z0;
    u = w / den;
    du = 1.0 / (den * den);
  }
  return {params_.sign * u * u, d * 2.0 * params_.sign * u * du};
}

Complex GeodesicZipper::from_halfplane(Complex v) const {
  Complex w = closing_inverse(v);
  for (auto it = params_.slits.rbegin(); it != params_.slits.rend(); ++it) w = slit_inverse(*it, w);
  const Complex q = -(w * w);
  return (params_.z1 - q * params_.z0) / (1.0 - q);
}

Complex GeodesicZipper::to_disk(Complex z) const {
  const Complex v = to_halfplane(z);
  const Complex A = params_.anchor;
  return (v - A) / (v - std::conj(A));
}

Complex GeodesicZipper::from_disk(Complex w) const {
  const Complex A = params_.anchor;
  return from_halfplane((A - std::conj(A) * w) / (1.0 - w));
}

}  // namespace circmap
