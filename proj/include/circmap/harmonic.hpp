#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "circmap/conformal.hpp"
#include "circmap/geometry.hpp"

namespace circmap {

/// Real boundary values, one vector per curve aligned with its samples.
struct BoundaryData {
  std::vector<std::vector<double>> values;
  std::vector<bool> continuous;

  static BoundaryData constant(const BoundedDomain& domain, double c);
  /// 1 on curve j, 0 elsewhere.
  static BoundaryData indicator(const BoundedDomain& domain, std::size_t j);
  static BoundaryData sampled(const BoundedDomain& domain, const std::function<double(Complex)>& f);

  /// {"component": j, "values": [...]} records, one per curve.
  std::string to_json() const;
  static BoundaryData from_json(const std::string& text, const BoundedDomain& domain);
};

struct Gradient {
  double ux = 0.0;
  double uy = 0.0;
};

/// Evaluator for a harmonic function on a domain.
class HarmonicSolution {
 public:
  using Scalar = std::function<double(Complex)>;
  using Membership = std::function<bool(Complex)>;
  using GradientFn = std::function<Gradient(Complex)>;

  HarmonicSolution(Scalar u, Membership contains, Scalar clearance, std::string provenance);

  /// Harmonic function on the whole plane minus nothing (e.g. a closed form).
  static HarmonicSolution entire(Scalar u, std::string provenance);

  double operator()(Complex z) const { return u_(z); }
  bool contains(Complex z) const { return contains_(z); }
  /// Distance from z to the boundary of the domain of harmonicity.
  double clearance(Complex z) const { return clearance_(z); }
  const std::string& provenance() const { return provenance_; }

  HarmonicSolution& with_gradient(GradientFn g) {
    gradient_ = std::move(g);
    return *this;
  }
  bool has_gradient() const { return static_cast<bool>(gradient_); }
  Gradient exact_gradient(Complex z) const { return gradient_(z); }

  HarmonicSolution& with_boundary_extension(Scalar b) {
    boundary_ = std::move(b);
    return *this;
  }
  const Scalar& boundary_extension() const { return boundary_; }

 private:
  Scalar u_;
  Membership contains_;
  Scalar clearance_;
  std::string provenance_;
  GradientFn gradient_;
  Scalar boundary_;
};

/// Poisson integral over the unit circle of uniformly sampled data.
/// Throws TooCloseToBoundary within one sample spacing of the circle.
double poisson_disk(std::span<const double> data, Complex z);

/// Harmonic conjugate of u on D_R(z0), normalized to vanish at z0.
double local_conjugate(const HarmonicSolution& u, Complex z0, double R, Complex z);

/// (u_x, u_y). Requires clearance(z) >= 2h.
Gradient harmonic_gradient(const HarmonicSolution& u, Complex z, double h = 0.0);

/// Derivative along the right-hand normal (y', -x')/|gamma'| at sample k of a
/// smooth curve lying inside the domain of u.
double normal_derivative(const HarmonicSolution& u, const ClosedCurve& curve, std::size_t k);

struct DirichletOptions {
  /// Geometric resolution; 0 selects the largest boundary sample gap.
  double h = 0.0;
  /// Zipper nodes per boundary sample.
  std::size_t refine = 4;
  /// Stop when the a-priori fixed-point error bound drops below this.
  double eps_fix = 1e-8;
  /// Declare stalling when the contraction factor exceeds 1 - delta_m.
  double delta_m = 1e-3;
};

struct DirichletReport {
  double contraction = 0.0;  // m / 2pi
  std::size_t iterations = 0;
  double bound = 0.0;        // a-priori error bound at exit
  std::vector<double> gaps;  // sup-norm gap between successive iterates
};

/// Dirichlet solver for a bounded Jordan domain. The geometry (cut arcs,
/// channel domains and their conformal maps) is built once; each solve()
/// runs the alternating fixed-point iteration for one set of boundary data.
class DirichletSolver {
 public:
  explicit DirichletSolver(const BoundedDomain& domain, DirichletOptions options = {});
  ~DirichletSolver();
  DirichletSolver(DirichletSolver&&) noexcept;
  DirichletSolver& operator=(DirichletSolver&&) noexcept;

  HarmonicSolution solve(const BoundaryData& data, DirichletReport* report = nullptr) const;

  const BoundedDomain& domain() const;
  const CutArcs& arcs() const;
  double resolution() const;
  double contraction() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

HarmonicSolution dirichlet_solve(const BoundedDomain& domain, const BoundaryData& data,
                                 DirichletOptions options = {}, DirichletReport* report = nullptr);

/// omega(., Gamma_j, D).
HarmonicSolution harmonic_measure(const BoundedDomain& domain, std::size_t j, DirichletOptions options = {});
std::vector<HarmonicSolution> harmonic_measures(const DirichletSolver& solver);

/// Conjugate periods P[k][j] = -(contour integral of d omega_j / dn) around Gamma_k,
/// on contours offset 5h into the domain.
std::vector<std::vector<double>> riemann_matrix(const DirichletSolver& solver,
                                                const std::vector<HarmonicSolution>& measures);
std::vector<std::vector<double>> riemann_matrix(const BoundedDomain& domain, DirichletOptions options = {});

/// Unbounded domains, handled through z -> 1/(z - c) with c inside the first hole.
struct UnboundedHarmonics {
  std::vector<double> omega_infinity;        // omega(inf, Gamma_j, D), input labels
  std::vector<std::vector<double>> periods;  // P[k][j], input labels
};
UnboundedHarmonics unbounded_harmonics(const DomainSpec& domain, DirichletOptions options = {});

/// Dirichlet integral over a polar grid about an interior point of the
/// innermost region, clearance h from the boundary, one Richardson step.
double dirichlet_integral(const HarmonicSolution& u, const BoundedDomain& domain, double h = 0.0);

/// Conformal map f of an annulus 1 - width < |w| < 1 + width onto a
/// neighborhood of one boundary curve gamma = f(unit circle).
struct ReflectionPatch {
  ConformalChain f;
  ConformalChain f_inverse;
  double width = 0.1;
};

/// Odd reflection of u across each patch curve: v = -u(f(1/conj(f^{-1}(z)))) off the domain.
HarmonicSolution reflect_extension(const HarmonicSolution& u, const std::vector<ReflectionPatch>& patches,
                                   double eps_bd = 1e-6);

/// CSV "x,y,u" over an nx-by-ny grid of the box; points outside the domain are skipped.
std::string export_grid_csv(const HarmonicSolution& u, Complex lower_left, Complex upper_right, int nx, int ny);

}  // namespace circmap
