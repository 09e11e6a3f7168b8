#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "circmap/conformal.hpp"
#include "circmap/geometry.hpp"
#include "circmap/harmonic.hpp"

namespace circmap {

struct KoebeState {
  std::size_t k = 0;
  std::vector<ClosedCurve> curves;  // current boundaries, input order
  ConformalChain chain;             // g_k
  std::vector<std::optional<Circle>> circled;
  double h = 0.0;                   // collision resolution
};

KoebeState koebe_init(const DomainSpec& domain, double h = 0.0);

/// Maps the exterior of curve (k mod n) onto a disk exterior and pushes the
/// other curves through that map. Throws CurveCollision when two curves come
/// within 2h of each other.
KoebeState koebe_step(const KoebeState& state, const ExteriorOptions& options = {});

/// Error bound quantities, kept in log form: the bound's constants underflow
/// double precision for any domain of practical interest.
struct Certificate {
  std::size_t n = 0;
  double R = 0.0;
  Complex z0;
  double log_E_R = 0.0;
  std::array<double, 2> lambda{};  // lambda_1, lambda_2
  std::vector<double> lambda_all;  // every lambda_j, for auditing
  double log_gamma_plus = 0.0;
  double log_one_minus_mu = 0.0;  // log(1 - mu+)
  double log_neg_log_mu = 0.0;    // log(-log mu+)
  double tol = 0.0;
  double log10_N_star = 0.0;      // -inf when no steps are needed

  double E_R() const;
  double gamma_plus() const;
  double mu_plus() const;
  /// N_star as a double (inf when it overflows).
  double N_star() const;
  /// Bound gamma+ (mu+)^floor(j/n) on |g_j - f_D|, in log form.
  double log_bound(std::size_t j) const;

  std::string to_json() const;
};

/// Evaluates gamma+, mu+ and N_star from the bound's inputs.
Certificate certificate_from(std::size_t n, double R, Complex z0, double log_E_R, std::array<double, 2> lambda,
                             double tol);

/// (z0, R): z0 is the center of the largest inscribed disk of the largest
/// hole (radius rho_in), R = 1.05 max(2 / rho_in, 2 max|z|).
std::pair<Complex, double> find_R(const DomainSpec& domain);

/// log E_R = min_j -(P_jj / omega_j^2 + 1) R^2.
double log_epsilon_R(std::span<const double> p_diag, std::span<const double> omega_inf, double R);
/// Throws RadiusConditionViolated unless D_{2/R}(z0) lies in a hole and
/// every hole lies in D_{R/2}(0).
double log_epsilon_R(const DomainSpec& domain, double R, Complex z0, DirichletOptions options = {});
double epsilon_R(const DomainSpec& domain, double R, Complex z0, DirichletOptions options = {});

/// Separation parameter for hole j (0-based): minimum Euclidean separation
/// |c1 - c2| - r1 - r2 between the scaled circles of the recursive map.
double lambda_j(const DomainSpec& domain, std::size_t j, const ExteriorOptions& options = {});

Certificate error_bound(const DomainSpec& domain, double tol, DirichletOptions options = {});

enum class KoebeMode { Residual, Certified };

struct KoebeOptions {
  KoebeMode mode = KoebeMode::Residual;
  double tol = 1e-4;
  std::size_t max_rounds = 50;
  std::optional<Certificate> certificate;
  ExteriorOptions exterior;
  double h = 0.0;
  /// Points of the domain at which the iterates g_j are tracked.
  std::vector<Complex> probes;
};

struct KoebeReport {
  std::size_t steps = 0;
  std::vector<std::vector<double>> residuals;  // per step, per component
  std::vector<double> gaps;                    // max over probes |g_{j+n} - g_j|, j = 0, 1, ...
  bool budget_exhausted = false;
  std::string note;

  std::string residuals_csv() const;
};

struct KoebeResult {
  ConformalChain chain;
  CircularDomain circles;
  std::vector<ClosedCurve> curves;
  KoebeReport report;
};

/// Residual mode stops once every curve's circularity residual is <= tol
/// (BudgetExceeded after max_rounds rounds). Certified mode stops at the
/// residual target or after N_star steps, whichever is first, capped at
/// max_rounds rounds (report.budget_exhausted set when the cap binds).
KoebeResult koebe_run(const DomainSpec& domain, const KoebeOptions& options);

struct KomatuOptions {
  double tol = 1e-4;
  double margin = 0.05;  // N = D[phi] (1 + margin)
  ExteriorOptions exterior;
  DirichletOptions dirichlet;
  std::vector<Complex> probes;
};

struct KomatuReport {
  double dirichlet = 0.0;  // D[phi] of the bounded ring
  double N = 0.0;
  double q = 0.0;          // exp(-2 pi / N)
  std::size_t k_star = 0;
  double modulus = 0.0;    // outer / inner radius of the final annulus
  std::vector<double> gaps;
};

struct KomatuResult {
  ConformalChain chain;
  CircularDomain circles;
  KomatuReport report;
};

KomatuResult komatu_2connected(const DomainSpec& domain, const KomatuOptions& options = {});

/// Modulus of the ring between two nested circles, I + sqrt(I^2 - 1).
double ring_modulus(const Circle& outer, const Circle& inner);
/// Modulus of the ring bounded by two disjoint circles in the unbounded picture.
double exterior_ring_modulus(const Circle& a, const Circle& b);

}  // namespace circmap
