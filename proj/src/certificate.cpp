#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "circmap/koebe.hpp"

namespace circmap {

namespace {

constexpr std::string_view kModule = "koebe_engine";
constexpr double kLn10 = std::numbers::ln10;

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Decimal literal for 10^l10, valid JSON beyond the double range.
std::string power_of_ten(double l10) {
  if (std::isinf(l10) && l10 < 0) return "0";
  if (l10 > -300.0 && l10 < 300.0) return number(std::pow(10.0, l10));
  double e = std::floor(l10);
  double m = std::pow(10.0, l10 - e);
  if (m >= 10.0) {
    m /= 10.0;
    e += 1.0;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17ge%+.0f", m, e);
  return buf;
}

// Decimal literal for 1 - 10^l10 (l10 < 0), exact to 17 significant digits of the complement.
std::string one_minus(double l10) {
  if (l10 > -15.0) return number(1.0 - std::pow(10.0, l10));
  double e = std::floor(l10);
  double m = std::pow(10.0, l10 - e);
  if (m >= 10.0) {
    m /= 10.0;
    e += 1.0;
  }
  const auto digits = static_cast<unsigned long long>(std::llround(m * 1e16));
  const unsigned long long tail = 100000000000000000ULL - digits;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%017llu", tail);
  return "0." + std::string(std::size_t(-e - 1.0), '9') + buf;
}

}  // namespace

double Certificate::E_R() const { return std::exp(log_E_R); }
double Certificate::gamma_plus() const { return std::exp(log_gamma_plus); }
double Certificate::mu_plus() const { return 1.0 - std::exp(log_one_minus_mu); }
double Certificate::N_star() const { return std::isinf(log10_N_star) ? 0.0 : std::round(std::pow(10.0, log10_N_star)); }

double Certificate::log_bound(std::size_t j) const {
  return log_gamma_plus - double(j / n) * std::exp(log_neg_log_mu);
}

Certificate certificate_from(std::size_t n, double R, Complex z0, double log_E_R, std::array<double, 2> lambda,
                             double tol) {
  const double lam = std::min(lambda[0], lambda[1]);
  if (!(lam > 0.0) || !(R > 0.0) || !(tol > 0.0) || n == 0) {
    throw Error(Errc::InvalidInput, kModule, "certificate inputs must be positive");
  }
  Certificate c;
  c.n = n;
  c.R = R;
  c.z0 = z0;
  c.log_E_R = log_E_R;
  c.lambda = lambda;
  c.tol = tol;

  const double log_a = 3.0 * log_E_R + std::log(lam) - std::log(4.0);  // a = E^3 lambda / 4
  const double log_L = log_a < -30.0 ? log_a : std::log(std::log1p(std::exp(log_a)));  // L = log(1 + a)
  c.log_neg_log_mu = log_L;
  c.log_one_minus_mu = log_a - softplus(log_a);
  c.log_gamma_plus = std::log(72.0) + std::log(R) + softplus(-(2.0 * log_E_R + log_L)) +
                     softplus(2.0 * log_E_R + std::log(lam)) - (3.0 * log_E_R + std::log(lam));

  const double excess = c.log_gamma_plus - std::log(tol);
  if (excess <= 0.0) {
    c.log10_N_star = -std::numeric_limits<double>::infinity();
  } else {
    const double log_rounds = std::log(excess) - log_L;
    if (log_rounds < 40.0) {
      c.log10_N_star = std::log10(double(n) * std::ceil(std::exp(log_rounds)));
    } else {
      c.log10_N_star = (std::log(double(n)) + log_rounds) / kLn10;
    }
  }
  return c;
}

std::string Certificate::to_json() const {
  std::string out = "{";
  out += "\"R\":" + number(R);
  out += ",\"z0\":[" + number(z0.real()) + "," + number(z0.imag()) + "]";
  out += ",\"E_R\":" + power_of_ten(log_E_R / kLn10);
  out += ",\"lambda\":[" + number(lambda[0]) + "," + number(lambda[1]) + "]";
  out += ",\"gamma_plus\":" + power_of_ten(log_gamma_plus / kLn10);
  out += ",\"mu_plus\":" + one_minus(log_one_minus_mu / kLn10);
  out += ",\"N_star\":" + (log10_N_star < 15.0 ? number(N_star()) : power_of_ten(log10_N_star));
  out += ",\"n\":" + std::to_string(n);
  out += ",\"tol\":" + number(tol);
  out += ",\"lambda_all\":[";
  for (std::size_t j = 0; j < lambda_all.size(); ++j) out += (j ? "," : "") + number(lambda_all[j]);
  out += "]";
  out += ",\"log10_E_R\":" + number(log_E_R / kLn10);
  out += ",\"log10_gamma_plus\":" + number(log_gamma_plus / kLn10);
  out += ",\"log10_one_minus_mu_plus\":" + number(log_one_minus_mu / kLn10);
  out += ",\"log10_N_star\":" + (std::isinf(log10_N_star) ? std::string("null") : number(log10_N_star));
  out += "}\n";
  return out;
}

std::pair<Complex, double> find_R(const DomainSpec& domain) {
  std::size_t largest = 0;
  for (std::size_t j = 1; j < domain.n(); ++j) {
    if (std::abs(domain.boundary[j].signed_area()) > std::abs(domain.boundary[largest].signed_area())) largest = j;
  }
  const auto [z0, rho_in] = inscribed_disk(domain.boundary[largest]);
  double rho_out = 0.0;
  for (const auto& c : domain.boundary) rho_out = std::max(rho_out, c.max_radius(0.0));
  return {z0, 1.05 * std::max(2.0 / rho_in, 2.0 * rho_out)};
}

double log_epsilon_R(std::span<const double> p_diag, std::span<const double> omega_inf, double R) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < p_diag.size(); ++j) {
    best = std::min(best, -(p_diag[j] / (omega_inf[j] * omega_inf[j]) + 1.0) * R * R);
  }
  return best;
}

double log_epsilon_R(const DomainSpec& domain, double R, Complex z0, DirichletOptions options) {
  const auto where = locate(domain, z0);
  const auto* hole = std::get_if<InHole>(&where);
  if (!hole || domain.boundary[hole->index].distance(z0) < 2.0 / R) {
    throw Error(Errc::RadiusConditionViolated, kModule, "disk of radius 2/R about z0 is not inside a hole");
  }
  for (const auto& c : domain.boundary) {
    if (c.max_radius(0.0) > 0.5 * R) {
      throw Error(Errc::RadiusConditionViolated, kModule, "a hole leaves the disk of radius R/2");
    }
  }
  const auto u = unbounded_harmonics(domain, options);
  std::vector<double> diag;
  for (std::size_t j = 0; j < domain.n(); ++j) diag.push_back(u.periods[j][j]);
  return log_epsilon_R(diag, u.omega_infinity, R);
}

double epsilon_R(const DomainSpec& domain, double R, Complex z0, DirichletOptions options) {
  return std::exp(log_epsilon_R(domain, R, z0, options));
}

double lambda_j(const DomainSpec& domain, std::size_t j, const ExteriorOptions& options) {
  const std::size_t n = domain.n();
  if (n < 3) throw Error(Errc::CertifyUnavailable, kModule, "separation parameters need at least three holes");
  if (j >= n) throw Error(Errc::InvalidInput, kModule, "component index out of range");
  const auto [c, r] = inscribed_disk(domain.boundary[j]);
  const ConformalChain g({MapAtom::mobius(c, r * r - c * c, 1.0, -c)});
  auto push = [&](const ClosedCurve& curve) {
    std::vector<Complex> z, dz;
    for (std::size_t i = 0; i < curve.size(); ++i) {
      const auto [w, dw] = g.eval_with_derivative(curve[i]);
      z.push_back(w);
      if (curve.smooth()) dz.push_back(dw * curve.derivatives()[i]);
    }
    return ClosedCurve(std::move(z), std::move(dz));
  };
  std::vector<ClosedCurve> holes;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != j) holes.push_back(push(domain.boundary[k]));
  }
  const ClosedCurve outer = push(domain.boundary[j]);

  ConformalChain f;
  CircularDomain circles;
  try {
    const DomainSpec e2 = validate_nesting(holes, {.require_zero_in_hole = false});
    if (e2.n() == 2) {
      KomatuOptions ko;
      ko.tol = 1e-6;
      ko.exterior = options;
      auto res = komatu_2connected(e2, ko);
      f = std::move(res.chain);
      circles = std::move(res.circles);
    } else {
      KoebeOptions ko;
      ko.tol = 1e-6;
      ko.exterior = options;
      auto res = koebe_run(e2, ko);
      f = std::move(res.chain);
      circles = std::move(res.circles);
    }
  } catch (const Error& e) {
    throw Error(Errc::RecursionFailed, kModule, std::string("inner circular map failed: ") + e.what());
  }
  double M = 0.0;
  for (const auto& z : outer.samples()) M = std::max(M, std::abs(f.eval(z)));
  M *= 2.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < circles.circles.size(); ++a) {
    for (std::size_t b = a + 1; b < circles.circles.size(); ++b) {
      const auto& A = circles.circles[a];
      const auto& B = circles.circles[b];
      best = std::min(best, (std::abs(A.center - B.center) - A.radius - B.radius) / M);
    }
  }
  return best;
}

Certificate error_bound(const DomainSpec& domain, double tol, DirichletOptions options) {
  if (domain.n() < 3) {
    throw Error(Errc::CertifyUnavailable, kModule, "the error bound applies to n >= 3; use the Komatu or direct mode");
  }
  const auto [z0, R] = find_R(domain);
  const double log_E = log_epsilon_R(domain, R, z0, options);
  std::vector<double> lambdas;
  for (std::size_t j = 0; j < domain.n(); ++j) lambdas.push_back(lambda_j(domain, j));
  Certificate c = certificate_from(domain.n(), R, z0, log_E, {lambdas[0], lambdas[1]}, tol);
  c.lambda_all = std::move(lambdas);
  return c;
}

}  // namespace circmap
