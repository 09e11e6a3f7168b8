#include "circmap/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "json.hpp"

#include "circmap/fourier.hpp"
#include "circmap/parallel.hpp"

namespace circmap {

namespace {

constexpr std::string_view kModule = "harmonic";
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

std::vector<Complex> tangents(const ClosedCurve& c) {
  if (c.smooth()) return {c.derivatives().begin(), c.derivatives().end()};
  const std::size_t n = c.size();
  std::vector<Complex> t(n);
  const double dt = 2.0 * kPi / double(n);
  for (std::size_t k = 0; k < n; ++k) t[k] = (c[(k + 1) % n] - c[(k + n - 1) % n]) / (2.0 * dt);
  return t;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[std::size_t(i)] = z;
    w[std::size_t(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

// Radii at which the ray c + r e^{i theta} crosses the curve.
std::vector<double> ray_crossings(const ClosedCurve& curve, Complex c, double theta) {
  const Complex u = std::polar(1.0, theta);
  std::vector<double> out;
  const std::size_t n = curve.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = curve[i] - c, b = curve[(i + 1) % n] - c;
    const Complex e = b - a;
    const double den = u.real() * e.imag() - u.imag() * e.real();
    if (den == 0.0) continue;
    const double t = (a.real() * e.imag() - a.imag() * e.real()) / den;
    const double f = (a.real() * u.imag() - a.imag() * u.real()) / den;
    if (t > 0.0 && f >= 0.0 && f <= 1.0) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return b - a <= 1e-12 * (1.0 + b); }),
            out.end());
  return out;
}

}  // namespace

BoundaryData BoundaryData::constant(const BoundedDomain& domain, double c) {
  BoundaryData d;
  for (const auto& curve : domain.boundary) d.values.emplace_back(curve.size(), c);
  d.continuous.assign(domain.n(), true);
  return d;
}

BoundaryData BoundaryData::indicator(const BoundedDomain& domain, std::size_t j) {
  if (j >= domain.n()) throw Error(Errc::InvalidInput, kModule, "component index out of range");
  BoundaryData d = constant(domain, 0.0);
  std::fill(d.values[j].begin(), d.values[j].end(), 1.0);
  return d;
}

BoundaryData BoundaryData::sampled(const BoundedDomain& domain, const std::function<double(Complex)>& f) {
  BoundaryData d;
  for (const auto& curve : domain.boundary) {
    std::vector<double> v;
    for (const auto& z : curve.samples()) v.push_back(f(z));
    d.values.push_back(std::move(v));
  }
  d.continuous.assign(domain.n(), true);
  return d;
}

std::string BoundaryData::to_json() const {
  nlohmann::json doc = nlohmann::json::array();
  for (std::size_t j = 0; j < values.size(); ++j) doc.push_back({{"component", j}, {"values", values[j]}});
  return doc.dump();
}

BoundaryData BoundaryData::from_json(const std::string& text, const BoundedDomain& domain) {
  BoundaryData d;
  d.values.resize(domain.n());
  std::vector<bool> seen(domain.n(), false);
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& rec : doc) {
      const auto j = rec.at("component").get<std::size_t>();
      if (j >= domain.n()) throw Error(Errc::InvalidInput, kModule, "component index out of range");
      d.values[j] = rec.at("values").get<std::vector<double>>();
      if (d.values[j].size() != domain.boundary[j].size()) {
        throw Error(Errc::InvalidInput, kModule, "values for component " + std::to_string(j) + " are misaligned");
      }
      seen[j] = true;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidInput, kModule, std::string("malformed boundary data: ") + e.what());
  }
  for (std::size_t j = 0; j < seen.size(); ++j) {
    if (!seen[j]) throw Error(Errc::InvalidInput, kModule, "missing values for component " + std::to_string(j));
  }
  d.continuous.assign(domain.n(), true);
  return d;
}

HarmonicSolution::HarmonicSolution(Scalar u, Membership contains, Scalar clearance, std::string provenance)
    : u_(std::move(u)), contains_(std::move(contains)), clearance_(std::move(clearance)),
      provenance_(std::move(provenance)) {}

HarmonicSolution HarmonicSolution::entire(Scalar u, std::string provenance) {
  return HarmonicSolution(
      std::move(u), [](Complex) { return true; }, [](Complex) { return kInf; }, std::move(provenance));
}

double poisson_disk(std::span<const double> data, Complex z) {
  const std::size_t m = data.size();
  if (m == 0) throw Error(Errc::InvalidInput, kModule, "no boundary data");
  const double r2 = std::norm(z);
  if (std::sqrt(r2) >= 1.0 - 2.0 * kPi / double(m)) {
    throw Error(Errc::TooCloseToBoundary, kModule, "Poisson integral point within one sample spacing of the circle");
  }
  double s = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const Complex e = std::polar(1.0, 2.0 * kPi * double(k) / double(m));
    s += data[k] * (1.0 - r2) / std::norm(e - z);
  }
  return s / double(m);
}

double local_conjugate(const HarmonicSolution& u, Complex z0, double R, Complex z) {
  if (!(u.clearance(z0) >= R)) {
    throw Error(Errc::DiskNotContained, kModule, "disk of radius " + std::to_string(R) + " leaves the domain");
  }
  const Complex zeta = z - z0;
  const double a = std::abs(zeta);
  if (a >= R) throw Error(Errc::OutOfDomain, kModule, "point outside the conjugation disk");
  if (a == 0.0) return 0.0;
  const double r = std::sqrt(a * R);
  double prev = kInf;
  for (std::size_t m = 64; m <= 4096; m *= 2) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const Complex e = std::polar(r, 2.0 * kPi * double(k) / double(m));
      s += u(z0 + e) * ((e + zeta) / (e - zeta)).imag();
    }
    s /= double(m);
    if (std::abs(s - prev) < 1e-12) return s;
    prev = s;
  }
  return prev;
}

Gradient harmonic_gradient(const HarmonicSolution& u, Complex z, double h) {
  const double clear = u.clearance(z);
  if (!(clear > 0.0) || (h > 0.0 && clear < 2.0 * h)) {
    throw Error(Errc::DiskNotContained, kModule, "gradient point too close to the boundary");
  }
  if (u.has_gradient()) return u.exact_gradient(z);
  const double rho = std::min(0.5 * clear, 1.0);
  constexpr std::size_t M = 32;
  Complex s{};
  for (std::size_t k = 0; k < M; ++k) {
    const double th = 2.0 * kPi * double(k) / double(M);
    s += u(z + std::polar(rho, th)) * std::polar(1.0, -th);
  }
  const Complex fp = 2.0 * s / (double(M) * rho);
  return {fp.real(), -fp.imag()};
}

double normal_derivative(const HarmonicSolution& u, const ClosedCurve& curve, std::size_t k) {
  if (!curve.smooth()) throw Error(Errc::MissingDerivatives, kModule, "normal derivative needs derivative samples");
  const Complex t = curve.derivatives()[k];
  const auto g = harmonic_gradient(u, curve[k]);
  return (g.ux * t.imag() - g.uy * t.real()) / std::abs(t);
}

std::vector<HarmonicSolution> harmonic_measures(const DirichletSolver& solver) {
  std::vector<HarmonicSolution> out;
  for (std::size_t j = 0; j < solver.domain().n(); ++j) {
    out.push_back(solver.solve(BoundaryData::indicator(solver.domain(), j)));
  }
  return out;
}

HarmonicSolution harmonic_measure(const BoundedDomain& domain, std::size_t j, DirichletOptions options) {
  return DirichletSolver(domain, options).solve(BoundaryData::indicator(domain, j));
}

std::vector<std::vector<double>> riemann_matrix(const DirichletSolver& solver,
                                                const std::vector<HarmonicSolution>& measures) {
  const auto& domain = solver.domain();
  const std::size_t n = domain.n();
  const double offset = 5.0 * solver.resolution();
  std::vector<std::vector<double>> P(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    const ClosedCurve& curve = domain.boundary[k];
    const ClosedCurve base = curve.smooth() ? curve.resampled(std::max<std::size_t>(256, curve.size())) : curve;
    const auto t = tangents(base);
    std::vector<Complex> contour(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      contour[i] = base[i] + offset * Complex(0.0, -1.0) * t[i] / std::abs(t[i]);
      if (!domain.contains(contour[i]) || domain.clearance(contour[i]) < 0.5 * offset) {
        throw Error(Errc::OffsetContourFailed, kModule,
                    "offset contour of curve " + std::to_string(k) + " leaves the domain");
      }
    }
    const auto dc = fourier::derivative(contour);
    const double dt = 2.0 * kPi / double(contour.size());
    std::vector<std::vector<double>> terms(contour.size(), std::vector<double>(n));
    parallel_for(contour.size(), [&](std::size_t i) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto g = harmonic_gradient(measures[j], contour[i]);
        terms[i][j] = g.ux * dc[i].imag() - g.uy * dc[i].real();
      }
    });
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (const auto& row : terms) s += row[j];
      P[k][j] = -s * dt;
    }
  }
  return P;
}

std::vector<std::vector<double>> riemann_matrix(const BoundedDomain& domain, DirichletOptions options) {
  const DirichletSolver solver(domain, options);
  return riemann_matrix(solver, harmonic_measures(solver));
}

UnboundedHarmonics unbounded_harmonics(const DomainSpec& domain, DirichletOptions options) {
  const BoundedDomain inv = invert(domain, inscribed_disk(domain.boundary[0]).first);
  const DirichletSolver solver(inv, options);
  const auto measures = harmonic_measures(solver);
  const auto P = riemann_matrix(solver, measures);
  const std::size_t n = inv.n();
  UnboundedHarmonics out;
  out.omega_infinity.assign(n, 0.0);
  out.periods.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    out.omega_infinity[inv.source[k]] = measures[k](0.0);
    for (std::size_t j = 0; j < n; ++j) out.periods[inv.source[k]][inv.source[j]] = P[k][j];
  }
  return out;
}

double dirichlet_integral(const HarmonicSolution& u, const BoundedDomain& domain, double h) {
  if (h <= 0.0) h = 0.25 * default_resolution(domain.boundary);
  Complex c;
  if (domain.n() == 1) {
    c = inscribed_disk(domain.boundary[0]).first;
  } else if (domain.n() == 2) {
    c = inscribed_disk(domain.boundary[1]).first;
  } else {
    throw Error(Errc::GridGenerationFailed, kModule, "polar grid needs a domain with at most one hole");
  }
  constexpr std::size_t angles = 128;
  constexpr int radial = 24;
  const auto [gx, gw] = gauss_legendre(radial);

  std::vector<double> r_in(angles, 0.0), r_out(angles, 0.0);
  for (std::size_t a = 0; a < angles; ++a) {
    const double th = 2.0 * kPi * double(a) / double(angles);
    const auto out = ray_crossings(domain.boundary[0], c, th);
    if (out.size() != 1) throw Error(Errc::GridGenerationFailed, kModule, "ray meets the outer curve more than once");
    r_out[a] = out[0];
    if (domain.n() == 2) {
      const auto in = ray_crossings(domain.boundary[1], c, th);
      if (in.size() != 1) throw Error(Errc::GridGenerationFailed, kModule, "ray meets the inner curve more than once");
      r_in[a] = in[0];
    }
  }

  auto integral = [&](double clear) {
    std::vector<double> per(angles, 0.0);
    parallel_for(angles, [&](std::size_t a) {
      const double th = 2.0 * kPi * double(a) / double(angles);
      const double lo = domain.n() == 2 ? r_in[a] + clear : 0.0;
      const double hi = r_out[a] - clear;
      if (hi <= lo) throw Error(Errc::GridGenerationFailed, kModule, "clearance exceeds the ring width");
      double s = 0.0;
      for (int i = 0; i < radial; ++i) {
        const double r = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gx[std::size_t(i)];
        const auto g = harmonic_gradient(u, c + std::polar(r, th));
        s += gw[std::size_t(i)] * (g.ux * g.ux + g.uy * g.uy) * r;
      }
      per[a] = 0.5 * (hi - lo) * s;
    });
    double total = 0.0;
    for (double v : per) total += v;
    return total * 2.0 * kPi / double(angles);
  };
  const double coarse = integral(h);
  const double fine = integral(0.5 * h);
  return 2.0 * fine - coarse;
}

HarmonicSolution reflect_extension(const HarmonicSolution& u, const std::vector<ReflectionPatch>& patches,
                                   double eps_bd) {
  auto in_ring = [](const ReflectionPatch& p, Complex z) -> std::optional<Complex> {
    try {
      const Complex w = p.f_inverse.eval(z);
      const double r = std::abs(w);
      if (r > 1.0 - p.width && r < 1.0 + p.width) return w;
    } catch (const Error&) {
    }
    return std::nullopt;
  };

  constexpr std::size_t samples = 64;
  double thick = kInf;
  for (std::size_t a = 0; a < patches.size(); ++a) {
    const auto& p = patches[a];
    for (std::size_t k = 0; k < samples; ++k) {
      const Complex e = std::polar(1.0, 2.0 * kPi * double(k) / double(samples));
      const Complex on = p.f.eval(e);
      const Complex inner = p.f.eval((1.0 - 0.5 * p.width) * e), outer = p.f.eval((1.0 + 0.5 * p.width) * e);
      thick = std::min({thick, std::abs(inner - on), std::abs(outer - on)});
      for (std::size_t b = 0; b < patches.size(); ++b) {
        if (b != a && (in_ring(patches[b], inner) || in_ring(patches[b], outer) || in_ring(patches[b], on))) {
          throw Error(Errc::PatchesOverlap, kModule,
                      "reflection patches " + std::to_string(a) + " and " + std::to_string(b) + " overlap");
        }
      }
      const Complex side = u.contains(inner) ? (1.0 - 1e-9) * e : (1.0 + 1e-9) * e;
      const double v = u(p.f.eval(side));
      if (std::abs(v) > eps_bd) {
        throw Error(Errc::BoundaryValueNotZero, kModule,
                    "boundary value " + std::to_string(v) + " on patch " + std::to_string(a) + " is not zero");
      }
    }
  }

  auto value = [u, patches, in_ring](Complex z) {
    if (u.contains(z)) return u(z);
    for (const auto& p : patches) {
      if (const auto w = in_ring(p, z)) {
        const Complex zs = p.f.eval(1.0 / std::conj(*w));
        if (u.contains(zs)) return -u(zs);
      }
    }
    throw Error(Errc::OutOfDomain, kModule, "point outside the domain and every reflection patch");
  };
  auto contains = [u, patches, in_ring](Complex z) {
    if (u.contains(z)) return true;
    for (const auto& p : patches) {
      if (in_ring(p, z)) return true;
    }
    return false;
  };
  auto clearance = [u, thick](Complex z) {
    const double c = u.clearance(z);
    return u.contains(z) ? c + thick : std::max(thick - c, 0.0);
  };
  return HarmonicSolution(value, contains, clearance, u.provenance() + " + odd reflection");
}

std::string export_grid_csv(const HarmonicSolution& u, Complex lower_left, Complex upper_right, int nx, int ny) {
  std::string out = "x,y,u\n";
  char buf[128];
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double x = lower_left.real() + (upper_right.real() - lower_left.real()) * (nx > 1 ? double(i) / (nx - 1) : 0.5);
      const double y = lower_left.imag() + (upper_right.imag() - lower_left.imag()) * (ny > 1 ? double(j) / (ny - 1) : 0.5);
      if (!u.contains({x, y})) continue;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x, y, u({x, y}));
      out += buf;
    }
  }
  return out;
}

}  // namespace circmap
