#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "circmap/harmonic.hpp"
#include "circmap/koebe.hpp"
#include "circmap/verify.hpp"

namespace fs = std::filesystem;
using namespace circmap;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void guarded(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

DomainSpec three_ellipses(std::size_t n = 256) {
  return validate_nesting({ClosedCurve::ellipse(0, 1.2, 1.0, n), ClosedCurve::ellipse({3.5, 1}, 1.2, 1.0, n, 0.5),
                           ClosedCurve::ellipse({-3, 2}, 1.2, 1.0, n, 1.0)});
}

// 1/(z + 0.5) carries the ring between |z| = 1 and |z - 0.3| = 0.3 to the
// exterior of two disjoint disks with 0 inside the first.
DomainSpec eccentric_ring(std::size_t n = 256) {
  auto image = [n](Complex c, double r) {
    return ClosedCurve::circle(c, r, n).mapped([](Complex z) { return 1.0 / (z + 0.5); },
                                               [](Complex z) { return -1.0 / ((z + 0.5) * (z + 0.5)); });
  };
  return validate_nesting({image(0, 1), image(0.3, 0.3)});
}

struct Emitted {
  ConformalChain chain;
  CircularDomain circles;
  DomainSpec domain;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main() {
  std::vector<Emitted> emitted(3);

  guarded(1, [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto d = validate_nesting(
        {ClosedCurve::circle(0.5, 1, 256), ClosedCurve::circle(-4, 1, 256), ClosedCurve::circle(4, 1, 256)});
    const auto r = koebe_run(d, {});
    const double t = seconds_since(t0);
    double sup = 0.0;
    for (const auto& z : probe_points(d, 200)) sup = std::max(sup, std::abs(r.chain.eval(z) - z));
    emitted[0] = {r.chain, r.circles, d};
    report(1, sup <= 1e-6 && t < 30.0, fmt("identity on round holes: sup|f(z) - z| = %.3g (<= 1e-6), %.2f s (< 30 s)", sup, t));
  });

  double komatu_q = 0.0;
  std::vector<double> komatu_gaps;
  guarded(2, [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto d = eccentric_ring();
    const auto r = komatu_2connected(d, {});
    const double t = seconds_since(t0);
    const double I = (1.0 + 0.09 - 0.09) / (2.0 * 0.3);
    const double oracle = I + std::sqrt(I * I - 1.0);
    const double out = exterior_ring_modulus(r.circles.circles[0], r.circles.circles[1]);
    const double rel = std::max(std::abs(r.report.modulus - oracle), std::abs(out - oracle)) / oracle;
    komatu_q = r.report.q;
    komatu_gaps = r.report.gaps;
    emitted[1] = {r.chain, r.circles, d};
    report(2, rel <= 1e-3 && t < 60.0,
           fmt("ring modulus %.10f, oracle %.10f, rel err %.3g (<= 1e-3), %.2f s (< 60 s)", out, oracle, rel, t));
  });

  guarded(3, [&] {
    const auto d = validate_bounded({ClosedCurve::circle(0, 1, 256), ClosedCurve::circle(0, 0.5, 256)});
    const auto w = harmonic_measure(d, d.source[0] == 1 ? 0 : 1);
    const double D = dirichlet_integral(w, d);
    const double exact = 2.0 * std::numbers::pi / std::log(2.0);
    const double mu = std::exp(2.0 * std::numbers::pi / D);
    report(3, std::abs(D - exact) <= 1e-3 && std::abs(mu - 2.0) <= 1e-3,
           fmt("D = %.7f vs %.7f (+-1e-3), exp(2pi/D) = %.7f vs 2 (+-1e-3)", D, exact, mu));
  });

  guarded(4, [&] {
    if (komatu_gaps.size() < 2) throw std::runtime_error("Komatu iteration did not produce two gaps");
    // successive gaps below this floor are at the resolution of the boundary maps
    constexpr double floor = 1e-6;
    const double q2 = komatu_q * komatu_q;
    double worst = 0.0;
    std::size_t pairs = 0;
    for (std::size_t k = 0; k + 1 < komatu_gaps.size(); ++k) {
      if (komatu_gaps[k + 1] < floor) break;
      worst = std::max(worst, komatu_gaps[k + 1] / komatu_gaps[k]);
      ++pairs;
    }
    std::string gaps;
    for (double g : komatu_gaps) gaps += fmt(" %.2e", g);
    report(4, pairs > 0 && worst <= q2,
           fmt("max gap ratio %.4f over %zu pairs, q^2 = %.4f; gaps", worst, pairs, q2) + gaps);
  });

  guarded(5, [&] {
    const auto d = validate_bounded({ClosedCurve::circle(0, 1, 256), ClosedCurve::circle(0, 0.5, 256)});
    const DirichletSolver solver(d);
    const auto w = harmonic_measures(solver);
    const std::size_t inner = d.source[0] == 1 ? 0 : 1;
    double err = 0.0, sum = 0.0;
    for (int k = 0; k < 50; ++k) {
      const Complex z = std::polar(0.52 + 0.46 * double(k % 10) / 9.0, 0.37 * k + 0.1);
      err = std::max(err, std::abs(w[inner](z) - std::log(std::abs(z)) / std::log(0.5)));
      sum = std::max(sum, std::abs(w[0](z) + w[1](z) - 1.0));
    }
    const auto P = riemann_matrix(solver, w);
    const double exact = 2.0 * std::numbers::pi / std::log(2.0);
    const double perr = std::abs(std::abs(P[inner][inner]) - exact);

    const auto d3 = validate_bounded({ClosedCurve::ellipse(0, 2.2, 1.8, 256), ClosedCurve::circle({-0.9, 0.2}, 0.35, 256),
                                      ClosedCurve::ellipse({0.9, -0.3}, 0.45, 0.3, 256, 0.4)});
    const auto w3 = harmonic_measures(DirichletSolver(d3));
    for (int k = 0; k < 50; ++k) {
      const Complex z(-1.6 + 3.2 * double(k % 10) / 9.0, -1.2 + 2.4 * double(k / 10) / 4.0);
      if (!d3.contains(z)) continue;
      sum = std::max(sum, std::abs(w3[0](z) + w3[1](z) + w3[2](z) - 1.0));
    }
    report(5, err <= 1e-4 && sum <= 1e-6 && perr <= 1e-3,
           fmt("max |omega - ln|z|/ln r| = %.3g (<= 1e-4), max |sum omega - 1| = %.3g (<= 1e-6), |P - 2pi/ln 2| = %.3g (<= 1e-3)",
               err, sum, perr));
  });

  guarded(6, [&] {
    const auto d = validate_bounded({ClosedCurve::ellipse(0, 2.2, 1.8, 256), ClosedCurve::circle({-0.9, 0.2}, 0.35, 256),
                                     ClosedCurve::ellipse({0.9, -0.3}, 0.45, 0.3, 256, 0.4)});
    const auto P = riemann_matrix(d);
    const double asym = std::abs(P[1][2] - P[2][1]);
    report(6, asym <= 1e-4, fmt("P[1][2] = %.8f, P[2][1] = %.8f, difference %.3g (<= 1e-4)", P[1][2], P[2][1], asym));
  });

  guarded(7, [&] {
    const std::pair<const char*, HarmonicSolution::Scalar> fns[] = {
        {"Re z", [](Complex z) { return z.real(); }},
        {"x^2 - y^2", [](Complex z) { return (z * z).real(); }},
        {"log|z - 2|", [](Complex z) { return std::log(std::abs(z - 2.0)); }},
    };
    const double s = 1e-3;
    const Complex probes[] = {{0, 0}, {0.3, 0.2}, {-0.5, 0.4}, {0.1, -0.6}, {0.6, 0.5}, {-0.7, -0.3}};
    std::string detail;
    double worst = 0.0;
    for (const auto& [name, f] : fns) {
      const HarmonicSolution u(
          f, [](Complex z) { return std::abs(z) < 1.0; }, [](Complex z) { return 1.0 - std::abs(z); }, name);
      auto v = [&](Complex z) { return local_conjugate(u, 0.0, 1.0, z); };
      double res = 0.0;
      for (const auto& z : probes) {
        const Complex dx(s, 0), dy(0, s);
        const double ux = (u(z + dx) - u(z - dx)) / (2 * s), uy = (u(z + dy) - u(z - dy)) / (2 * s);
        const double vx = (v(z + dx) - v(z - dx)) / (2 * s), vy = (v(z + dy) - v(z - dy)) / (2 * s);
        res = std::max(res, std::max(std::abs(ux - vy), std::abs(uy + vx)));
      }
      worst = std::max(worst, res);
      detail += fmt("%s%s %.2e", detail.empty() ? "" : ", ", name, res);
    }
    report(7, worst <= 1e-5, "Cauchy-Riemann residuals (<= 1e-5): " + detail);
  });

  guarded(8, [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto d = three_ellipses();
    const Certificate cert = error_bound(d, 1e-3);
    KoebeOptions o;
    o.mode = KoebeMode::Certified;
    o.tol = 1e-3;
    o.certificate = cert;
    o.probes = probe_points(d, 200);
    const auto r = koebe_run(d, o);
    double slack = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < r.report.gaps.size(); ++j) {
      slack = std::max(slack, std::log(r.report.gaps[j]) - cert.log_bound(j));
    }
    const double final_res = circularity_report(r.curves).global;
    const bool within = std::isinf(cert.log10_N_star) ? r.report.steps == 0
                                                       : std::log10(double(r.report.steps)) <= cert.log10_N_star;
    emitted[2] = {r.chain, r.circles, d};
    report(8, slack <= 0.0 && within && final_res <= 1e-3 && !r.report.gaps.empty(),
           fmt("%zu gaps, max log(gap) - log(bound) = %.4g (<= 0), %zu steps vs N_star = 10^%.6g, final residual %.3g "
               "(<= 1e-3), %.1f s",
               r.report.gaps.size(), slack, r.report.steps, cert.log10_N_star, final_res, seconds_since(t0)));
  });

  guarded(9, [&] {
    std::string detail;
    bool pass = true;
    const char* names[] = {"round holes", "eccentric ring", "three ellipses"};
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& e = emitted[i];
      if (e.domain.n() == 0) throw std::runtime_error(std::string("no map emitted for ") + names[i]);
      const auto q = quarter_theorem_check(e.chain, e.domain.boundary, e.circles, probe_points(e.domain, 100), 0.1);
      pass = pass && q.pass && q.probes == 100;
      detail += fmt("%s%s %s (margins %.3g, %.3g)", i ? ", " : "", names[i], q.pass ? "holds" : "fails",
                    q.lower_margin, q.upper_margin);
    }
    report(9, pass, "100 probes, 10% slack: " + detail);
  });

  guarded(10, [&] {
    const auto d = three_ellipses();
    double dist[3];
    const double tols[] = {1e-2, 1e-3, 1e-4};
    for (int i = 0; i < 3; ++i) {
      KoebeOptions o;
      o.tol = tols[i];
      const auto r = koebe_run(d, o);
      dist[i] = boundary_roundtrip(r.chain, r.circles, d);
    }
    const bool monotone = dist[1] <= 1.2 * dist[0] && dist[2] <= 1.2 * dist[1];
    report(10, dist[2] <= 5e-3 && monotone,
           fmt("Hausdorff distance %.3g / %.3g / %.3g at tol 1e-2 / 1e-3 / 1e-4 (last <= 5e-3, non-increasing within 20%%)",
               dist[0], dist[1], dist[2]));
  });

  guarded(11, [&] {
    const fs::path dir = fs::temp_directory_path() / "circmap_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto d = three_ellipses();
    std::ofstream(dir / "in.json") << curves_to_json(d.boundary);
    const char* files[] = {"circles.json", "certificate.json", "domain.svg", "image.svg"};
    std::vector<std::string> runs[2];
    for (int k = 0; k < 2; ++k) {
      const fs::path out = dir / ("run" + std::to_string(k));
      const std::string cmd = std::string("\"") + CIRCMAP_CLI + "\" map --input \"" + (dir / "in.json").string() +
                              "\" --mode certified --tol 1e-3 --plot --out \"" + out.string() + "\" > \"" +
                              (dir / "log").string() + "\" 2>&1";
      if (std::system(cmd.c_str()) != 0) throw std::runtime_error("CLI run failed: " + slurp(dir / "log"));
      for (const char* f : files) runs[k].push_back(slurp(out / f));
    }
    bool same = true;
    std::string detail;
    for (std::size_t i = 0; i < runs[0].size(); ++i) {
      const bool eq = !runs[0][i].empty() && runs[0][i] == runs[1][i];
      same = same && eq;
      detail += fmt("%s%s %s", i ? ", " : "", files[i], eq ? "identical" : "differs");
    }
    report(11, same, "two CLI runs: " + detail);
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
