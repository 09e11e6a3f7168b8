#include "circmap/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "circmap/harmonic.hpp"
#include "circmap/koebe.hpp"
#include "circmap/verify.hpp"

namespace circmap {

namespace {

constexpr std::string_view kModule = "cli";
constexpr double kInf = std::numeric_limits<double>::infinity();
namespace fs = std::filesystem;

std::string read_file(const std::string& path, Errc code = Errc::InvalidInput) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(code, kModule, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidInput, kModule, "cannot write " + path.string());
  out << text;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DomainSpec load_domain(const RunConfig& config) {
  if (config.resolution < 64) throw Error(Errc::InvalidInput, kModule, "resolution must be at least 64");
  if (!(config.tol > 0.0)) throw Error(Errc::InvalidInput, kModule, "tolerance must be positive");
  auto curves = curves_from_json(read_file(config.input));
  for (auto& c : curves) {
    if (c.size() != config.resolution) c = c.resampled(config.resolution);
  }
  return validate_nesting(std::move(curves));
}

std::string circles_json(const CircularDomain& d) {
  std::string out = "{\"circles\":[";
  for (std::size_t j = 0; j < d.circles.size(); ++j) {
    const auto& c = d.circles[j];
    out += (j ? "," : "");
    out += "{\"center\":[" + fmt(c.center.real()) + "," + fmt(c.center.imag()) + "],\"radius\":" + fmt(c.radius) + "}";
  }
  return out + "]}\n";
}

CircularDomain read_circles(const std::string& text) {
  CircularDomain d;
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& c : doc.at("circles")) {
      d.circles.push_back({{c.at("center").at(0).get<double>(), c.at("center").at(1).get<double>()},
                           c.at("radius").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidInput, kModule, std::string("malformed circles.json: ") + e.what());
  }
  return d;
}

struct Box {
  double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
  void add(Complex z) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  Box padded(double fraction) const {
    const double p = fraction * std::max(xmax - xmin, ymax - ymin);
    return {xmin - p, xmax + p, ymin - p, ymax + p};
  }
  Complex at(double u, double v) const { return {xmin + (xmax - xmin) * u, ymin + (ymax - ymin) * v}; }
};

Box domain_box(const DomainSpec& d) {
  Box b;
  for (const auto& c : d.boundary) {
    for (const auto& z : c.samples()) b.add(z);
  }
  return b.padded(0.25);
}

bool in_domain(const DomainSpec& d, Complex z) {
  try {
    return std::holds_alternative<InDomain>(locate(d, z));
  } catch (const Error&) {
    return false;
  }
}

std::string mapped_points_csv(const ConformalChain& f, const DomainSpec& d, int nx, int ny) {
  const Box b = domain_box(d);
  std::string out = "x,y,fx,fy\n";
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Complex z = b.at(nx > 1 ? double(i) / (nx - 1) : 0.5, ny > 1 ? double(j) / (ny - 1) : 0.5);
      if (!in_domain(d, z)) continue;
      Complex w;
      try {
        w = f.eval(z);
      } catch (const Error&) {
        continue;
      }
      out += fmt(z.real()) + "," + fmt(z.imag()) + "," + fmt(w.real()) + "," + fmt(w.imag()) + "\n";
    }
  }
  return out;
}

struct MapOutcome {
  ConformalChain chain;
  CircularDomain circles;
  std::string method;
  std::string details;
  std::optional<Certificate> certificate;
  bool budget_exhausted = false;
};

MapOutcome run_map(const DomainSpec& domain, const RunConfig& config) {
  MapOutcome out;
  const std::size_t n = domain.n();
  const bool auto_mode = config.mode == "auto";
  if (n == 1 && auto_mode) {
    auto e = exterior_map(domain.boundary[0]);
    out.chain = std::move(e.chain);
    out.circles.circles = {e.circle};
    out.method = "exterior map";
    return out;
  }
  if (n == 2 && auto_mode) {
    KomatuOptions ko;
    ko.tol = config.tol;
    auto r = komatu_2connected(domain, ko);
    out.chain = std::move(r.chain);
    out.circles = std::move(r.circles);
    out.method = "Komatu";
    char buf[256];
    std::snprintf(buf, sizeof buf, "dirichlet_integral %.17g\nmodulus_bound_N %.17g\nq %.17g\nk_star %zu\nmodulus %.17g\n",
                  r.report.dirichlet, r.report.N, r.report.q, r.report.k_star, r.report.modulus);
    out.details = buf;
    for (std::size_t k = 0; k < r.report.gaps.size(); ++k) out.details += "gap " + std::to_string(k) + " " + fmt(r.report.gaps[k]) + "\n";
    return out;
  }
  KoebeOptions ko;
  ko.tol = config.tol;
  const bool certified = (config.mode == "certified" || auto_mode) && n >= 3;
  if (certified) {
    out.certificate = error_bound(domain, config.tol);
    ko.mode = KoebeMode::Certified;
    ko.certificate = out.certificate;
  }
  auto r = koebe_run(domain, ko);
  out.chain = std::move(r.chain);
  out.circles = std::move(r.circles);
  out.method = certified ? "Koebe (certified)" : "Koebe (residual)";
  out.budget_exhausted = r.report.budget_exhausted;
  out.details = "steps " + std::to_string(r.report.steps) + "\n";
  if (!r.report.note.empty()) out.details += r.report.note + "\n";
  out.details += "residuals\n" + r.report.residuals_csv();
  return out;
}

struct View {
  double x0 = 0.0, y0 = 0.0, scale = 1.0;
  explicit View(const Box& b) {
    const double w = std::max(b.xmax - b.xmin, b.ymax - b.ymin);
    scale = 1000.0 / w;
    x0 = 0.5 * (b.xmin + b.xmax) - 0.5 * w;
    y0 = 0.5 * (b.ymin + b.ymax) - 0.5 * w;
  }
  std::string point(Complex z) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f,%.3f", (z.real() - x0) * scale, 1000.0 - (z.imag() - y0) * scale);
    return buf;
  }
  bool visible(Complex z) const {
    const double x = (z.real() - x0) * scale, y = (z.imag() - y0) * scale;
    return x > -1000.0 && x < 2000.0 && y > -1000.0 && y < 2000.0;
  }
};

std::string svg_open() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n"
         "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
}

std::string polyline(const View& v, const std::vector<Complex>& pts, const char* style, bool closed = false) {
  if (pts.size() < 2) return {};
  std::string out = closed ? "<polygon points=\"" : "<polyline points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) out += (i ? " " : "") + v.point(pts[i]);
  return out + "\" " + style + "/>\n";
}

// Grid lines of the probe box, split where they leave the domain.
std::vector<std::vector<Complex>> grid_lines(const DomainSpec& d, int nx, int ny) {
  const Box b = domain_box(d);
  constexpr int samples = 100;
  std::vector<std::vector<Complex>> lines;
  auto trace = [&](auto point) {
    std::vector<Complex> run;
    for (int s = 0; s <= samples; ++s) {
      const Complex z = point(double(s) / samples);
      if (in_domain(d, z)) {
        run.push_back(z);
      } else if (!run.empty()) {
        lines.push_back(std::move(run));
        run.clear();
      }
    }
    if (!run.empty()) lines.push_back(std::move(run));
  };
  for (int j = 0; j < ny; ++j) {
    const double v = ny > 1 ? double(j) / (ny - 1) : 0.5;
    trace([&](double u) { return b.at(u, v); });
  }
  for (int i = 0; i < nx; ++i) {
    const double u = nx > 1 ? double(i) / (nx - 1) : 0.5;
    trace([&](double v) { return b.at(u, v); });
  }
  return lines;
}

std::string domain_svg(const DomainSpec& d, int nx, int ny) {
  const View view(domain_box(d));
  std::string out = svg_open();
  for (const auto& line : grid_lines(d, nx, ny)) out += polyline(view, line, "fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"");
  for (const auto& c : d.boundary) {
    out += polyline(view, {c.samples().begin(), c.samples().end()}, "fill=\"#eeeeee\" stroke=\"black\" stroke-width=\"2\"", true);
  }
  if (d.n() >= 2) {
    const Complex c = inscribed_disk(d.boundary[0]).first;
    const BoundedDomain bounded = invert(d, c);
    const CutArcs arcs = cut_arcs(bounded);
    for (const auto* family : {&arcs.sigma, &arcs.tau}) {
      const char* style = family == &arcs.sigma ? "fill=\"none\" stroke=\"#c03030\" stroke-width=\"1.5\""
                                                : "fill=\"none\" stroke=\"#3060c0\" stroke-width=\"1.5\"";
      for (const auto& arc : *family) {
        std::vector<Complex> run;
        for (std::size_t i = 0; i + 1 < arc.size(); ++i) {
          for (int s = 0; s < 16; ++s) {
            const Complex w = arc[i] + (arc[i + 1] - arc[i]) * (s / 16.0);
            const Complex z = c + 1.0 / w;
            if (std::abs(w) > 0.0 && view.visible(z)) {
              run.push_back(z);
            } else {
              out += polyline(view, run, style);
              run.clear();
            }
          }
        }
        run.push_back(c + 1.0 / arc.back());
        out += polyline(view, run, style);
      }
    }
  }
  return out + "</svg>\n";
}

std::string image_svg(const DomainSpec& d, const ConformalChain& f, const CircularDomain& circles, int nx, int ny) {
  Box b;
  for (const auto& c : circles.circles) {
    b.add(c.center + Complex(c.radius, c.radius));
    b.add(c.center - Complex(c.radius, c.radius));
  }
  const View view(b.padded(0.25));
  std::string out = svg_open();
  for (const auto& line : grid_lines(d, nx, ny)) {
    std::vector<Complex> img;
    for (const auto& z : line) {
      try {
        const Complex w = f.eval(z);
        if (view.visible(w)) {
          img.push_back(w);
          continue;
        }
      } catch (const Error&) {
      }
      out += polyline(view, img, "fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"");
      img.clear();
    }
    out += polyline(view, img, "fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"");
  }
  char buf[160];
  for (const auto& c : circles.circles) {
    const std::string p = view.point(c.center);
    const auto comma = p.find(',');
    std::snprintf(buf, sizeof buf, "<circle cx=\"%s\" cy=\"%s\" r=\"%.3f\" fill=\"#eeeeee\" stroke=\"black\" stroke-width=\"2\"/>\n",
                  p.substr(0, comma).c_str(), p.substr(comma + 1).c_str(), c.radius * view.scale);
    out += buf;
  }
  return out + "</svg>\n";
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case Errc::BudgetExceeded: return 2;
    case Errc::CertifyUnavailable: return 3;
    default: return 1;
  }
}

template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int cmd_map(const RunConfig& config) {
  return guarded([&] {
    const DomainSpec domain = load_domain(config);
    const MapOutcome m = run_map(domain, config);
    const fs::path dir(config.out);
    fs::create_directories(dir);
    write_file(dir / "circles.json", circles_json(m.circles));
    write_file(dir / "chain.json", m.chain.to_json() + "\n");
    write_file(dir / "mapped_points.csv", mapped_points_csv(m.chain, domain, config.grid_x, config.grid_y));
    if (m.certificate) write_file(dir / "certificate.json", m.certificate->to_json());

    std::string report = "method " + m.method + "\ncomponents " + std::to_string(domain.n()) + "\ntol " +
                         fmt(config.tol) + "\nresolution " + std::to_string(config.resolution) + "\n";
    for (std::size_t j = 0; j < m.circles.circles.size(); ++j) {
      const auto& c = m.circles.circles[j];
      report += "circle " + std::to_string(j) + " center " + fmt(c.center.real()) + " " + fmt(c.center.imag()) +
                " radius " + fmt(c.radius) + "\n";
    }
    report += m.details;
    const auto probes = probe_points(domain, 100);
    const auto q = quarter_theorem_check(m.chain, domain.boundary, m.circles, probes);
    report += std::string("quarter_theorem ") + (q.pass ? "pass" : "FAIL") + " lower_margin " + fmt(q.lower_margin) +
              " upper_margin " + fmt(q.upper_margin) + "\n";
    report += "boundary_roundtrip " + fmt(boundary_roundtrip(m.chain, m.circles, domain)) + "\n";
    if (m.certificate) {
      report += "E_R 10^" + fmt(m.certificate->log_E_R / std::log(10.0)) + "\nlambda " + fmt(m.certificate->lambda[0]) +
                " " + fmt(m.certificate->lambda[1]) + "\nN_star 10^" + fmt(m.certificate->log10_N_star) + "\n";
      report += "separation rho(C1, C2) = |c1 - c2| - r1 - r2 (Euclidean stand-in)\n";
    }
    if (m.budget_exhausted) report += "status budget exhausted before the residual target\n";
    write_file(dir / "report.txt", report);
    std::cout << report;
    if (config.plot) {
      write_file(dir / "domain.svg", domain_svg(domain, config.grid_x, config.grid_y));
      write_file(dir / "image.svg", image_svg(domain, m.chain, m.circles, config.grid_x, config.grid_y));
    }
    return m.budget_exhausted ? 2 : 0;
  });
}

int cmd_certify(const RunConfig& config) {
  return guarded([&] {
    const DomainSpec domain = load_domain(config);
    if (domain.n() < 3) {
      throw Error(Errc::CertifyUnavailable, kModule,
                  "certification needs at least three boundary curves; use map with the Komatu (n = 2) or direct "
                  "(n = 1) mode");
    }
    const Certificate c = error_bound(domain, config.tol);
    const fs::path dir(config.out);
    fs::create_directories(dir);
    write_file(dir / "certificate.json", c.to_json());
    std::cout << "R " << fmt(c.R) << "\nz0 " << fmt(c.z0.real()) << " " << fmt(c.z0.imag()) << "\nE_R 10^"
              << fmt(c.log_E_R / std::log(10.0)) << "\nlambda " << fmt(c.lambda[0]) << " " << fmt(c.lambda[1])
              << "\ngamma_plus 10^" << fmt(c.log_gamma_plus / std::log(10.0)) << "\n1 - mu_plus 10^"
              << fmt(c.log_one_minus_mu / std::log(10.0)) << "\nN_star 10^" << fmt(c.log10_N_star) << " for tol "
              << fmt(config.tol) << "\n";
    return 0;
  });
}

int cmd_plot(const RunConfig& config) {
  return guarded([&] {
    const fs::path dir(config.out);
    if (!fs::exists(dir / "circles.json") || !fs::exists(dir / "chain.json")) {
      throw Error(Errc::MissingArtifacts, kModule, "circles.json and chain.json not found in " + dir.string() +
                                                       "; run map first");
    }
    const DomainSpec domain = load_domain(config);
    const CircularDomain circles = read_circles(read_file((dir / "circles.json").string()));
    const ConformalChain chain = ConformalChain::from_json(read_file((dir / "chain.json").string()));
    write_file(dir / "domain.svg", domain_svg(domain, config.grid_x, config.grid_y));
    write_file(dir / "image.svg", image_svg(domain, chain, circles, config.grid_x, config.grid_y));
    return 0;
  });
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Conformal maps of multiply connected domains onto circular domains"};
  app.require_subcommand(1);
  RunConfig config;
  std::string grid = "20x20";
  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", config.input, "domain JSON file")->required();
    sub->add_option("--tol", config.tol, "target tolerance");
    sub->add_option("--mode", config.mode, "auto, certified or residual")
        ->check(CLI::IsMember({"auto", "certified", "residual"}));
    sub->add_option("--resolution", config.resolution, "samples per boundary curve");
    sub->add_option("--out", config.out, "output directory");
    sub->add_flag("--plot", config.plot, "also write SVG plots");
    sub->add_option("--grid", grid, "probe grid NxM");
  };
  auto* map = app.add_subcommand("map", "compute the circular domain and the map");
  auto* certify = app.add_subcommand("certify", "compute the error certificate");
  auto* plot = app.add_subcommand("plot", "plot the artifacts of a previous map run");
  common(map);
  common(certify);
  common(plot);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  int gx = 0, gy = 0;
  char sep = 0;
  std::istringstream gs(grid);
  if (!(gs >> gx >> sep >> gy) || (sep != 'x' && sep != 'X') || gx < 1 || gy < 1) {
    std::cerr << "error: cli: --grid expects NxM\n";
    return 1;
  }
  config.grid_x = gx;
  config.grid_y = gy;
  if (map->parsed()) return cmd_map(config);
  if (certify->parsed()) return cmd_certify(config);
  return cmd_plot(config);
}

}  // namespace circmap
