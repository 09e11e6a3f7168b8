#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "circmap/fourier.hpp"
#include "circmap/harmonic.hpp"
#include "circmap/parallel.hpp"

namespace circmap {

namespace {

constexpr std::string_view kModule = "harmonic";
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

struct DenseCurve {
  std::vector<Complex> z;
  std::size_t factor = 1;

  double size() const { return double(z.size()); }
  Complex at(double s) const {
    const std::size_t k = z.size();
    double f = std::floor(s);
    const double t = s - f;
    const auto i = std::size_t(std::fmod(f, double(k)) + (f < 0 ? double(k) : 0.0)) % k;
    return z[i] + t * (z[(i + 1) % k] - z[i]);
  }
};

double forward(double from, double to, double period) {
  double d = std::fmod(to - from, period);
  if (d < 0.0) d += period;
  return d;
}

// First crossing of the ray p + t u (0 <= t <= tmax) with the dense curve; returns the curve parameter.
std::optional<double> ray_hit(const DenseCurve& c, Complex p, Complex u, double tmax) {
  const std::size_t k = c.z.size();
  double best_t = kInf, best_s = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const Complex a = c.z[i], b = c.z[(i + 1) % k];
    const Complex e = b - a;
    const double den = u.real() * e.imag() - u.imag() * e.real();
    if (den == 0.0) continue;
    const Complex ap = a - p;
    const double t = (ap.real() * e.imag() - ap.imag() * e.real()) / den;
    const double f = (ap.real() * u.imag() - ap.imag() * u.real()) / den;
    if (t >= 0.0 && t <= tmax && f >= 0.0 && f <= 1.0 && t < best_t) {
      best_t = t;
      best_s = double(i) + f;
    }
  }
  if (std::isinf(best_t)) return std::nullopt;
  return best_s;
}

std::vector<Complex> resample_polyline(const std::vector<Complex>& pts, double spacing) {
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) cum[i] = cum[i - 1] + std::abs(pts[i] - pts[i - 1]);
  const double total = cum.back();
  const std::size_t segs = std::max<std::size_t>(2, std::size_t(std::ceil(total / spacing)));
  std::vector<Complex> out;
  out.reserve(segs + 1);
  std::size_t seg = 0;
  for (std::size_t k = 0; k <= segs; ++k) {
    const double s = total * double(k) / double(segs);
    while (seg + 2 < pts.size() && cum[seg + 1] < s) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double t = len > 0.0 ? std::clamp((s - cum[seg]) / len, 0.0, 1.0) : 0.0;
    out.push_back(pts[seg] + t * (pts[seg + 1] - pts[seg]));
  }
  out.front() = pts.front();
  out.back() = pts.back();
  return out;
}

struct Side {
  std::vector<Complex> pts;  // parent curve -> child curve
  double s_parent = 0.0, s_child = 0.0;
};

struct Channel {
  std::size_t parent = 0, child = 0;
  Polyline arc;
  Side a, b;
};

Channel make_channel(const Polyline& arc, std::size_t parent, std::size_t child,
                     const std::vector<DenseCurve>& dense, double delta, double spacing) {
  Channel ch{parent, child, arc, {}, {}};
  const std::size_t m = arc.size() - 1;
  std::vector<Complex> normal(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Complex d = arc[i + 1] - arc[i];
    normal[i] = Complex(0.0, 1.0) * d / std::abs(d);
  }
  for (int sign : {1, -1}) {
    std::vector<Complex> pts;
    const Complex n0 = double(sign) * normal[0];
    const Complex u0 = (arc[0] - arc[1]) / std::abs(arc[0] - arc[1]);
    const auto hit0 = ray_hit(dense[parent], arc[1] + delta * n0, u0, std::abs(arc[0] - arc[1]) + 4.0 * delta);
    const Complex nm = double(sign) * normal[m - 1];
    const Complex um = (arc[m] - arc[m - 1]) / std::abs(arc[m] - arc[m - 1]);
    const auto hitm = ray_hit(dense[child], arc[m - 1] + delta * nm, um, std::abs(arc[m] - arc[m - 1]) + 4.0 * delta);
    if (!hit0 || !hitm) {
      throw Error(Errc::ArcSearchFailed, kModule, "channel side does not meet its boundary curve");
    }
    pts.push_back(dense[parent].at(*hit0));
    for (std::size_t k = 1; k < m; ++k) {
      Complex bis = normal[k - 1] + normal[k];
      const double len = std::abs(bis);
      Complex off;
      if (len < 1e-6) {
        off = normal[k];
      } else {
        bis /= len;
        const double cosine = std::max((bis * std::conj(normal[k])).real(), 1.0 / 3.0);
        off = bis / cosine;
      }
      pts.push_back(arc[k] + double(sign) * delta * off);
    }
    pts.push_back(dense[child].at(*hitm));
    Side side{resample_polyline(pts, spacing), *hit0, *hitm};
    (sign > 0 ? ch.a : ch.b) = std::move(side);
  }
  return ch;
}

// Boundary nodes of the domain with one family of channels removed.
struct Rep {
  std::vector<Complex> nodes;
  std::vector<int> curve;       // boundary curve or -1 for a channel side
  std::vector<double> param;    // dense curve parameter for curve nodes
  std::vector<long> unknown;    // index into `unknowns` or -1
  std::vector<std::size_t> unknowns;
  std::unique_ptr<GeodesicZipper> zipper;
  std::vector<std::size_t> order;  // finite half-plane images, ascending
  std::vector<double> t;
  std::size_t inf_node = 0;
  std::vector<Polyline> removed;   // arcs of the removed channels

  void add(Complex z, int c, double s, bool is_unknown) {
    nodes.push_back(z);
    curve.push_back(c);
    param.push_back(s);
    unknown.push_back(is_unknown ? long(unknowns.size()) : -1L);
    if (is_unknown) unknowns.push_back(nodes.size() - 1);
  }

  // Weights of every node in the value at z; optional complex weights of F'(w) and the map derivative.
  // Data is linear in -1/(t - c) between nodes, with the pole c at the node farthest from z.
  void weights(Complex z, std::vector<double>& w, std::vector<Complex>* gw, Complex* dmap) const {
    w.assign(nodes.size(), 0.0);
    if (gw) gw->assign(nodes.size(), Complex(0.0));
    Complex v;
    if (dmap) {
      const auto [vv, dv] = zipper->to_halfplane_with_derivative(z);
      v = vv;
      *dmap = dv;
    } else {
      v = zipper->to_halfplane(z);
    }
    std::size_t pos = 0;
    double far = -1.0;
    for (std::size_t j = 0; j < order.size(); ++j) {
      const double d = std::norm(nodes[order[j]] - z);
      if (d > far) {
        far = d;
        pos = j;
      }
    }
    const double c = t[pos];
    std::vector<std::size_t> seq;
    std::vector<double> tt;
    seq.reserve(order.size());
    tt.reserve(order.size());
    for (std::size_t j = pos + 1; j < order.size(); ++j) {
      seq.push_back(order[j]);
      tt.push_back(-1.0 / (t[j] - c));
    }
    seq.push_back(inf_node);
    tt.push_back(0.0);
    for (std::size_t j = 0; j < pos; ++j) {
      seq.push_back(order[j]);
      tt.push_back(-1.0 / (t[j] - c));
    }
    const Complex vc = v - c;
    accumulate(seq, tt, order[pos], -1.0 / vc, w, gw, 1.0 / (vc * vc));
  }

  // Half-plane Poisson weights of data linear in tt between consecutive seq nodes, constant
  // halves on the two rays towards the pole node.
  static void accumulate(const std::vector<std::size_t>& seq, const std::vector<double>& tt, std::size_t pole,
                         Complex v, std::vector<double>& w, std::vector<Complex>* gw, Complex scale) {
    const double x = v.real();
    const double y = std::max(v.imag(), 1e-300);
    const Complex wv(x, y);
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
      const double a = tt[k], b = tt[k + 1];
      const double d = b - a;
      if (!(d > 0.0)) continue;
      const double ra2 = (a - x) * (a - x) + y * y;
      const Complex L(0.5 * std::log1p(d * (a + b - 2.0 * x) / ra2), std::atan2(y * d, (a - x) * (b - x) + y * y));
      w[seq[k]] += ((b - wv) * L).imag() / (kPi * d);
      w[seq[k + 1]] += ((wv - a) * L).imag() / (kPi * d);
      if (gw) {
        (*gw)[seq[k]] += scale * (-L / d + 1.0 / (a - wv)) / kPi;
        (*gw)[seq[k + 1]] += scale * (L / d - 1.0 / (b - wv)) / kPi;
      }
    }
    const double right = -std::arg(tt.back() - wv) / kPi;
    const double left = (std::arg(tt.front() - wv) + kPi) / kPi;
    w[seq.back()] += 0.5 * right;
    w[pole] += 0.5 * right + 0.5 * left;
    w[seq.front()] += 0.5 * left;
    if (gw) {
      const Complex gr = scale / (kPi * (tt.back() - wv));
      const Complex gl = -scale / (kPi * (tt.front() - wv));
      (*gw)[seq.back()] += 0.5 * gr;
      (*gw)[pole] += 0.5 * (gr + gl);
      (*gw)[seq.front()] += 0.5 * gl;
    }
  }

  double eval(Complex z, const std::vector<double>& values) const {
    std::vector<double> w;
    weights(z, w, nullptr, nullptr);
    double s = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * values[k];
    return s;
  }

  Gradient gradient(Complex z, const std::vector<double>& values) const {
    std::vector<double> w;
    std::vector<Complex> gw;
    Complex dmap;
    weights(z, w, &gw, &dmap);
    Complex f{};
    for (std::size_t k = 0; k < gw.size(); ++k) f += gw[k] * values[k];
    const Complex d = f * dmap;
    return {d.imag(), d.real()};
  }

  double depth(Complex z) const {
    double d = kInf;
    for (const auto& a : removed) d = std::min(d, polyline_distance(a, z));
    return d;
  }
};

Complex deep_point(const BoundedDomain& domain, const std::vector<Polyline>& removed, double delta) {
  double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
  for (const auto& z : domain.boundary[0].samples()) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  constexpr int grid = 40;
  Complex best{};
  double best_d = -kInf;
  for (int i = 1; i < grid; ++i) {
    for (int j = 1; j < grid; ++j) {
      const Complex z(xmin + (xmax - xmin) * i / grid, ymin + (ymax - ymin) * j / grid);
      if (!domain.contains(z)) continue;
      double d = domain.clearance(z);
      for (const auto& a : removed) d = std::min(d, polyline_distance(a, z) - delta);
      if (d > best_d) {
        best_d = d;
        best = z;
      }
    }
  }
  if (!(best_d > 0.0)) throw Error(Errc::MapperDiverged, kModule, "no interior point clear of the channels");
  return best;
}

}  // namespace

struct DirichletSolver::Impl {
  BoundedDomain domain;
  DirichletOptions options;
  double h = 0.0;
  CutArcs arcs;
  std::vector<DenseCurve> dense;
  // reps[0]: domain minus tau channels; reps[1]: domain minus sigma channels
  std::vector<Rep> reps;
  // W[0]: weights of reps[1] at the unknown nodes of reps[0]; W[1] the reverse
  std::vector<std::vector<double>> W[2];
  double q = 0.0;

  // Boundary data on the dense curves: trigonometric interpolation for smooth curves, linear otherwise.
  std::vector<std::vector<double>> dense_data(const BoundaryData& data) const {
    std::vector<std::vector<double>> out(dense.size());
    for (std::size_t c = 0; c < dense.size(); ++c) {
      const auto& vals = data.values[c];
      const std::size_t n = vals.size(), f = dense[c].factor;
      auto& d = out[c];
      d.resize(n * f);
      const bool continuous = c >= data.continuous.size() || data.continuous[c];
      if (domain.boundary[c].smooth() && continuous && f > 1) {
        const std::vector<Complex> z(vals.begin(), vals.end());
        const auto up = fourier::interpolate(z, n * f);
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = up[k].real();
      } else {
        for (std::size_t k = 0; k < d.size(); ++k) {
          const double frac = double(k % f) / double(f);
          d[k] = (1.0 - frac) * vals[k / f] + frac * vals[(k / f + 1) % n];
        }
      }
    }
    return out;
  }

  std::vector<double> known_values(const Rep& rep, const std::vector<std::vector<double>>& data) const {
    std::vector<double> v(rep.nodes.size(), 0.0);
    for (std::size_t k = 0; k < rep.nodes.size(); ++k) {
      if (rep.unknown[k] >= 0) continue;
      const auto& vals = data[std::size_t(rep.curve[k])];
      const double s = rep.param[k];
      const double f = std::floor(s);
      const double frac = s - f;
      const std::size_t n = vals.size();
      const std::size_t i = std::size_t(f) % n;
      v[k] = (1.0 - frac) * vals[i] + frac * vals[(i + 1) % n];
    }
    return v;
  }

  const Rep& pick(Complex z) const {
    if (reps.size() == 1) return reps[0];
    return reps[0].depth(z) >= reps[1].depth(z) ? reps[0] : reps[1];
  }
};

namespace {

Rep build_rep(const std::vector<DenseCurve>& dense, const std::vector<Channel>& channels,
              const BoundedDomain& domain, double delta) {
  Rep rep;
  for (const auto& ch : channels) rep.removed.push_back(ch.arc);

  // start on the outer curve as far as possible from the channel mouths
  const double K0 = dense[0].size();
  std::size_t start = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < dense[0].z.size(); ++i) {
    double d = kInf;
    for (const auto& ch : channels) {
      if (ch.parent != 0) continue;
      for (double s : {ch.a.s_parent, ch.b.s_parent}) {
        d = std::min({d, forward(double(i), s, K0), forward(s, double(i), K0)});
      }
    }
    if (d > best) {
      best = d;
      start = i;
    }
  }

  constexpr double eps = 0.3;
  auto emit_curve = [&](std::size_t c, double from, double lo, double hi) {
    const double K = dense[c].size();
    const double first = std::ceil(from + lo + eps);
    for (double s = first; s - from < hi - eps; s += 1.0) {
      const double sm = std::fmod(s, K);
      rep.add(dense[c].at(sm), int(c), sm, false);
    }
  };
  auto emit_side = [&](const Side& side, std::size_t parent, std::size_t child, bool reversed) {
    const std::size_t n = side.pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = reversed ? n - 1 - i : i;
      if (k == 0) {
        rep.add(side.pts[k], int(parent), side.s_parent, false);
      } else if (k == n - 1) {
        rep.add(side.pts[k], int(child), side.s_child, false);
      } else {
        rep.add(side.pts[k], -1, 0.0, true);
      }
    }
  };

  std::function<void(std::size_t, double, double)> walk = [&](std::size_t c, double from, double length) {
    const double K = dense[c].size();
    struct Event {
      double key;
      const Side* first;
      const Side* second;
      std::size_t child;
    };
    std::vector<Event> events;
    for (const auto& ch : channels) {
      if (ch.parent != c) continue;
      const double da = forward(from, ch.a.s_parent, K), db = forward(from, ch.b.s_parent, K);
      if (std::min(da, db) >= length) continue;
      events.push_back(da < db ? Event{da, &ch.a, &ch.b, ch.child} : Event{db, &ch.b, &ch.a, ch.child});
    }
    std::sort(events.begin(), events.end(), [](const Event& x, const Event& y) { return x.key < y.key; });
    double cur = 0.0;
    for (const auto& ev : events) {
      emit_curve(c, from, cur, ev.key);
      emit_side(*ev.first, c, ev.child, false);
      const double Kc = dense[ev.child].size();
      const double span = forward(ev.first->s_child, ev.second->s_child, Kc);
      if (span < 0.5 * Kc) {
        throw Error(Errc::ArcSearchFailed, kModule, "channel sides cross; resolution too coarse for the channel width");
      }
      walk(ev.child, ev.first->s_child, span);
      emit_side(*ev.second, c, ev.child, true);
      cur = forward(from, ev.second->s_parent, K);
    }
    emit_curve(c, from, cur, length);
  };

  rep.add(dense[0].z[start], 0, double(start), false);
  walk(0, double(start), K0);

  const Complex interior = deep_point(domain, rep.removed, delta);
  rep.zipper = std::make_unique<GeodesicZipper>(rep.nodes, interior);
  const auto t = rep.zipper->node_halfplane();
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (std::isinf(t[k])) {
      rep.inf_node = k;
    } else {
      rep.order.push_back(k);
    }
  }
  std::sort(rep.order.begin(), rep.order.end(), [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });
  for (auto k : rep.order) rep.t.push_back(t[k]);
  return rep;
}

}  // namespace

DirichletSolver::DirichletSolver(const BoundedDomain& domain, DirichletOptions options) {
  auto impl = std::make_shared<Impl>();
  impl->domain = domain;
  impl->options = options;
  impl->h = options.h > 0.0 ? options.h : default_resolution(domain.boundary);
  const double h = impl->h;
  const std::size_t refine = std::max<std::size_t>(1, options.refine);

  for (const auto& c : domain.boundary) {
    const auto r = c.resampled(c.size() * refine);
    impl->dense.push_back(DenseCurve{{r.samples().begin(), r.samples().end()}, refine});
  }

  impl->arcs = cut_arcs(domain, h);
  const double delta = 0.5 * h;
  double spacing = 0.0;
  for (const auto& d : impl->dense) {
    for (std::size_t i = 0; i < d.z.size(); ++i) spacing = std::max(spacing, std::abs(d.z[(i + 1) % d.z.size()] - d.z[i]));
  }
  spacing *= 0.5;

  if (domain.n() == 1) {
    impl->reps.push_back(build_rep(impl->dense, {}, domain, delta));
  } else {
    const auto& order = impl->arcs.order;
    std::vector<Channel> tau, sigma;
    for (std::size_t j = 1; j < order.size(); ++j) {
      tau.push_back(make_channel(impl->arcs.tau[j - 1], order[j - 1], order[j], impl->dense, delta, spacing));
      sigma.push_back(make_channel(impl->arcs.sigma[j - 1], order[j - 1], order[j], impl->dense, delta, spacing));
    }
    impl->reps.push_back(build_rep(impl->dense, tau, domain, delta));
    impl->reps.push_back(build_rep(impl->dense, sigma, domain, delta));

    for (int r = 0; r < 2; ++r) {
      const Rep& self = impl->reps[std::size_t(r)];
      const Rep& other = impl->reps[std::size_t(1 - r)];
      auto& W = impl->W[r];
      W.resize(self.unknowns.size());
      parallel_for(self.unknowns.size(), [&](std::size_t i) {
        other.weights(self.nodes[self.unknowns[i]], W[i], nullptr, nullptr);
      });
    }
    // contraction factor of v1 -> M12 M21 v1
    const auto& U0 = impl->reps[0].unknowns;
    const auto& U1 = impl->reps[1].unknowns;
    std::vector<double> m21row(U0.size());
    for (std::size_t i = 0; i < U0.size(); ++i) {
      std::fill(m21row.begin(), m21row.end(), 0.0);
      for (std::size_t j = 0; j < U1.size(); ++j) {
        const double a = std::abs(impl->W[0][i][U1[j]]);
        if (a == 0.0) continue;
        for (std::size_t k = 0; k < U0.size(); ++k) m21row[k] += a * std::abs(impl->W[1][j][U0[k]]);
      }
      impl->q = std::max(impl->q, std::accumulate(m21row.begin(), m21row.end(), 0.0));
    }
    if (impl->q >= 1.0 - options.delta_m) {
      throw Error(Errc::ContractionStalled, kModule,
                  "measured contraction factor " + std::to_string(impl->q) + " is not below 1");
    }
  }
  impl_ = std::move(impl);
}

DirichletSolver::~DirichletSolver() = default;
DirichletSolver::DirichletSolver(DirichletSolver&&) noexcept = default;
DirichletSolver& DirichletSolver::operator=(DirichletSolver&&) noexcept = default;

const BoundedDomain& DirichletSolver::domain() const { return impl_->domain; }
const CutArcs& DirichletSolver::arcs() const { return impl_->arcs; }
double DirichletSolver::resolution() const { return impl_->h; }
double DirichletSolver::contraction() const { return impl_->q; }

HarmonicSolution DirichletSolver::solve(const BoundaryData& data, DirichletReport* report) const {
  const auto& impl = *impl_;
  if (data.values.size() != impl.domain.n()) {
    throw Error(Errc::InvalidInput, kModule, "boundary data has the wrong number of components");
  }
  for (std::size_t c = 0; c < impl.domain.n(); ++c) {
    if (data.values[c].size() != impl.domain.boundary[c].size()) {
      throw Error(Errc::InvalidInput, kModule, "boundary data for curve " + std::to_string(c) + " is misaligned");
    }
    for (double v : data.values[c]) {
      if (!std::isfinite(v)) throw Error(Errc::InvalidInput, kModule, "non-finite boundary value");
    }
  }

  auto values = std::make_shared<std::vector<std::vector<double>>>();
  const auto dense_values = impl.dense_data(data);
  for (const auto& rep : impl.reps) values->push_back(impl.known_values(rep, dense_values));

  DirichletReport rep_out;
  rep_out.contraction = impl.q;
  if (impl.reps.size() == 2) {
    auto& v0 = (*values)[0];
    auto& v1 = (*values)[1];
    const auto& U0 = impl.reps[0].unknowns;
    const auto& U1 = impl.reps[1].unknowns;
    auto apply = [&](const std::vector<std::vector<double>>& W, const std::vector<double>& vals,
                     std::vector<double>& out) {
      for (std::size_t i = 0; i < W.size(); ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < vals.size(); ++k) s += W[i][k] * vals[k];
        out[i] = s;
      }
    };
    std::vector<double> x0(U0.size(), 0.0), x1(U1.size(), 0.0), next(U0.size());
    auto F = [&](const std::vector<double>& in, std::vector<double>& out) {
      for (std::size_t i = 0; i < U0.size(); ++i) v0[U0[i]] = in[i];
      apply(impl.W[1], v0, x1);
      for (std::size_t j = 0; j < U1.size(); ++j) v1[U1[j]] = x1[j];
      apply(impl.W[0], v1, out);
    };
    F(x0, next);
    double f0 = 0.0;
    for (double v : next) f0 = std::max(f0, std::abs(v));
    const double q = impl.q;
    std::size_t iters = 1;
    double bound = q * f0 / (1.0 - q);
    rep_out.gaps.push_back(f0);
    x0 = next;
    while (bound > impl.options.eps_fix && iters < 100000) {
      F(x0, next);
      double gap = 0.0;
      for (std::size_t i = 0; i < next.size(); ++i) gap = std::max(gap, std::abs(next[i] - x0[i]));
      rep_out.gaps.push_back(gap);
      x0 = next;
      ++iters;
      bound = std::pow(q, double(iters)) * f0 / (1.0 - q);
    }
    for (std::size_t i = 0; i < U0.size(); ++i) v0[U0[i]] = x0[i];
    apply(impl.W[1], v0, x1);
    for (std::size_t j = 0; j < U1.size(); ++j) v1[U1[j]] = x1[j];
    rep_out.iterations = iters;
    rep_out.bound = bound;
  }
  if (report) *report = rep_out;

  auto self = impl_;
  auto u = [self, values](Complex z) {
    const Rep& r = self->pick(z);
    return r.eval(z, (*values)[std::size_t(&r - self->reps.data())]);
  };
  auto contains = [self](Complex z) { return self->domain.contains(z); };
  auto clearance = [self](Complex z) { return self->domain.clearance(z); };
  HarmonicSolution sol(u, contains, clearance, "dirichlet_solve: alternating channel iteration, contraction " +
                                                   std::to_string(impl.q));
  sol.with_gradient([self, values](Complex z) {
    const Rep& r = self->pick(z);
    return r.gradient(z, (*values)[std::size_t(&r - self->reps.data())]);
  });
  return sol;
}

HarmonicSolution dirichlet_solve(const BoundedDomain& domain, const BoundaryData& data, DirichletOptions options,
                                 DirichletReport* report) {
  return DirichletSolver(domain, options).solve(data, report);
}

}  // namespace circmap
