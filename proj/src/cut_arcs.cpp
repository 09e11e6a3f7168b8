#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "circmap/geometry.hpp"

namespace circmap {

namespace {

constexpr std::string_view kModule = "geometry";
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Grid {
  Complex origin;
  double step = 0.0;
  int nx = 0, ny = 0;
  std::vector<double> clearance;  // distance to the nearest curve, -1 outside the domain
  std::vector<int> nearest;       // index of that curve

  Complex center(int i, int j) const { return origin + Complex(step * (i + 0.5), step * (j + 0.5)); }
  std::size_t id(int i, int j) const { return std::size_t(j) * std::size_t(nx) + std::size_t(i); }
};

Grid build_grid(const BoundedDomain& domain) {
  double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
  for (const auto& z : domain.boundary[0].samples()) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  Grid g;
  g.step = std::max(xmax - xmin, ymax - ymin) / 200.0;
  g.origin = Complex(xmin, ymin);
  g.nx = int(std::ceil((xmax - xmin) / g.step));
  g.ny = int(std::ceil((ymax - ymin) / g.step));
  g.clearance.assign(std::size_t(g.nx) * std::size_t(g.ny), -1.0);
  g.nearest.assign(g.clearance.size(), -1);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const Complex z = g.center(i, j);
      if (!domain.contains(z)) continue;
      double best = kInf;
      int who = -1;
      for (std::size_t c = 0; c < domain.n(); ++c) {
        const double d = domain.boundary[c].distance(z);
        if (d < best) {
          best = d;
          who = int(c);
        }
      }
      g.clearance[g.id(i, j)] = best;
      g.nearest[g.id(i, j)] = who;
    }
  }
  return g;
}

double distance_to_arcs(const std::vector<Polyline>& arcs, Complex z) {
  double d = kInf;
  for (const auto& a : arcs) d = std::min(d, polyline_distance(a, z));
  return d;
}

struct ArcSearch {
  const BoundedDomain& domain;
  const Grid& grid;
  double clear;  // required clearance from the curves away from the endpoints
  double sep;    // required separation from earlier arcs
  double repel;  // soft repulsion length scale

  bool segment_ok(Complex a, Complex b, const std::vector<double>& arc_dist) const {
    const double len = std::abs(b - a);
    const int steps = std::max(1, int(std::ceil(len / (0.5 * grid.step))));
    for (int s = 0; s <= steps; ++s) {
      const Complex z = a + (b - a) * (double(s) / steps) - grid.origin;
      const int i = int(std::floor(z.real() / grid.step)), j = int(std::floor(z.imag() / grid.step));
      if (i < 0 || j < 0 || i >= grid.nx || j >= grid.ny) return false;
      const std::size_t k = grid.id(i, j);
      const double slack = 0.71 * grid.step;
      if (grid.clearance[k] - slack < 0.95 * clear) return false;
      if (arc_dist[k] - slack < sep) return false;
    }
    return true;
  }

  Polyline find(std::size_t from, std::size_t to, const std::vector<Polyline>& arcs) const {
    const std::size_t cells = grid.clearance.size();
    std::vector<double> arc_dist(cells, kInf);
    if (!arcs.empty()) {
      for (std::size_t k = 0; k < cells; ++k) {
        if (grid.clearance[k] >= clear) {
          const int i = int(k % std::size_t(grid.nx)), j = int(k / std::size_t(grid.nx));
          arc_dist[k] = distance_to_arcs(arcs, grid.center(i, j));
        }
      }
    }
    auto usable = [&](std::size_t k) { return grid.clearance[k] >= clear && arc_dist[k] >= sep; };
    auto in_band = [&](std::size_t k, std::size_t curve) {
      return usable(k) && grid.nearest[k] == int(curve) && grid.clearance[k] < clear + 1.5 * grid.step;
    };

    std::vector<double> cost(cells, kInf);
    std::vector<long> prev(cells, -1);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (std::size_t k = 0; k < cells; ++k) {
      if (in_band(k, from)) {
        cost[k] = 0.0;
        queue.push({0.0, k});
      }
    }
    long target = -1;
    while (!queue.empty()) {
      const auto [c, k] = queue.top();
      queue.pop();
      if (c > cost[k]) continue;
      if (in_band(k, to)) {
        target = long(k);
        break;
      }
      const int i = int(k % std::size_t(grid.nx)), j = int(k / std::size_t(grid.nx));
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (!di && !dj) continue;
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= grid.nx || jj >= grid.ny) continue;
          const std::size_t nk = grid.id(ii, jj);
          if (!usable(nk)) continue;
          const double weight = 1.0 + (arcs.empty() ? 0.0 : repel / (arc_dist[nk] + sep));
          const double nc = c + grid.step * std::hypot(double(di), double(dj)) * weight;
          if (nc < cost[nk]) {
            cost[nk] = nc;
            prev[nk] = long(k);
            queue.push({nc, nk});
          }
        }
      }
    }
    if (target < 0) {
      throw Error(Errc::ArcSearchFailed, kModule,
                  "no channel from curve " + std::to_string(from) + " to curve " + std::to_string(to) +
                      " at the current resolution");
    }
    Polyline cellpath;
    for (long k = target; k >= 0; k = prev[std::size_t(k)]) {
      cellpath.push_back(grid.center(int(std::size_t(k) % std::size_t(grid.nx)),
                                     int(std::size_t(k) / std::size_t(grid.nx))));
    }
    std::reverse(cellpath.begin(), cellpath.end());

    // string pulling between the first and last cell
    Polyline pulled{cellpath.front()};
    std::size_t at = 0;
    while (at + 1 < cellpath.size()) {
      std::size_t next = at + 1;
      for (std::size_t cand = cellpath.size() - 1; cand > at + 1; --cand) {
        if (segment_ok(cellpath[at], cellpath[cand], arc_dist)) {
          next = cand;
          break;
        }
      }
      pulled.push_back(cellpath[next]);
      at = next;
    }
    Polyline arc;
    arc.push_back(domain.boundary[from].closest_point(pulled.front()));
    arc.insert(arc.end(), pulled.begin(), pulled.end());
    arc.push_back(domain.boundary[to].closest_point(pulled.back()));
    return arc;
  }
};

}  // namespace

CutArcs cut_arcs(const BoundedDomain& domain, double h) {
  CutArcs out;
  out.order.push_back(0);
  if (domain.n() <= 1) return out;
  if (h <= 0.0) h = default_resolution(domain.boundary);

  std::vector<std::size_t> holes(domain.n() - 1);
  std::iota(holes.begin(), holes.end(), std::size_t{1});
  std::vector<Complex> centers(domain.n());
  for (std::size_t j = 1; j < domain.n(); ++j) centers[j] = domain.boundary[j].centroid();
  std::stable_sort(holes.begin(), holes.end(), [&](std::size_t a, std::size_t b) {
    if (centers[a].real() != centers[b].real()) return centers[a].real() < centers[b].real();
    return centers[a].imag() < centers[b].imag();
  });
  out.order.insert(out.order.end(), holes.begin(), holes.end());

  const Grid grid = build_grid(domain);
  const double extent = grid.step * std::max(grid.nx, grid.ny);
  ArcSearch search{domain, grid, std::max(2.0 * grid.step, 2.0 * h), 4.0 * h, 0.2 * extent};

  std::vector<Polyline> built;
  for (int family = 0; family < 2; ++family) {
    for (std::size_t j = 1; j < out.order.size(); ++j) {
      Polyline arc = search.find(out.order[j - 1], out.order[j], built);
      (family == 0 ? out.sigma : out.tau).push_back(arc);
      built.push_back(std::move(arc));
    }
  }
  return out;
}

}  // namespace circmap
