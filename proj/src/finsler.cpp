#include "finsler.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace greenforge {

const char* to_string(GradNormKind k) {
  return k == GradNormKind::Euclidean ? "euclid" : "finsler";
}

GradNormKind grad_norm_kind_from(const std::string& name) {
  if (name == "euclid" || name == "euclidean") return GradNormKind::Euclidean;
  if (name == "finsler" || name == "finsler_max" || name == "max") {
    return GradNormKind::FinslerMax;
  }
  throw Error::parse("unknown gradient norm '" + name + "'");
}

CellGrad cell_gradient(const ScalarField& u, int i, int j) {
  const auto& g = *u.grid;
  int jp = g.wrap(j + 1);
  double u00 = u.at(i, j), u01 = u.at(i, jp);
  double u10 = u.at(i + 1, j), u11 = u.at(i + 1, jp);
  double dr = (u10 + u11 - u00 - u01) / (2.0 * g.cell_dr(i));
  double dth = (u01 + u11 - u00 - u10) / (2.0 * g.dtheta() * g.cell_rc(i));
  return {dr, dth};
}

double grad_norm(const ScalarField& u, GradNormKind kind, int i, int j) {
  CellGrad cg = cell_gradient(u, i, j);
  double a = std::abs(cg.dr), b = std::abs(cg.dth);
  if (kind == GradNormKind::FinslerMax) return std::max(a, b);
  return std::hypot(a, b);
}

double p_energy(const ScalarField& u, double p, GradNormKind kind,
                const MeasureProfile& profile) {
  if (!(p > 1.0)) throw Error::domain("p_energy requires p > 1");
  const auto& g = *u.grid;
  double total = 0.0;
  for (int i = 0; i < g.M(); ++i) {
    double rc = g.cell_rc(i);
    double kappa = profile.model().weight_at(rc) * rc * g.cell_dr(i) *
                   g.dtheta();
    double row = 0.0;
    for (int j = 0; j < g.N(); ++j) {
      double gn = grad_norm(u, kind, i, j);
      row += std::pow(gn, p);
    }
    total += kappa * row;
  }
  return total;
}

double band_energy(const ScalarField& u, double a, double b, double p,
                   GradNormKind kind, const MeasureProfile& profile) {
  if (a > b) throw Error::domain("band_energy requires a <= b");
  if (a == b) return 0.0;
  const auto& g = *u.grid;
  double total = 0.0;
  for (int i = 0; i < g.M(); ++i) {
    double rc = g.cell_rc(i);
    double kappa = profile.model().weight_at(rc) * rc * g.cell_dr(i) *
                   g.dtheta();
    double row = 0.0;
    for (int j = 0; j < g.N(); ++j) {
      int jp = g.wrap(j + 1);
      double mean = 0.25 * (u.at(i, j) + u.at(i, jp) + u.at(i + 1, j) +
                            u.at(i + 1, jp));
      if (mean <= a || mean >= b) continue;
      row += std::pow(grad_norm(u, kind, i, j), p);
    }
    total += kappa * row;
  }
  return total;
}

double euclidean_distance(const PolarGrid& grid, int i0, int j0, int i1,
                          int j1) {
  double x0 = grid.radius(i0) * std::cos(grid.theta(j0));
  double y0 = grid.radius(i0) * std::sin(grid.theta(j0));
  double x1 = grid.radius(i1) * std::cos(grid.theta(j1));
  double y1 = grid.radius(i1) * std::sin(grid.theta(j1));
  return std::hypot(x1 - x0, y1 - y0);
}

double finsler_distance(const PolarGrid& grid, int i0, int j0, int i1, int j1,
                        DistanceOptions opts) {
  const int n_grid = grid.node_count();
  const int n = n_grid + (opts.include_origin ? 1 : 0);
  const int center = n_grid;
  const int N = grid.N();
  const double dth = grid.dtheta();

  std::vector<double> dist(n, logmath::kPosInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  int src = grid.node_index(i0, grid.wrap(j0));
  int dst = grid.node_index(i1, grid.wrap(j1));
  dist[src] = 0.0;
  pq.push({0.0, src});

  auto relax = [&](int from, int to, double cost) {
    double nd = dist[from] + cost;
    if (nd < dist[to]) {
      dist[to] = nd;
      pq.push({nd, to});
    }
  };

  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    if (v == dst) break;
    if (v == center) {
      for (int j = 0; j < N; ++j) {
        relax(center, grid.node_index(0, j), grid.inner_radius());
      }
      continue;
    }
    int i = v / N;
    int j = v % N;
    double ri = grid.radius(i);
    // angular edges
    relax(v, grid.node_index(i, grid.wrap(j + 1)), ri * dth);
    relax(v, grid.node_index(i, grid.wrap(j - 1)), ri * dth);
    if (i + 1 <= grid.M()) {
      double drc = grid.cell_dr(i);
      double rmid = grid.cell_rc(i);
      relax(v, grid.node_index(i + 1, j), drc);
      relax(v, grid.node_index(i + 1, grid.wrap(j + 1)), drc + rmid * dth);
      relax(v, grid.node_index(i + 1, grid.wrap(j - 1)), drc + rmid * dth);
    }
    if (i - 1 >= 0) {
      double drc = grid.cell_dr(i - 1);
      double rmid = grid.cell_rc(i - 1);
      relax(v, grid.node_index(i - 1, j), drc);
      relax(v, grid.node_index(i - 1, grid.wrap(j + 1)), drc + rmid * dth);
      relax(v, grid.node_index(i - 1, grid.wrap(j - 1)), drc + rmid * dth);
    }
    if (opts.include_origin && i == 0) {
      relax(v, center, grid.inner_radius());
    }
  }
  if (!(dist[dst] < logmath::kPosInf)) {
    throw Error::domain("distance query between disconnected grid nodes");
  }
  return dist[dst];
}

}  // namespace greenforge
