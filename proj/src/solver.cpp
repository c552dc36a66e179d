#include "solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "logmath.hpp"

namespace greenforge {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double powi(double x, long n) {
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

// cell-wise g^p and its derivative factor; q == 0 means the exact norm of
// the configured kind, q >= 2 a smoothed max stage
struct CellNorm {
  double gpow;  // g^p
  double da;    // d(g^p)/d a
  double db;    // d(g^p)/d b
};

inline CellNorm cell_norm(double a, double b, double p, GradNormKind kind,
                          double q) {
  double aa = std::abs(a), ab = std::abs(b);
  if (kind == GradNormKind::Euclidean) {
    double g = std::hypot(a, b);
    if (g <= 0.0) return {0.0, 0.0, 0.0};
    double gp1 = (p == 2.0) ? g : std::pow(g, p - 1.0);
    double f = p * gp1 / g;
    return {gp1 * g, f * a, f * b};
  }
  double m = std::max(aa, ab);
  if (m <= 0.0) return {0.0, 0.0, 0.0};
  if (q <= 0.0) {
    // exact max norm: evaluation only (nonsmooth), subgradient choice
    double gp1 = (p == 2.0) ? m : std::pow(m, p - 1.0);
    double da = (aa >= ab) ? p * gp1 * (a < 0 ? -1.0 : 1.0) : 0.0;
    double db = (aa < ab) ? p * gp1 * (b < 0 ? -1.0 : 1.0) : 0.0;
    return {gp1 * m, da, db};
  }
  long qi = static_cast<long>(q);
  bool q_int = (static_cast<double>(qi) == q);
  double za = aa / m, zb = ab / m;
  double s = q_int ? powi(za, qi) + powi(zb, qi)
                   : std::pow(za, q) + std::pow(zb, q);
  double g = m * std::pow(s, 1.0 / q);
  double gp1 = (p == 2.0) ? g : std::pow(g, p - 1.0);
  double ra = aa / g, rb = ab / g;  // both <= 1
  double ta = q_int ? powi(ra, qi - 1) : std::pow(ra, q - 1.0);
  double tb = q_int ? powi(rb, qi - 1) : std::pow(rb, q - 1.0);
  return {gp1 * g, p * gp1 * ta * (a < 0 ? -1.0 : 1.0),
          p * gp1 * tb * (b < 0 ? -1.0 : 1.0)};
}

struct Engine {
  const PolarGrid& g;
  double p;
  GradNormKind kind;
  std::vector<double> kappa;     // per radial cell row
  std::vector<double> inv2dr;    // 1/(2 dr_i)
  std::vector<double> inv2rdth;  // 1/(2 r_c dtheta)
  std::vector<std::uint8_t> fixed;
  int n_bands;
  std::vector<int> band_lo;  // band b covers cell rows [band_lo[b], band_lo[b+1])
  int n_threads;

  Engine(const SolveSpec& spec)
      : g(*spec.grid), p(spec.p), kind(spec.kind) {
    int M = g.M();
    kappa.resize(M);
    inv2dr.resize(M);
    inv2rdth.resize(M);
    for (int i = 0; i < M; ++i) {
      double rc = g.cell_rc(i);
      kappa[i] = spec.profile->model().weight_at(rc) * rc * g.cell_dr(i) *
                 g.dtheta();
      inv2dr[i] = 1.0 / (2.0 * g.cell_dr(i));
      inv2rdth[i] = 1.0 / (2.0 * rc * g.dtheta());
    }
    // fixed band decomposition: identical arithmetic for every thread count
    n_bands = std::min(16, M);
    band_lo.resize(n_bands + 1);
    for (int b = 0; b <= n_bands; ++b) {
      band_lo[b] = static_cast<int>(static_cast<long>(M) * b / n_bands);
    }
    n_threads = std::max(1, spec.opts.n_threads);
  }

  // energy of one band of cell rows
  double band_energy(const std::vector<double>& u, int b, double q) const {
    const int N = g.N();
    double acc = 0.0;
    for (int i = band_lo[b]; i < band_lo[b + 1]; ++i) {
      const double* row0 = u.data() + static_cast<std::size_t>(i) * N;
      const double* row1 = row0 + N;
      double rowsum = 0.0;
      for (int j = 0; j < N; ++j) {
        int jp = (j + 1 == N) ? 0 : j + 1;
        double a = (row1[j] + row1[jp] - row0[j] - row0[jp]) * inv2dr[i];
        double bb = (row0[jp] + row1[jp] - row0[j] - row1[j]) * inv2rdth[i];
        rowsum += cell_norm(a, bb, p, kind, q).gpow;
      }
      acc += kappa[i] * rowsum;
    }
    return acc;
  }

  // gradient of one band, scattered into a slab covering node rows
  // [band_lo[b], band_lo[b+1]]
  double band_grad(const std::vector<double>& u, int b, double q,
                   std::vector<double>& slab) const {
    const int N = g.N();
    std::fill(slab.begin(), slab.end(), 0.0);
    double acc = 0.0;
    for (int i = band_lo[b]; i < band_lo[b + 1]; ++i) {
      const double* row0 = u.data() + static_cast<std::size_t>(i) * N;
      const double* row1 = row0 + N;
      double* s0 = slab.data() + static_cast<std::size_t>(i - band_lo[b]) * N;
      double* s1 = s0 + N;
      double rowsum = 0.0;
      for (int j = 0; j < N; ++j) {
        int jp = (j + 1 == N) ? 0 : j + 1;
        double a = (row1[j] + row1[jp] - row0[j] - row0[jp]) * inv2dr[i];
        double bb = (row0[jp] + row1[jp] - row0[j] - row1[j]) * inv2rdth[i];
        CellNorm cn = cell_norm(a, bb, p, kind, q);
        rowsum += cn.gpow;
        double ca = kappa[i] * cn.da * inv2dr[i];
        double cb = kappa[i] * cn.db * inv2rdth[i];
        s0[j] += -ca - cb;
        s0[jp] += -ca + cb;
        s1[j] += ca - cb;
        s1[jp] += ca + cb;
      }
      acc += kappa[i] * rowsum;
    }
    return acc;
  }

  template <typename Fn>
  void for_bands(Fn&& fn) const {
    if (n_threads <= 1 || n_bands <= 1) {
      for (int b = 0; b < n_bands; ++b) fn(b);
      return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    int workers = std::min(n_threads, n_bands);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          int b = next.fetch_add(1);
          if (b >= n_bands) return;
          fn(b);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  double energy(const std::vector<double>& u, double q) const {
    std::vector<double> parts(n_bands, 0.0);
    for_bands([&](int b) { parts[b] = band_energy(u, b, q); });
    double acc = 0.0;
    for (double v : parts) acc += v;  // fixed band order
    return acc;
  }

  // energy and gradient; gradient zeroed on fixed nodes
  double energy_grad(const std::vector<double>& u, double q,
                     std::vector<double>& grad,
                     std::vector<std::vector<double>>& slabs) const {
    const int N = g.N();
    std::vector<double> parts(n_bands, 0.0);
    for_bands([&](int b) {
      auto& slab = slabs[b];
      slab.resize(static_cast<std::size_t>(band_lo[b + 1] - band_lo[b] + 1) *
                  N);
      parts[b] = band_grad(u, b, q, slab);
    });
    std::fill(grad.begin(), grad.end(), 0.0);
    double acc = 0.0;
    for (int b = 0; b < n_bands; ++b) {
      acc += parts[b];
      double* dst = grad.data() + static_cast<std::size_t>(band_lo[b]) * N;
      const auto& slab = slabs[b];
      for (std::size_t k = 0; k < slab.size(); ++k) dst[k] += slab[k];
    }
    for (std::size_t k = 0; k < grad.size(); ++k) {
      if (fixed[k]) grad[k] = 0.0;
    }
    return acc;
  }
};

struct StageOutcome {
  double energy;
  long iterations;
};

StageOutcome run_stage(const Engine& eng, std::vector<double>& u, double q,
                       const SolveOptions& opts,
                       std::vector<double>& history) {
  const std::size_t n = u.size();
  std::vector<double> x = u, x_prev = u, y(n), z(n), grad(n);
  std::vector<std::vector<double>> slabs(eng.n_bands);
  double E_x = eng.energy(x, q);
  history.push_back(E_x);
  double t = 1.0;
  double eta = 1.0;
  long iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    double beta = (t - 1.0) / t_next;
    for (std::size_t k = 0; k < n; ++k) {
      y[k] = x[k] + beta * (x[k] - x_prev[k]);
    }
    double E_y = eng.energy_grad(y, q, grad, slabs);

    bool found = false;
    double E_z = 0.0;
    for (int trial = 0; trial < 80; ++trial) {
      double dot = 0.0, nrm2 = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        z[k] = y[k] - eta * grad[k];
        double d = z[k] - y[k];
        dot += grad[k] * d;
        nrm2 += d * d;
      }
      E_z = eng.energy(z, q);
      double model = E_y + dot + nrm2 / (2.0 * eta);
      if (E_z <= model + 1e-12 * std::abs(model) + 1e-300) {
        found = true;
        break;
      }
      eta *= 0.5;
    }
    if (!found) {
      // the gradient step cannot satisfy the model at any usable step size;
      // legitimate only when already at the bottom of the basin
      double ref = history.size() > 1 ? history[history.size() - 2] : E_x;
      if ((ref - E_x) <= opts.stop_tol * std::max(std::abs(E_x), 1e-300)) {
        break;
      }
      throw Error::solver(
          "optimizer made no progress: energy would not decrease past " +
          fmt(E_x));
    }
    eta *= 1.2;

    if (E_z <= E_x) {
      x_prev = x;
      std::swap(x, z);
      E_x = E_z;
      t = t_next;
    } else {
      // momentum overshoot: drop it and retry from the current iterate
      x_prev = x;
      t = 1.0;
    }
    history.push_back(E_x);

    std::size_t w = static_cast<std::size_t>(opts.stop_window);
    if (history.size() > w) {
      double before = history[history.size() - 1 - w];
      if ((before - E_x) <= opts.stop_tol * std::max(std::abs(E_x), 1e-300)) {
        ++iter;
        break;
      }
    }
    if (E_x == 0.0) {
      ++iter;
      break;
    }
  }
  u = x;
  return {E_x, iter};
}

}  // namespace

BoundaryCondition BoundaryCondition::capacitary_ring(double inner,
                                                     double outer) {
  BoundaryCondition bc;
  bc.kind = BCKind::CapacitaryRing;
  bc.inner_value = inner;
  bc.outer_value = outer;
  return bc;
}

BoundaryCondition BoundaryCondition::dirichlet(std::vector<double> inner,
                                               std::vector<double> outer) {
  BoundaryCondition bc;
  bc.kind = BCKind::Dirichlet;
  bc.inner_values = std::move(inner);
  bc.outer_values = std::move(outer);
  return bc;
}

BoundaryCondition BoundaryCondition::superlevel(
    std::vector<std::uint8_t> marked) {
  BoundaryCondition bc;
  bc.kind = BCKind::SuperlevelInner;
  bc.marked = std::move(marked);
  return bc;
}

double radial_resistance(const MeasureProfile& profile, double p, double r,
                         double R) {
  if (!(r > 0.0 && R > r)) {
    throw Error::domain("radial_resistance requires 0 < r < R");
  }
  double lc = log2_ring_capacity(profile, p, std::log2(r), std::log2(R));
  // cap = 2 pi I^{1-p}
  double log2_i = (std::log2(2.0 * 3.14159265358979323846) - lc) / (p - 1.0);
  return std::exp2(log2_i);
}

SolveResult minimize_p_energy(const SolveSpec& spec) {
  if (!spec.grid || !spec.profile) {
    throw Error::domain("solve spec needs a grid and a profile");
  }
  if (!(spec.p >= 1.05)) {
    throw Error::domain("solver refuses p < 1.05 (conditioning); got p = " +
                        fmt(spec.p));
  }
  if (!(spec.opts.stop_tol > 0.0)) {
    throw Error::domain("solver stop tolerance must be positive");
  }
  for (std::size_t s = 0; s < spec.opts.schedule.size(); ++s) {
    if (!(spec.opts.schedule[s] >= 2.0)) {
      throw Error::domain("smoothing schedule exponents must be >= 2");
    }
    if (s > 0 && !(spec.opts.schedule[s] > spec.opts.schedule[s - 1])) {
      throw Error::domain("smoothing schedule must be strictly increasing");
    }
  }

  const PolarGrid& g = *spec.grid;
  const int M = g.M(), N = g.N();
  Engine eng(spec);
  eng.fixed.assign(g.node_count(), 0);
  std::vector<double> u(g.node_count(), 0.0);

  const BoundaryCondition& bc = spec.bc;
  switch (bc.kind) {
    case BCKind::CapacitaryRing: {
      if (!std::isfinite(bc.inner_value) || !std::isfinite(bc.outer_value)) {
        throw Error::domain("boundary values must be finite");
      }
      double total = radial_resistance(*spec.profile, spec.p, g.inner_radius(),
                                       g.outer_radius());
      for (int i = 0; i <= M; ++i) {
        double v;
        if (i == 0) {
          v = 1.0;
        } else if (i == M) {
          v = 0.0;
        } else {
          v = radial_resistance(*spec.profile, spec.p, g.radius(i),
                                g.outer_radius()) /
              total;
        }
        double val = bc.outer_value + (bc.inner_value - bc.outer_value) * v;
        for (int j = 0; j < N; ++j) u[g.node_index(i, j)] = val;
      }
      for (int j = 0; j < N; ++j) {
        eng.fixed[g.node_index(0, j)] = 1;
        eng.fixed[g.node_index(M, j)] = 1;
      }
      break;
    }
    case BCKind::Dirichlet: {
      if (static_cast<int>(bc.inner_values.size()) != N ||
          static_cast<int>(bc.outer_values.size()) != N) {
        throw Error::domain("dirichlet boundary values must list one value "
                            "per angular node on each circle");
      }
      for (double v : bc.inner_values) {
        if (!std::isfinite(v)) throw Error::domain("boundary values must be finite");
      }
      for (double v : bc.outer_values) {
        if (!std::isfinite(v)) throw Error::domain("boundary values must be finite");
      }
      double l0 = std::log(g.inner_radius());
      double l1 = std::log(g.outer_radius());
      for (int i = 0; i <= M; ++i) {
        double s = (std::log(g.radius(i)) - l0) / (l1 - l0);
        for (int j = 0; j < N; ++j) {
          u[g.node_index(i, j)] =
              (1.0 - s) * bc.inner_values[j] + s * bc.outer_values[j];
        }
      }
      for (int j = 0; j < N; ++j) {
        eng.fixed[g.node_index(0, j)] = 1;
        eng.fixed[g.node_index(M, j)] = 1;
        u[g.node_index(0, j)] = bc.inner_values[j];
        u[g.node_index(M, j)] = bc.outer_values[j];
      }
      break;
    }
    case BCKind::SuperlevelInner: {
      if (static_cast<int>(bc.marked.size()) != g.node_count()) {
        throw Error::domain("superlevel mask must cover every node");
      }
      long count = 0;
      for (auto m : bc.marked) count += m ? 1 : 0;
      if (count == 0) throw Error::domain("empty superlevel set");
      for (int j = 0; j < N; ++j) {
        if (bc.marked[g.node_index(M, j)]) {
          throw Error::domain("superlevel set touches the outer boundary");
        }
        if (!bc.marked[g.node_index(0, j)]) {
          throw Error::domain(
              "superlevel set must contain the whole inner circle");
        }
      }
      // per-ray resistance coordinate from the outermost marked radius
      std::vector<int> i_mark(N, 0);
      for (int j = 0; j < N; ++j) {
        for (int i = M; i >= 0; --i) {
          if (bc.marked[g.node_index(i, j)]) {
            i_mark[j] = i;
            break;
          }
        }
      }
      std::vector<double> resist(M + 1, 0.0);
      for (int i = 0; i < M; ++i) {
        resist[i] = radial_resistance(*spec.profile, spec.p, g.radius(i),
                                      g.outer_radius());
      }
      for (int i = 0; i <= M; ++i) {
        for (int j = 0; j < N; ++j) {
          int idx = g.node_index(i, j);
          if (bc.marked[idx]) {
            eng.fixed[idx] = 1;
            u[idx] = 1.0;
          } else if (i == M) {
            eng.fixed[idx] = 1;
            u[idx] = 0.0;
          } else {
            u[idx] = i <= i_mark[j] ? 1.0 : resist[i] / resist[i_mark[j]];
          }
        }
      }
      break;
    }
  }

  if (spec.init) {
    if (spec.init->grid.get() != spec.grid.get() ||
        spec.init->values.size() != u.size()) {
      throw Error::domain("init field does not match the solve grid");
    }
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (!eng.fixed[k]) u[k] = spec.init->values[k];
    }
  }

  SolveResult res;
  res.energy.method = CapacityResult::Method::Variational;
  long total_iters = 0;

  if (spec.kind == GradNormKind::Euclidean) {
    auto out = run_stage(eng, u, 0.0, spec.opts, res.energy_history);
    total_iters = out.iterations;
    res.stage_energies.push_back(out.energy);
    res.final_stage_energy = out.energy;
    res.energy.value = out.energy;
    double w = res.energy_history.size() > 1
                   ? res.energy_history[res.energy_history.size() - 2] -
                         out.energy
                   : 0.0;
    res.energy.error_estimate = std::abs(w) +
                                spec.opts.stop_tol * std::abs(out.energy);
  } else {
    if (spec.opts.schedule.empty()) {
      throw Error::domain("FinslerMax solves need a smoothing schedule");
    }
    for (double q : spec.opts.schedule) {
      auto out = run_stage(eng, u, q, spec.opts, res.energy_history);
      total_iters += out.iterations;
      res.stage_energies.push_back(out.energy);
    }
    std::size_t m = res.stage_energies.size();
    double Em = res.stage_energies[m - 1];
    res.final_stage_energy = Em;
    if (m >= 2) {
      double Ep = res.stage_energies[m - 2];
      double qm = spec.opts.schedule[m - 1];
      double qp = spec.opts.schedule[m - 2];
      // linear trend in 1/q extrapolated to q -> inf
      double slope = (Em - Ep) / (1.0 / qm - 1.0 / qp);
      res.energy.value = Em - slope / qm;
      res.energy.error_estimate = std::abs(Em - Ep);
    } else {
      res.energy.value = Em;
      res.energy.error_estimate = spec.opts.stop_tol * std::abs(Em);
    }
  }

  res.iterations = total_iters;
  res.field.grid = spec.grid;
  res.field.values = std::move(u);
  res.max_norm_energy = p_energy(res.field, spec.p, GradNormKind::FinslerMax,
                                 *spec.profile);

  // the accepted-energy history must be nonincreasing; anything else is an
  // optimizer defect and must not be returned silently
  for (std::size_t k = 1; k < res.energy_history.size(); ++k) {
    if (res.energy_history[k] >
        res.energy_history[k - 1] * (1.0 + 1e-12) + 1e-300) {
      throw Error::solver("energy increased across an accepted step");
    }
  }
  return res;
}

SuperlevelResult superlevel_capacity(
    const std::function<double(double, double)>& value_at, double level,
    std::shared_ptr<const PolarGrid> grid, double p, GradNormKind kind,
    const MeasureProfile& profile, SolveOptions opts) {
  const PolarGrid& g = *grid;
  if (!(level > 0.0)) {
    throw Error::domain("superlevel capacity requires a positive level");
  }
  const int M = g.M(), N = g.N();
  std::vector<double> vals(g.node_count());
  std::vector<std::uint8_t> marked(g.node_count(), 0);
  for (int i = 0; i <= M; ++i) {
    for (int j = 0; j < N; ++j) {
      double v = value_at(g.radius(i), g.theta(j));
      vals[g.node_index(i, j)] = v;
      marked[g.node_index(i, j)] = v >= level ? 1 : 0;
    }
  }
  long count = 0;
  for (auto m : marked) count += m;
  if (count == 0) throw Error::domain("empty superlevel set");

  // effective level: mean of the candidate values over the marked boundary
  double acc = 0.0;
  long nb = 0;
  for (int i = 0; i <= M; ++i) {
    for (int j = 0; j < N; ++j) {
      if (!marked[g.node_index(i, j)]) continue;
      bool boundary = false;
      if (i > 0 && !marked[g.node_index(i - 1, j)]) boundary = true;
      if (i < M && !marked[g.node_index(i + 1, j)]) boundary = true;
      if (!marked[g.node_index(i, g.wrap(j + 1))]) boundary = true;
      if (!marked[g.node_index(i, g.wrap(j - 1))]) boundary = true;
      if (boundary) {
        acc += vals[g.node_index(i, j)];
        ++nb;
      }
    }
  }
  double t_eff = nb > 0 ? acc / nb : level;

  // near-optimal start: the clamped scaled candidate
  ScalarField init = ScalarField::zeros(grid);
  for (std::size_t k = 0; k < init.values.size(); ++k) {
    init.values[k] = std::clamp(vals[k] / t_eff, 0.0, 1.0);
  }

  SolveSpec spec;
  spec.grid = grid;
  spec.p = p;
  spec.kind = kind;
  spec.profile = &profile;
  spec.bc = BoundaryCondition::superlevel(std::move(marked));
  spec.opts = std::move(opts);
  spec.init = &init;

  SuperlevelResult out;
  out.solve = minimize_p_energy(spec);
  out.cap = out.solve.energy;
  out.effective_level = t_eff;
  out.marked_count = static_cast<int>(count);
  return out;
}

SuperlevelResult superlevel_capacity(const ScalarField& u, double level,
                                     double p, GradNormKind kind,
                                     const MeasureProfile& profile,
                                     SolveOptions opts) {
  return superlevel_capacity(
      [&](double r, double th) { return u.interpolate(r, th); }, level,
      u.grid, p, kind, profile, std::move(opts));
}

double el_residual_radial(const RayFunction& ray, double p, double alpha,
                          std::span<const double> radii) {
  if (!(p > 1.0)) throw Error::domain("el_residual_radial requires p > 1");
  if (radii.size() < 2) {
    throw Error::domain("el_residual_radial needs at least two radius samples");
  }
  auto deriv = [&](double r) {
    if (ray.derivative) return ray.derivative(r);
    // 5-point central stencil in r
    double h = 1e-4 * r;
    return (-ray.value(r + 2 * h) + 8 * ray.value(r + h) - 8 * ray.value(r - h) +
            ray.value(r - 2 * h)) /
           (12 * h);
  };
  std::vector<double> flux;
  flux.reserve(radii.size());
  for (double r : radii) {
    double du = deriv(r);
    double f = std::pow(std::abs(du), p - 2.0) * du * std::pow(r, 1.0 + alpha);
    flux.push_back(f);
  }
  double mean = 0.0;
  for (double f : flux) mean += f;
  mean /= flux.size();
  double dev = 0.0;
  for (double f : flux) dev = std::max(dev, std::abs(f - mean));
  if (dev == 0.0) return 0.0;
  if (std::abs(mean) < 1e-300 || dev / std::abs(mean) > 1e300) {
    return logmath::kPosInf;
  }
  return dev / std::abs(mean);
}

RefinementStudy run_refinement_study(double r0, double R, double p,
                                     GradNormKind kind,
                                     const MeasureProfile& profile,
                                     const std::vector<int>& sizes,
                                     SolveOptions opts) {
  if (sizes.size() < 2) {
    throw Error::domain("refinement study needs at least two grid sizes");
  }
  RefinementStudy st;
  st.sizes = sizes;
  for (int s : sizes) {
    SolveSpec spec;
    spec.grid = PolarGrid::log_spaced(r0, R, s, s);
    spec.p = p;
    spec.kind = kind;
    spec.profile = &profile;
    spec.bc = BoundaryCondition::capacitary_ring();
    spec.opts = opts;
    st.capacities.push_back(minimize_p_energy(spec).energy.value);
  }
  std::size_t n = st.capacities.size();
  double fine = st.capacities[n - 1];
  double mid = st.capacities[n - 2];
  st.extrapolated = fine + (fine - mid) / 3.0;
  st.error_estimate = std::abs(fine - mid);
  st.monotone = true;
  for (std::size_t i = 1; i < n; ++i) {
    if (st.capacities[i] > st.capacities[i - 1] * (1.0 + 1e-9)) {
      st.monotone = false;
    }
  }
  return st;
}

}  // namespace greenforge
