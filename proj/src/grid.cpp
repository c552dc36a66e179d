#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace greenforge {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

PolarGrid::PolarGrid(std::vector<double> radii, std::vector<double> thetas)
    : radii_(std::move(radii)), thetas_(std::move(thetas)) {
  if (M() < 8 || N() < 8) {
    throw Error::domain("polar grid needs M >= 8 and N >= 8");
  }
  if (!(radii_.front() > 0.0)) {
    throw Error::domain("polar grid requires r_0 > 0");
  }
  for (std::size_t i = 1; i < radii_.size(); ++i) {
    if (!(radii_[i] > radii_[i - 1])) {
      throw Error::domain("polar grid radii must be strictly increasing");
    }
  }
  dtheta_ = kTwoPi / N();
}

std::shared_ptr<const PolarGrid> PolarGrid::log_spaced(double r0, double R,
                                                       int M, int N) {
  if (!(r0 > 0.0 && R > r0)) {
    throw Error::domain("log_spaced grid requires 0 < r0 < R");
  }
  std::vector<double> radii(M + 1);
  double l0 = std::log(r0), l1 = std::log(R);
  for (int i = 0; i <= M; ++i) {
    radii[i] = std::exp(l0 + (l1 - l0) * i / M);
  }
  radii.front() = r0;
  radii.back() = R;
  std::vector<double> thetas(N);
  for (int j = 0; j < N; ++j) thetas[j] = kTwoPi * j / N;
  return std::shared_ptr<const PolarGrid>(
      new PolarGrid(std::move(radii), std::move(thetas)));
}

std::shared_ptr<const PolarGrid> PolarGrid::from_points(
    std::vector<double> radii, std::vector<double> thetas) {
  return std::shared_ptr<const PolarGrid>(
      new PolarGrid(std::move(radii), std::move(thetas)));
}

ScalarField ScalarField::zeros(std::shared_ptr<const PolarGrid> g) {
  ScalarField f;
  f.grid = std::move(g);
  f.values.assign(f.grid->node_count(), 0.0);
  return f;
}

ScalarField ScalarField::sampled(
    std::shared_ptr<const PolarGrid> g,
    const std::function<double(double, double)>& fn) {
  ScalarField f = zeros(std::move(g));
  const auto& grid = *f.grid;
  for (int i = 0; i <= grid.M(); ++i) {
    for (int j = 0; j < grid.N(); ++j) {
      f.at(i, j) = fn(grid.radius(i), grid.theta(j));
    }
  }
  return f;
}

double ScalarField::interpolate(double r, double theta) const {
  const auto& g = *grid;
  if (!(r >= g.inner_radius() * (1.0 - 1e-12) &&
        r <= g.outer_radius() * (1.0 + 1e-12))) {
    throw Error::domain("interpolation point r = " + fmt(r) +
                        " outside the grid annulus");
  }
  r = std::clamp(r, g.inner_radius(), g.outer_radius());
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0.0) theta += kTwoPi;

  int lo = 0, hi = g.M();
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    if (g.radius(mid) <= r) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double tr = (std::log(r) - std::log(g.radius(lo))) /
              (std::log(g.radius(lo + 1)) - std::log(g.radius(lo)));
  tr = std::clamp(tr, 0.0, 1.0);

  double jf = theta / g.dtheta();
  int j0 = g.wrap(static_cast<int>(std::floor(jf)));
  double tj = jf - std::floor(jf);
  int j1 = g.wrap(j0 + 1);

  double v00 = at(lo, j0), v01 = at(lo, j1);
  double v10 = at(lo + 1, j0), v11 = at(lo + 1, j1);
  return (1.0 - tr) * ((1.0 - tj) * v00 + tj * v01) +
         tr * ((1.0 - tj) * v10 + tj * v11);
}

void ScalarField::check_finite() const {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error::domain("scalar field contains a non-finite value");
    }
  }
}

std::string ScalarField::to_csv() const {
  std::string out = "r,theta,value\n";
  const auto& g = *grid;
  for (int i = 0; i <= g.M(); ++i) {
    for (int j = 0; j < g.N(); ++j) {
      out += fmt(g.radius(i));
      out += ',';
      out += fmt(g.theta(j));
      out += ',';
      out += fmt(at(i, j));
      out += '\n';
    }
  }
  return out;
}

ScalarField ScalarField::from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "r,theta,value") {
    throw Error::io("field csv must start with header 'r,theta,value'");
  }
  std::vector<double> rs, ths, vs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double r, th, v;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &r, &th, &v) != 3) {
      throw Error::io("bad field csv row: " + line);
    }
    rs.push_back(r);
    ths.push_back(th);
    vs.push_back(v);
  }
  if (rs.empty()) throw Error::io("field csv has no rows");
  // row-major by radius: the leading block shares the first radius
  std::size_t n = 0;
  while (n < rs.size() && rs[n] == rs[0]) ++n;
  if (n < 8 || rs.size() % n != 0) {
    throw Error::io("field csv rows do not form a radius-major grid");
  }
  std::size_t m1 = rs.size() / n;
  std::vector<double> radii(m1), thetas(n);
  for (std::size_t i = 0; i < m1; ++i) radii[i] = rs[i * n];
  for (std::size_t j = 0; j < n; ++j) thetas[j] = ths[j];
  ScalarField f;
  f.grid = PolarGrid::from_points(std::move(radii), std::move(thetas));
  f.values = std::move(vs);
  return f;
}

}  // namespace greenforge
