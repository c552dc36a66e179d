#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"

namespace greenforge {

/// Log-spaced radial x uniform periodic angular mesh.  The singularity is
/// never a node: r_0 > 0 and the inner circle stands in for it.
class PolarGrid {
 public:
  static std::shared_ptr<const PolarGrid> log_spaced(double r0, double R,
                                                     int M, int N);
  static std::shared_ptr<const PolarGrid> from_points(
      std::vector<double> radii, std::vector<double> thetas);

  int M() const { return static_cast<int>(radii_.size()) - 1; }
  int N() const { return static_cast<int>(thetas_.size()); }
  double radius(int i) const { return radii_[i]; }
  double theta(int j) const { return thetas_[j]; }
  double inner_radius() const { return radii_.front(); }
  double outer_radius() const { return radii_.back(); }
  double dtheta() const { return dtheta_; }
  double cell_rc(int i) const { return 0.5 * (radii_[i] + radii_[i + 1]); }
  double cell_dr(int i) const { return radii_[i + 1] - radii_[i]; }
  int wrap(int j) const {
    int n = N();
    return ((j % n) + n) % n;
  }
  int node_index(int i, int j) const { return i * N() + j; }
  int node_count() const { return (M() + 1) * N(); }
  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& thetas() const { return thetas_; }

 private:
  PolarGrid(std::vector<double> radii, std::vector<double> thetas);
  std::vector<double> radii_;
  std::vector<double> thetas_;
  double dtheta_ = 0.0;
};

struct ScalarField {
  std::shared_ptr<const PolarGrid> grid;
  std::vector<double> values;  // node-major by radius, then angle

  static ScalarField zeros(std::shared_ptr<const PolarGrid> g);
  static ScalarField sampled(std::shared_ptr<const PolarGrid> g,
                             const std::function<double(double, double)>& f);

  double& at(int i, int j) { return values[grid->node_index(i, j)]; }
  double at(int i, int j) const { return values[grid->node_index(i, j)]; }

  /// bilinear interpolation in (log r, theta); r must lie inside the grid
  double interpolate(double r, double theta) const;

  void check_finite() const;

  std::string to_csv() const;  // header r,theta,value; row-major by radius
  static ScalarField from_csv(const std::string& csv);
};

}  // namespace greenforge
