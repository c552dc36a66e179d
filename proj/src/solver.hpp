#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "capacity.hpp"
#include "finsler.hpp"
#include "grid.hpp"

namespace greenforge {

enum class BCKind { CapacitaryRing, Dirichlet, SuperlevelInner };

struct BoundaryCondition {
  BCKind kind = BCKind::CapacitaryRing;
  double inner_value = 1.0;
  double outer_value = 0.0;
  std::vector<double> inner_values;  // Dirichlet: per angular node
  std::vector<double> outer_values;
  std::vector<std::uint8_t> marked;  // SuperlevelInner: node mask, value 1

  static BoundaryCondition capacitary_ring(double inner = 1.0,
                                           double outer = 0.0);
  static BoundaryCondition dirichlet(std::vector<double> inner,
                                     std::vector<double> outer);
  static BoundaryCondition superlevel(std::vector<std::uint8_t> marked);
};

struct SolveOptions {
  std::vector<double> schedule{4.0, 8.0, 16.0, 32.0};  // smoothed-max stages
  double stop_tol = 1e-9;   // relative energy change ...
  int stop_window = 50;     // ... over this many iterations
  long max_iters = 40000;
  int n_threads = 1;        // reductions are banded; results are
                            // bit-identical for every thread count
};

struct SolveSpec {
  std::shared_ptr<const PolarGrid> grid;
  double p = 2.0;
  GradNormKind kind = GradNormKind::Euclidean;
  const MeasureProfile* profile = nullptr;
  BoundaryCondition bc;
  SolveOptions opts;
  const ScalarField* init = nullptr;
};

struct SolveResult {
  ScalarField field;
  CapacityResult energy;      // best estimate; FinslerMax extrapolates q->inf
  double final_stage_energy = 0.0;
  double max_norm_energy = 0.0;  // exact FinslerMax energy of the field
  long iterations = 0;
  std::vector<double> stage_energies;
  std::vector<double> energy_history;  // accepted energies, nonincreasing
};

SolveResult minimize_p_energy(const SolveSpec& spec);

/// int_r^R (w(rho) rho)^{-1/(p-1)} d(rho) -- the 1-D resistance integral
double radial_resistance(const MeasureProfile& profile, double p, double r,
                         double R);

struct SuperlevelResult {
  CapacityResult cap;
  double effective_level = 0.0;  // mean of the values on the marked boundary
  int marked_count = 0;
  SolveResult solve;
};

/// marks {u >= level} as inner boundary at 1, outer circle at 0, and returns
/// the minimized p-energy as the capacity of the superlevel set
SuperlevelResult superlevel_capacity(
    const std::function<double(double, double)>& value_at, double level,
    std::shared_ptr<const PolarGrid> grid, double p, GradNormKind kind,
    const MeasureProfile& profile, SolveOptions opts = {});

SuperlevelResult superlevel_capacity(const ScalarField& u, double level,
                                     double p, GradNormKind kind,
                                     const MeasureProfile& profile,
                                     SolveOptions opts = {});

struct RayFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;  // optional; numeric fallback
};

/// relative variation of the flux |u'|^{p-2} u' r^{1+alpha} across the
/// samples; vanishes iff the ray is 1-D p-harmonic for the measure
/// r^{1+alpha} dr.  Vanishing mean flux with nonvanishing variation reports
/// the +inf marker.
double el_residual_radial(const RayFunction& ray, double p, double alpha,
                          std::span<const double> radii);

struct RefinementStudy {
  std::vector<int> sizes;
  std::vector<double> capacities;
  double extrapolated = 0.0;
  double error_estimate = 0.0;
  bool monotone = false;
};

RefinementStudy run_refinement_study(double r0, double R, double p,
                                     GradNormKind kind,
                                     const MeasureProfile& profile,
                                     const std::vector<int>& sizes,
                                     SolveOptions opts = {});

}  // namespace greenforge
