#pragma once

#include "grid.hpp"
#include "weights.hpp"

namespace greenforge {

/// Gradient norm taken cell-wise from the staggered node values.
/// FinslerMax is the minimal upper gradient of the l1 tangent norm (its dual
/// is the sup norm); Euclidean is the classical one.
enum class GradNormKind { Euclidean, FinslerMax };

const char* to_string(GradNormKind k);
GradNormKind grad_norm_kind_from(const std::string& name);

/// staggered cell gradient: radial part and angular part already divided by
/// the cell-center radius
struct CellGrad {
  double dr;
  double dth;
};

CellGrad cell_gradient(const ScalarField& u, int i, int j);
double grad_norm(const ScalarField& u, GradNormKind kind, int i, int j);

/// cell-wise quadrature of g_u^p against the weighted measure
double p_energy(const ScalarField& u, double p, GradNormKind kind,
                const MeasureProfile& profile);

/// same quadrature restricted to cells whose mean value lies in (a, b);
/// used by the level-energy identity checks
double band_energy(const ScalarField& u, double a, double b, double p,
                   GradNormKind kind, const MeasureProfile& profile);

struct DistanceOptions {
  /// route paths through the singularity: a virtual center node joined to the
  /// inner circle at cost r_0
  bool include_origin = true;
};

/// shortest-path upper approximant of the l1-Finsler distance between two
/// grid nodes, over radial, angular and cell-diagonal edges whose costs are
/// the exact Finsler lengths of the straight parameter-space segments
double finsler_distance(const PolarGrid& grid, int i0, int j0, int i1, int j1,
                        DistanceOptions opts = {});

double euclidean_distance(const PolarGrid& grid, int i0, int j0, int i1,
                          int j1);

}  // namespace greenforge
