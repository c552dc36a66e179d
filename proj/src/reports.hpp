#pragma once

#include <string>
#include <vector>

namespace greenforge::reports {

/// JSON report builders behind the subcommand surface.  Every function
/// returns a deterministic single JSON object; structured inputs arrive as
/// JSON parameter objects with unknown keys rejected.

std::string criterion_report(const std::string& weight_spec, double p);
std::string capacity_report(const std::string& weight_spec, double p, double r,
                            double R);
std::string profile_csv(const std::string& weight_spec);

/// params: {weight, p, norm, grid:{M,N,r0,R}, bc:{...}, schedule:[...],
///          stop_tol?, max_iters?, threads?}
/// bc: {kind:"capacitary_ring", inner?, outer?}
///   | {kind:"dirichlet", inner:<num|[..]>, outer:<num|[..]>}
///   | {kind:"superlevel", field_csv:"...", level:<num>}
/// field_csv_out receives the solved field dump when non-null.
std::string solve_report(const std::string& params_json,
                         std::string* field_csv_out);

/// params: {p, alpha, profile, R?|unbounded?, samples?, normalize?, levels?,
///          grid?:{M,N}, eval?:[[r,theta],...], trace?:{radii:[..], R_cap}}
std::string green_report(const std::string& params_json);

/// params: {p, alpha, R, f1, f2, levels?, grid?:{M,N}}
std::string witness_nonuniqueness_report(const std::string& params_json);

/// params: {p, alpha, second_profile?, grid?:{M,N}}
std::string witness_comparison_report(const std::string& params_json);

std::string harnack_constants_report(double A, double lambda);
std::string harnack_decay_report(const std::string& field_csv, double cx,
                                 double cy, double radius,
                                 const std::vector<double>& deltas,
                                 double lambda);

std::string acceptance_report(const std::vector<int>& only);

}  // namespace greenforge::reports
