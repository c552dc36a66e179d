#pragma once

#include <string>
#include <vector>

namespace greenforge::acceptance {

struct AcceptanceCheck {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  std::string relation;  // "<=", ">=", or "==" with bound as target
  bool pass = false;
};

struct CriterionOutcome {
  int id = 0;
  std::string description;
  bool pass = false;
  double seconds = 0.0;
  std::vector<AcceptanceCheck> checks;
};

/// Runs the acceptance criteria (all of them, or the listed subset) with the
/// tolerances pinned in code.  Deterministic and single-process.
std::vector<CriterionOutcome> run(const std::vector<int>& only = {});

}  // namespace greenforge::acceptance
