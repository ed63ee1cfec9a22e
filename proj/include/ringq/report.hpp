#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ringq/table.hpp"

namespace ringq {

struct CriterionOutcome {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;   // deterministic summary, no wall-clock content
  double seconds = 0.0; // measured, reported to the console only
};

struct ReportOptions {
  bool quick = false;  // reduced grids and sample counts for smoke runs
  std::uint64_t seed = 20240917ull;
};

/// Runs the full verification suite: the capacity oracle comparison, the
/// weighted-integral identity, the closed-form admissibility integral, the
/// ring inequality ensemble, the non-equicontinuous family, the constant
/// pack, the inner-dilatation match, the set-function probes, and an
/// in-process determinism double run.
std::vector<CriterionOutcome> run_acceptance_criteria(
    const ReportOptions& options = {});

/// Summary table (criterion, name, pass, detail).
Table criteria_table(const std::vector<CriterionOutcome>& outcomes);

}  // namespace ringq
