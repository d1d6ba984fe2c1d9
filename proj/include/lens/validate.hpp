#pragma once
// Invariant suite behind `lens validate`: every module's properties checked
// numerically for one LensParams, reported as a table.

#include <iosfwd>
#include <string>
#include <vector>

#include "lens/domain.hpp"

namespace lens {

enum class Verdict { Pass, Fail, Info };

struct CheckRow {
  std::string module;
  std::string name;
  double value;      // measured error (or the reported quantity for Info rows)
  double tolerance;  // NaN for Info rows
  Verdict verdict;
  std::string note;
};

struct ValidationReport {
  std::vector<CheckRow> rows;
  double mass_identity = 0;  // -(1/4 pi) ∮ sigma ds
  bool ok() const;
};

/// quick trims sample counts and solver point sets.
ValidationReport run_validation(const LensParams& params, bool quick);

void print_report(std::ostream& out, const LensParams& params, const ValidationReport& report);

}  // namespace lens
