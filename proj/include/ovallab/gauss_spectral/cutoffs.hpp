/// @file cutoffs.hpp
/// @brief Smooth radius-threshold cutoffs shared by every region construction.
///
/// All three cutoffs are functions of the profile radius v built from one
/// C-infinity transition (see core/smooth.hpp), with plateaus pinned by a
/// golden table committed under data/ (regenerated via
/// `lab_cli selftest --write-golden`):
///
///   kind  | identically 0        | identically 1
///   ------+----------------------+----------------------
///   cyl   | v <= 5 theta / 8     | v >= 7 theta / 8
///   tip   | v >= 2 theta         | v <= theta
///   zeta  | v <= theta / 8       | v >= theta / 4

#pragma once

#include <string>

namespace ovallab {

enum class CutoffKind { cyl, tip, zeta };

struct CutoffSpec {
  CutoffKind kind = CutoffKind::cyl;
  double theta = 0.1;
};

/// Evaluates the cutoff at radius v (>= 0).  theta <= 0 or negative v throw
/// LabError(invalid_argument).
double cutoff_eval(const CutoffSpec& spec, double v);

/// Writes the golden sample table (theta = 0.2, v = 0 : 0.0025 : 0.5, one
/// column per kind, 17 significant digits).  Byte-compared by tests.
void write_cutoff_golden_csv(const std::string& path);

}  // namespace ovallab
