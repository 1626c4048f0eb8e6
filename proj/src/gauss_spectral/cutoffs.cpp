#include "ovallab/gauss_spectral/cutoffs.hpp"

#include <vector>

#include "ovallab/core/csv.hpp"
#include "ovallab/core/errors.hpp"
#include "ovallab/core/smooth.hpp"

namespace ovallab {

double cutoff_eval(const CutoffSpec& spec, double v) {
  require(spec.theta > 0.0, ErrorKind::invalid_argument,
          "cutoff theta must be positive");
  require(v >= 0.0, ErrorKind::invalid_argument,
          "cutoff argument v must be >= 0");
  const double th = spec.theta;
  switch (spec.kind) {
    case CutoffKind::cyl:
      return smooth01((v - 5.0 * th / 8.0) / (th / 4.0));
    case CutoffKind::tip:
      return 1.0 - smooth01((v - th) / th);
    case CutoffKind::zeta:
      return smooth01((v - th / 8.0) / (th / 8.0));
  }
  throw LabError(ErrorKind::invalid_argument, "unknown cutoff kind");
}

void write_cutoff_golden_csv(const std::string& path) {
  const double theta = 0.2;
  std::vector<std::vector<double>> rows;
  for (int i = 0; i <= 200; ++i) {
    const double v = 0.0025 * i;
    rows.push_back({v, cutoff_eval({CutoffKind::cyl, theta}, v),
                    cutoff_eval({CutoffKind::tip, theta}, v),
                    cutoff_eval({CutoffKind::zeta, theta}, v)});
  }
  write_csv(path, {"golden cutoff samples, theta = 0.2"},
            {"v", "chi_cyl", "chi_tip", "zeta"}, rows);
}

}  // namespace ovallab
