#include "snls/inequalities.hpp"

// Regression-frozen corpus ratios, captured from the first verified build via
//   snls oracle corpus_ratios        (grid n=256, L=8, SNLS_THREADS=1)
// Later builds assert measured <= frozen * 1.01.

namespace snls {

const std::map<std::string, double>& inequality_baselines() {
  static const std::map<std::string, double> table = {
      // generated -- do not edit by hand
  };
  return table;
}

}  // namespace snls
