#pragma once

#include <utility>
#include <vector>

namespace cusptorsion {

/// Positive eigenvalues with multiplicities, strictly ascending.
struct SpectrumList {
  std::vector<std::pair<double, long long>> eigenvalues;

  /// Throws std::invalid_argument unless values are positive, finite and
  /// strictly ascending with multiplicities >= 1.
  void validate() const;
  bool empty() const { return eigenvalues.empty(); }
  long long count() const;
};

}  // namespace cusptorsion
