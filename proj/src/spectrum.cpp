#include "cusptorsion/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace cusptorsion {

void SpectrumList::validate() const {
  double prev = 0.0;
  for (const auto& [lambda, mult] : eigenvalues) {
    if (!std::isfinite(lambda) || lambda <= 0.0) {
      throw std::invalid_argument("spectrum: eigenvalues must be positive and finite");
    }
    if (mult < 1) throw std::invalid_argument("spectrum: multiplicities must be >= 1");
    if (lambda <= prev) throw std::invalid_argument("spectrum: eigenvalues must be strictly ascending");
    prev = lambda;
  }
}

long long SpectrumList::count() const {
  long long total = 0;
  for (const auto& e : eigenvalues) total += e.second;
  return total;
}

}  // namespace cusptorsion
