#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cusptorsion/spectrum.hpp"

namespace cusptorsion::crosssection {

class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ZetaError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Spectrum known to be scale * (j^2 + k^2) over nonzero integer pairs, which
/// makes the continuation of its zeta function exact. Only the in-memory
/// generator sets this; it is not part of the document format.
/// The document could not be read at all.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SquareLattice {
  double scale = 1.0;
};

struct CrossSection {
  int n = 2;
  std::vector<long long> betti;
  int rank_e = 1;
  double volume = 1.0;
  std::map<int, SpectrumList> coclosed;
  double tail_dimension_hint = 2.0;
  std::map<int, SquareLattice> lattice;

  /// Throws SchemaError for odd n, wrong Betti length, negative entries, ...
  void validate() const;

  bool witt() const;
  bool duality_symmetric() const;
  long long euler_characteristic() const;
  /// mu_p = n/2 - p
  double mu(int p) const { return n / 2.0 - p; }
};

CrossSection load_text(const std::string& text);
CrossSection load_file(const std::string& path);

/// Canonical document text (keys sorted, round-trip float formatting).
std::string serialize(const CrossSection& cs);

/// FNV-1a hash of serialize(cs), as 16 hex digits.
std::string digest(const CrossSection& cs);

long long euler_char(const CrossSection& cs);
bool witt_check(const CrossSection& cs);

/// Zeta function of the coclosed spectrum in degree p. Lattice spectra are
/// continued exactly; other spectra use the truncated sum plus a Weyl-law tail
/// N(lambda) ~ C lambda^{d/2} with d = tail_dimension_hint.
double zeta_ccl(const CrossSection& cs, int p, double s);

/// zeta(0) of the coclosed spectrum; refused unless the spectrum is empty or
/// a declared lattice.
double zeta_ccl_at_zero(const CrossSection& cs, int p);

CrossSection generate_flat_torus_2d(double side, int cutoff);

}  // namespace cusptorsion::crosssection
