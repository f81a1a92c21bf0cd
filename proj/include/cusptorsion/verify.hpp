#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cusptorsion::verify {

struct Check {
  std::string name;
  int criterion = 0;
  double measured = 0.0;   // worst error, or a failure count for structural checks
  double tolerance = 0.0;
  double seconds = 0.0;
  bool passed = false;
  std::string detail;
};

class UnknownSuite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Grid checks fan out over `jobs` threads; results are reduced in grid order.
Check wronskian_grid(int jobs = 1);
Check uniform_asymptotics(int jobs = 1);
Check interval_harmonic(int jobs = 1);
Check variation_triangle(int jobs = 1);
Check t_function_checks(int jobs = 1);
Check halfline_harmonic(int jobs = 1);
Check neumann_dirichlet(int jobs = 1);
Check coclosed_alternating_sum(int jobs = 1);
Check anomaly_invariants(int jobs = 1);
Check two_route_defect(int jobs = 1);
Check regularized_integrals(int jobs = 1);

/// Suites: all, specfun, detzeta, asymptote, crosssection, anomaly, torsion.
std::vector<Check> run_suite(const std::string& suite, int jobs = 1);

const std::vector<std::string>& suite_names();

}  // namespace cusptorsion::verify
