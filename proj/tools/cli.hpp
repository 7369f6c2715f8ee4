#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "trefftz/harness.hpp"

namespace trefftz::cli {

enum ExitCode : int { kOk = 0, kValidationError = 1, kCheckFailed = 2 };

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckOutcome {
  std::string name;
  bool passed = false;
  double value = 0.0;      ///< worst observed quantity
  double tolerance = 0.0;  ///< pass threshold for value
};

struct CheckOptions {
  Material material{1.0, 1.0};
  SurfaceSpec surface = Sphere{};
  int degree = 6;
  int n_theta = 32;
  int n_phi = 64;
  int somigliana_n_theta = 48;
  int betti_pairs = 100;
  int rigid_samples = 10000;
  std::uint64_t seed = 7;
};

/// Identity suites: E p = 0 on the basis, zero traction of rigid fields,
/// Betti reciprocity and the Somigliana interior/exterior dichotomy.
std::vector<CheckOutcome> run_checks(const CheckOptions& options);

/// Export `# degree=k s=<s> row=<i>` blocks (s and i 1-based) followed by
/// the element's components, each introduced by `# component=<j>`.
void write_basis(std::ostream& os, const ElasticBasis& basis);

}  // namespace trefftz::cli
