#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nctorus/energy.hpp"
#include "nctorus/flow.hpp"
#include "nctorus/matrix_oracle.hpp"

namespace nctorus {

struct CheckLine {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string note;
};

/// Aggregate result of a verification harness: the resolved configuration,
/// one line per check, and a row table for the CSV twin.
struct SummaryReport {
  std::string harness;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<CheckLine> checks;
  std::vector<std::string> table_header;
  std::vector<std::vector<std::string>> table;
  bool pass = false;

  void add_config(const std::string& key, const std::string& value);
  void add_check(const std::string& name, double value, double bound,
                 bool ok, const std::string& note = "");
  void finalize();  // pass = conjunction of checks
};

struct ScalarRegionResult {
  double w_min = 0.0;
  double t_at_min = 0.0;
  double s_at_min = 0.0;
};

/// Brute-force minimum of t + s over {0 <= t <= s <= 1, (1-t)(1-s) <= t}.
/// Exhaustive scan with the given grid step (0 < grid_step <= 1e-2).
ScalarRegionResult scalar_region_min(double grid_step);

/// Energy floor and flow-convergence harness for a winding class (m, n):
/// perturbs the monomial by exp_skew(i h) with ||h|| <= max_h, checks the
/// pre-flow floor, runs the flow, checks the final energy, winding drift,
/// and distance to the scalar-multiple line of the monomial.
SummaryReport verify_theorem(double theta, int m, int n, int trials,
                             const FlowConfig& flow_config, int bandwidth = 16,
                             std::uint64_t seed = 20260819,
                             double max_h = 0.2);

struct LemmaBatch {
  std::vector<LemmaReport> reports;  // one per evaluated (non-degenerate) pair
  SummaryReport summary;
};

/// Pair-bound harness: evaluates lemma_chain on monomial pairs and on
/// conjugated monomial pairs; asserts every slack >= -1e-6, |tr(uv)| <= 1e-8
/// and E(u) + E(v) >= 2 (3 - sqrt 5) pi^2 - 1e-6.
LemmaBatch verify_lemma(double theta, int trials, std::uint64_t seed,
                        int bandwidth = 16);

/// Enumerates monomial endomorphisms with exponent entries in
/// [-exponent_bound, exponent_bound] passing the validity test, and checks
/// the energy bound 4 (3 - sqrt 5) pi^2 and the family minimum 8 pi^2.
/// Searches only the monomial family.
SummaryReport verify_endo_bound(double theta, int exponent_bound);

/// Oracle certification wrapped as a report (one row per q).
SummaryReport verify_oracle(const std::vector<int>& qs, int trials,
                            std::uint64_t seed, double tol = 1e-10);

std::string format_g17(double v);

}  // namespace nctorus
