#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nctorus/algebra.hpp"

namespace nctorus {

/// Step-size stability: the energy Hessian at a minimizer has eigenvalues
/// 4 pi^2 (m^2 + n^2) over window modes, so gradient descent is stable for
/// step_size < 2 / (4 pi^2 * 2 B^2), about 9.89e-5 at bandwidth 16. The
/// default 1e-3 relies on the backtracking halvings to find that range.
struct FlowConfig {
  double step_size = 1e-3;
  long max_iters = 50000;
  double grad_tol = 1e-8;
  int reunitarize_every = 10;
  int exp_terms = 12;
  std::uint64_t seed = 0;
};

enum class FlowStatus { converged, max_iters, aborted_spill, aborted_defect };

std::string to_string(FlowStatus s);

struct FlowRecord {
  long iter = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
  double winding1 = 0.0;
  double winding2 = 0.0;
  double unitarity_defect = 0.0;  // last measured (on the unitarize schedule)
  double spill_mass = 0.0;
};

struct FlowTrace {
  std::vector<FlowRecord> records;
  FlowStatus status = FlowStatus::max_iters;
  long iters = 0;  // gradient steps actually taken
  std::optional<FourierElement> final_state;

  const FlowRecord& last() const { return records.back(); }
};

/// u skew(u* Lap u), with skew(x) = (x - x*)/2; vanishes exactly at scalar
/// multiples of monomials. Throws if the unitarity defect exceeds 1e-6.
FourierElement riemannian_grad(const FourierElement& u);

/// Newton-Schulz iteration u <- u (3 - u*u)/2, `sweeps` times. Requires
/// defect <= 0.5; each sweep is quadratic (defect' ~ 3/4 defect^2 for small
/// defect, measured constant C ~ 0.9 at defect 0.1).
FourierElement unitarize(const FourierElement& u, int sweeps);

/// Riemannian gradient descent with the exp_skew retraction:
///   u <- unitarize-on-schedule( u exp_skew(-step skew(u* Lap u)) ).
/// Steps that raise the energy trigger step halving (up to 20); the step
/// resets after an accepted move. Aborts when the tracked spill exceeds
/// 1e-6 of the element norm or the defect cannot be repaired below 1e-6.
/// u0 with defect > 0.5 is rejected (repair would change the class).
FlowTrace flow(const FourierElement& u0, const FlowConfig& config);

}  // namespace nctorus
