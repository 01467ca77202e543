#include "nctorus/flow.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nctorus/energy.hpp"

namespace nctorus {

namespace {

constexpr double kDefectGate = 1e-6;    // abort + winding validity threshold
constexpr double kNsTarget = 1e-7;      // sweep when measured defect exceeds
constexpr double kMonotoneTol = 1e-9;   // permitted per-step energy increase
constexpr double kSpillRel = 1e-6;      // abort when spill > kSpillRel * norm
constexpr int kMaxHalvings = 20;

/// Energy, windings and squared norm in one pass. The winding trace
/// tr(u* delta_j u)/(2 pi i) collapses to sum_j j |a|^2 because the adjoint
/// and twist phases cancel pairwise inside the trace; the library winding()
/// evaluates the trace form and the two agree to roundoff.
struct Stats {
  double energy = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  double norm2 = 0.0;
};

Stats fused_stats(const FourierElement& u) {
  const int B = u.bandwidth();
  const int W = 2 * B + 1;
  const cplx* d = u.data().data();
  Stats st;
  for (int i = 0; i < W * W; ++i) {
    const int m = i / W - B;
    const int n = i % W - B;
    const double a2 = std::norm(d[i]);
    st.energy += (double(m) * m + double(n) * n) * a2;
    st.w1 += m * a2;
    st.w2 += n * a2;
    st.norm2 += a2;
  }
  st.energy *= 2.0 * std::numbers::pi * std::numbers::pi;
  return st;
}

/// skew(u* Lap u) = (y - y*)/2, the intrinsic (Lie-algebra) gradient.
FourierElement intrinsic_grad(const FourierElement& u) {
  const FourierElement y = multiply(adjoint(u), laplacian(u));
  return scale(sub(y, adjoint(y)), 0.5);
}

/// defect element d = u*u - 1 (self-adjoint).
FourierElement defect_element(const FourierElement& u) {
  FourierElement d = multiply(adjoint(u), u);
  d.set_coeff(0, 0, d.coeff(0, 0) - 1.0);
  return d;
}

/// Same coefficients, ledger reset to the given value.
FourierElement with_spill(const FourierElement& a, double spill) {
  TruncationPolicy pol = a.policy();
  pol.spill_mass = spill;
  FourierElement out(a.theta(), pol);
  out.mutable_data() = a.data();
  return out;
}

}  // namespace

std::string to_string(FlowStatus s) {
  switch (s) {
    case FlowStatus::converged: return "converged";
    case FlowStatus::max_iters: return "max_iters";
    case FlowStatus::aborted_spill: return "aborted_spill";
    case FlowStatus::aborted_defect: return "aborted_defect";
  }
  return "unknown";
}

FourierElement riemannian_grad(const FourierElement& u) {
  const double defect = unitarity_defect(u);
  if (defect > kDefectGate)
    throw std::domain_error("riemannian_grad: unitarity defect " +
                            std::to_string(defect) + " exceeds 1e-6");
  return multiply(u, intrinsic_grad(u));
}

FourierElement unitarize(const FourierElement& u, int sweeps) {
  FourierElement v = u;
  for (int k = 0; k < sweeps; ++k) {
    const FourierElement d = defect_element(v);
    if (hs_norm(d) > 0.5)
      throw std::domain_error(
          "unitarize: defect > 0.5, Newton-Schulz may diverge; restart with "
          "a smaller step");
    // u (3 - u*u)/2 = u - (u d)/2.
    v = sub(v, scale(multiply(v, d), 0.5));
  }
  return v;
}

FlowTrace flow(const FourierElement& u0, const FlowConfig& config) {
  if (config.step_size <= 0.0)
    throw std::invalid_argument("flow: step_size must be positive");
  if (config.reunitarize_every < 1)
    throw std::invalid_argument("flow: reunitarize_every must be >= 1");
  if (config.exp_terms < 1)
    throw std::invalid_argument("flow: exp_terms must be >= 1");

  // Trajectory spill ledger. Derived quantities (gradient, defect, series
  // terms) reuse u several times per iteration; summing their inherited
  // fields would count the same history once per reuse and compound across
  // iterations. Instead u is kept with a zeroed field, every accepted
  // operation chain contributes only the mass it freshly discarded, and the
  // running total is what the records and the abort check see.
  double spill_total = u0.spill_mass();
  FourierElement u = with_spill(u0, 0.0);
  double defect = unitarity_defect(u);
  if (defect > 0.5)
    throw std::invalid_argument(
        "flow: u0 defect > 0.5 rejected (repairing it could change the "
        "winding class)");

  FlowTrace tr;
  tr.records.reserve(256);

  for (long iter = 0;; ++iter) {
    // Unitarize on schedule; measuring the defect shares the u*u product
    // with the Newton-Schulz correction.
    if (iter % config.reunitarize_every == 0) {
      FourierElement d = defect_element(u);
      defect = hs_norm(d);
      int sweeps = 0;
      while (defect > kNsTarget && sweeps < 25) {
        if (defect > 0.5) break;
        u = sub(u, scale(multiply(u, d), 0.5));
        d = defect_element(u);
        defect = hs_norm(d);
        ++sweeps;
      }
      spill_total += u.spill_mass();
      u = with_spill(u, 0.0);
      if (defect > kDefectGate) {
        tr.status = FlowStatus::aborted_defect;
        tr.iters = iter;
        const Stats st = fused_stats(u);
        tr.records.push_back({iter, st.energy, hs_norm(intrinsic_grad(u)),
                              st.w1, st.w2, defect, spill_total});
        tr.final_state = with_spill(u, spill_total);
        return tr;
      }
    }

    const Stats st = fused_stats(u);
    const FourierElement g = intrinsic_grad(u);
    const double gn = hs_norm(g);
    tr.records.push_back(
        {iter, st.energy, gn, st.w1, st.w2, defect, spill_total});

    if (spill_total > kSpillRel * std::sqrt(st.norm2)) {
      tr.status = FlowStatus::aborted_spill;
      tr.iters = iter;
      tr.final_state = with_spill(u, spill_total);
      return tr;
    }
    if (gn <= config.grad_tol) {
      tr.status = FlowStatus::converged;
      tr.iters = iter;
      tr.final_state = with_spill(u, spill_total);
      return tr;
    }
    if (iter >= config.max_iters) {
      tr.status = FlowStatus::max_iters;
      tr.iters = iter;
      tr.final_state = with_spill(u, spill_total);
      return tr;
    }

    // Retraction step with backtracking. The series tail tolerance is tied
    // to the step: a tail below 1% of ||s|| leaves the descent direction
    // intact, and the 5e-9 cap keeps ten steps of tail-induced defect well
    // under the 1e-6 gate until the next unitarize event.
    bool accepted = false;
    double step = config.step_size;
    for (int halving = 0; halving <= kMaxHalvings; ++halving) {
      const FourierElement s = scale(g, -step);
      const double snorm = step * gn;
      const double tail_tol =
          std::max(1e-16, std::min(5e-9, 0.01 * snorm));
      const FourierElement u_trial =
          multiply(u, exp_skew(s, config.exp_terms, tail_tol));
      if (energy(u_trial) <= st.energy + kMonotoneTol) {
        // Rejected trials never enter u, so only this one is charged.
        spill_total += u_trial.spill_mass();
        u = with_spill(u_trial, 0.0);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No decrease at step/2^20: numerical floor; stop rather than loop.
      tr.status = FlowStatus::max_iters;
      tr.iters = iter;
      tr.final_state = with_spill(u, spill_total);
      return tr;
    }
  }
}

}  // namespace nctorus
