#include "nctorus/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "nctorus/parallel.hpp"

namespace nctorus {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi2 = 2.0 * kPi * kPi;
}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void SummaryReport::add_config(const std::string& key, const std::string& value) {
  config.emplace_back(key, value);
}

void SummaryReport::add_check(const std::string& name, double value,
                              double bound, bool ok, const std::string& note) {
  checks.push_back(CheckLine{name, value, bound, ok, note});
}

void SummaryReport::finalize() {
  pass = true;
  for (const auto& c : checks) pass = pass && c.pass;
}

ScalarRegionResult scalar_region_min(double grid_step) {
  if (!(grid_step > 0.0) || grid_step > 1e-2)
    throw std::invalid_argument("scalar_region_min: need 0 < grid_step <= 1e-2");
  const long n = std::lround(1.0 / grid_step);
  ScalarRegionResult res;
  res.w_min = 2.0;  // (t,s) = (1,1) is always feasible
  res.t_at_min = 1.0;
  res.s_at_min = 1.0;
  for (long i = 0; i <= n; ++i) {
    const double t = double(i) * grid_step;
    for (long j = i; j <= n; ++j) {
      const double s = double(j) * grid_step;
      if ((1.0 - t) * (1.0 - s) <= t && t + s < res.w_min) {
        res.w_min = t + s;
        res.t_at_min = t;
        res.s_at_min = s;
      }
    }
  }
  return res;
}

namespace {

/// Scaled self-adjoint perturbation with ||h||_2 = target.
FourierElement perturbation(double theta, int bandwidth, double target,
                            std::uint64_t seed) {
  FourierElement h = random_selfadjoint(theta, bandwidth, 0.5, seed);
  const double nrm = hs_norm(h);
  return scale(h, target / nrm);
}

struct TheoremRow {
  double hnorm = 0.0;
  double e0 = 0.0;
  double e_final = 0.0;
  double drift1 = 0.0;
  double drift2 = 0.0;
  double dist_line = 0.0;
  double final_defect = 0.0;
  long iters = 0;
  FlowStatus status = FlowStatus::max_iters;
};

}  // namespace

SummaryReport verify_theorem(double theta, int m, int n, int trials,
                             const FlowConfig& flow_config, int bandwidth,
                             std::uint64_t seed, double max_h) {
  if (2 * std::abs(m) > bandwidth || 2 * std::abs(n) > bandwidth)
    throw std::invalid_argument("verify_theorem: |m|,|n| must be <= bandwidth/2");
  const double floor = kTwoPi2 * (double(m) * m + double(n) * n);
  const TruncationPolicy policy{bandwidth, ClipMode::track_spill, 0.0};
  const FourierElement mono = monomial(theta, m, n, cplx(1.0, 0.0), policy);

  SummaryReport rep;
  rep.harness = "theorem-floor";
  rep.add_config("theta", format_g17(theta));
  rep.add_config("m", std::to_string(m));
  rep.add_config("n", std::to_string(n));
  rep.add_config("trials", std::to_string(trials));
  rep.add_config("bandwidth", std::to_string(bandwidth));
  rep.add_config("seed", std::to_string(seed));
  rep.add_config("max_h", format_g17(max_h));
  rep.add_config("step_size", format_g17(flow_config.step_size));
  rep.add_config("max_iters", std::to_string(flow_config.max_iters));
  rep.add_config("grad_tol", format_g17(flow_config.grad_tol));
  rep.add_config("reunitarize_every", std::to_string(flow_config.reunitarize_every));
  rep.add_config("exp_terms", std::to_string(flow_config.exp_terms));

  std::vector<TheoremRow> rows(trials);
  parallel_for(trials, [&](long t) {
    // Per-trial deterministic seeds; the perturbation size sweeps the
    // allowed range so small and near-maximal kicks are both exercised.
    std::mt19937_64 rng(seed + 7919 * static_cast<std::uint64_t>(t));
    std::uniform_real_distribution<double> usize(0.25 * max_h, max_h);
    TheoremRow& row = rows[t];
    row.hnorm = usize(rng);
    const FourierElement h = perturbation(theta, bandwidth, row.hnorm, rng());
    const FourierElement u0 =
        multiply(mono, exp_skew(scale(h, cplx(0.0, 1.0)), 16));
    row.e0 = energy(u0);

    const FlowTrace trace = flow(u0, flow_config);
    row.status = trace.status;
    row.iters = trace.iters;
    row.e_final = trace.last().energy;
    for (const FlowRecord& r : trace.records) {
      row.drift1 = std::max(row.drift1, std::abs(r.winding1 - m));
      row.drift2 = std::max(row.drift2, std::abs(r.winding2 - n));
    }
    const FourierElement& uf = *trace.final_state;
    row.dist_line = hs_norm(sub(uf, scale(mono, inner(uf, mono))));
    row.final_defect = unitarity_defect(uf);
  });

  double min_e0 = rows.empty() ? 0.0 : rows[0].e0;
  double max_final_err = 0.0, max_drift = 0.0, max_dist = 0.0;
  int converged = 0;
  for (const auto& row : rows) {
    min_e0 = std::min(min_e0, row.e0);
    if (row.status == FlowStatus::converged) ++converged;
    max_final_err = std::max(max_final_err, std::abs(row.e_final - floor));
    max_drift = std::max({max_drift, row.drift1, row.drift2});
    max_dist = std::max(max_dist, row.dist_line);
  }

  rep.add_check("pre_flow_energy_floor", min_e0, floor - 1e-6,
                min_e0 >= floor - 1e-6, "min E(u0) >= floor - 1e-6");
  rep.add_check("pre_flow_energy_strict", min_e0, floor, min_e0 > floor,
                "perturbations raise energy strictly");
  const double need = std::ceil(0.95 * trials);
  rep.add_check("converged_runs", converged, need, converged >= need,
                "converged within max_iters");
  rep.add_check("final_energy_err", max_final_err, 1e-4,
                max_final_err <= 1e-4, "max |E_final - floor|");
  rep.add_check("winding_drift", max_drift, 1e-3, max_drift <= 1e-3,
                "max drift over all records");
  rep.add_check("distance_to_scalar_line", max_dist, 1e-3, max_dist <= 1e-3,
                "max ||u - <u,M> M||");
  rep.finalize();

  rep.table_header = {"trial",  "hnorm",  "e0",         "e_final",
                      "iters",  "status", "drift1",     "drift2",
                      "dist_line", "final_defect"};
  for (int t = 0; t < trials; ++t) {
    const auto& row = rows[t];
    rep.table.push_back({std::to_string(t), format_g17(row.hnorm),
                         format_g17(row.e0), format_g17(row.e_final),
                         std::to_string(row.iters), to_string(row.status),
                         format_g17(row.drift1), format_g17(row.drift2),
                         format_g17(row.dist_line),
                         format_g17(row.final_defect)});
  }
  return rep;
}

namespace {

/// Monomial pair (U^a V^b, U^c V^d) whose commutation phase is bounded away
/// from 1: dist(theta (ad - bc), Z) >= margin.
struct PairExponents {
  int a, b, c, d;
};

bool phase_ok(double theta, long k, double margin) {
  const double x = theta * double(k);
  return std::abs(x - std::round(x)) >= margin;
}

PairExponents sample_exponents(double theta, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(-2, 2);
  for (int tries = 0; tries < 1000; ++tries) {
    const PairExponents p{e(rng), e(rng), e(rng), e(rng)};
    const long det = long(p.a) * p.d - long(p.b) * p.c;
    if (det == 0) continue;
    if (!phase_ok(theta, det, 1e-2)) continue;
    return p;
  }
  return PairExponents{1, 0, 0, 1};  // (U, V); valid whenever theta is
}

}  // namespace

LemmaBatch verify_lemma(double theta, int trials, std::uint64_t seed,
                        int bandwidth) {
  if (!phase_ok(theta, 1, 1e-9))
    throw std::invalid_argument(
        "verify_lemma: theta too close to an integer; lambda would be 1");

  LemmaBatch batch;
  SummaryReport& rep = batch.summary;
  rep.harness = "pair-bound";
  rep.add_config("theta", format_g17(theta));
  rep.add_config("trials", std::to_string(trials));
  rep.add_config("seed", std::to_string(seed));
  rep.add_config("bandwidth", std::to_string(bandwidth));

  const TruncationPolicy policy{bandwidth, ClipMode::track_spill, 0.0};
  batch.reports.resize(trials);
  std::vector<int> skipped(trials, 0);
  std::vector<std::string> kind(trials);

  parallel_for(trials, [&](long t) {
    std::mt19937_64 rng(seed + 104729 * static_cast<std::uint64_t>(t));
    const PairExponents pe = sample_exponents(theta, rng);
    FourierElement u = monomial(theta, pe.a, pe.b, cplx(1.0, 0.0), policy);
    FourierElement v = monomial(theta, pe.c, pe.d, cplx(1.0, 0.0), policy);
    kind[t] = "monomial";
    if (t % 2 == 1) {
      // Conjugate by a random unitary; u v = lambda v u survives with the
      // same lambda, while traces and energies move off the lattice points.
      const FourierElement h = perturbation(theta, bandwidth, 0.2, rng());
      const FourierElement w =
          unitarize(exp_skew(scale(h, cplx(0.0, 1.0)), 16), 2);
      const FourierElement wstar = adjoint(w);
      u = multiply(multiply(w, u), wstar);
      v = multiply(multiply(w, v), wstar);
      kind[t] = "conjugated";
    }
    try {
      batch.reports[t] = lemma_chain(u, v);
    } catch (const std::domain_error&) {
      skipped[t] = 1;  // generator produced a degenerate pair
    }
  });

  int n_skipped = 0;
  int n_slack_ok = 0;
  double worst_slack = -1e300;  // most positive lhs - rhs
  double max_truv = 0.0;
  double min_energy_sum = -1.0;
  rep.table_header = {"trial", "kind",   "region", "t",
                      "s",     "w",      "lambda_re", "lambda_im",
                      "tr_uv", "min_slack_margin"};
  std::vector<LemmaReport> kept;
  kept.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    if (skipped[t]) {
      ++n_skipped;
      continue;
    }
    const LemmaReport& lr = batch.reports[t];
    kept.push_back(lr);
    double margin = 1e300;  // min over slacks of rhs - lhs
    for (const auto& sl : lr.slacks) {
      margin = std::min(margin, -sl.diff());
      worst_slack = std::max(worst_slack, sl.diff());
    }
    if (lr.pass(1e-6)) ++n_slack_ok;
    max_truv = std::max(max_truv, lr.tr_uv_abs);
    const double esum = kTwoPi2 * lr.w;
    min_energy_sum = min_energy_sum < 0.0 ? esum : std::min(min_energy_sum, esum);
    rep.table.push_back({std::to_string(t), kind[t], lr.region,
                         format_g17(lr.t), format_g17(lr.s), format_g17(lr.w),
                         format_g17(lr.lambda.real()),
                         format_g17(lr.lambda.imag()),
                         format_g17(lr.tr_uv_abs), format_g17(margin)});
  }

  batch.reports = std::move(kept);  // only evaluated pairs are reported

  const int evaluated = trials - n_skipped;
  rep.add_check("pairs_evaluated", evaluated, trials, evaluated == trials,
                n_skipped ? "degenerate pairs skipped with warning" : "");
  rep.add_check("chain_slacks", worst_slack, 1e-6, n_slack_ok == evaluated,
                "max (lhs - rhs) over all slacks");
  rep.add_check("tr_uv_zero", max_truv, 1e-8, max_truv <= 1e-8,
                "max |tr(uv)|");
  rep.add_check("energy_sum_floor", min_energy_sum,
                pair_floor_energy() - 1e-6,
                min_energy_sum >= pair_floor_energy() - 1e-6,
                "min E(u)+E(v) vs 2(3-sqrt5)pi^2");
  rep.finalize();
  return batch;
}

SummaryReport verify_endo_bound(double theta, int exponent_bound) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("verify_endo_bound: need 0 < theta < 1");
  if (exponent_bound < 1)
    throw std::invalid_argument("verify_endo_bound: exponent_bound >= 1");

  SummaryReport rep;
  rep.harness = "endo-bound (monomial family only)";
  rep.add_config("theta", format_g17(theta));
  rep.add_config("exponent_bound", std::to_string(exponent_bound));
  rep.add_config("family", "monomial");

  const int bw = std::max(16, 2 * exponent_bound);
  const TruncationPolicy policy{bw, ClipMode::track_spill, 0.0};
  const double floor = endo_floor_energy();
  const double ideal_min = 4.0 * kTwoPi2;  // 8 pi^2 at the identity matrix

  long n_valid = 0;
  double family_min = -1.0;
  bool all_above = true;
  rep.table_header = {"a", "b", "c", "d", "det", "energy"};
  const int nb = exponent_bound;
  for (int a = -nb; a <= nb; ++a)
    for (int b = -nb; b <= nb; ++b)
      for (int c = -nb; c <= nb; ++c)
        for (int d = -nb; d <= nb; ++d) {
          Endomorphism phi;
          phi.exponents = {{{a, b}, {c, d}}};
          phi.theta = theta;
          if (!endo_valid(phi)) continue;
          ++n_valid;
          const double L = endo_energy(phi, policy);
          if (L < floor - 1e-9) all_above = false;
          family_min = family_min < 0.0 ? L : std::min(family_min, L);
          rep.table.push_back({std::to_string(a), std::to_string(b),
                               std::to_string(c), std::to_string(d),
                               std::to_string(long(a) * d - long(b) * c),
                               format_g17(L)});
        }

  rep.add_check("valid_matrices", double(n_valid), 1.0, n_valid >= 1,
                "matrices passing the validity test");
  rep.add_check("energy_floor", family_min, floor - 1e-9, all_above,
                "all energies >= 4(3-sqrt5)pi^2 - 1e-9");
  rep.add_check("family_minimum", family_min, ideal_min,
                std::abs(family_min - ideal_min) <= 1e-9,
                "family minimum equals 8 pi^2");
  rep.finalize();
  return rep;
}

SummaryReport verify_oracle(const std::vector<int>& qs, int trials,
                            std::uint64_t seed, double tol) {
  SummaryReport rep;
  rep.harness = "oracle-certification";
  std::string qlist;
  for (int q : qs) qlist += (qlist.empty() ? "" : ",") + std::to_string(q);
  rep.add_config("q_list", qlist);
  rep.add_config("trials", std::to_string(trials));
  rep.add_config("seed", std::to_string(seed));
  rep.add_config("tol", format_g17(tol));

  rep.table_header = {"q", "p", "trials", "product_dev", "adjoint_dev",
                      "trace_dev"};
  const auto reports = oracle_certify(qs, trials, seed, tol);
  for (const CertReport& c : reports) {
    const double worst = std::max(
        {c.max_product_dev, c.max_adjoint_dev, c.max_trace_dev});
    rep.add_check("q" + std::to_string(c.q), worst, tol, worst <= tol,
                  "max deviation across checks");
    rep.table.push_back({std::to_string(c.q), std::to_string(c.p),
                         std::to_string(c.trials),
                         format_g17(c.max_product_dev),
                         format_g17(c.max_adjoint_dev),
                         format_g17(c.max_trace_dev)});
  }
  rep.finalize();
  return rep;
}

}  // namespace nctorus
