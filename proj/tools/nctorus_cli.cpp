// Command-line front end: energies, flows, verification harnesses, sweeps.
// Exit codes: 0 = all checks pass, 1 = a mathematical assertion failed,
// 2 = configuration or I/O error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nctorus/algebra.hpp"
#include "nctorus/energy.hpp"
#include "nctorus/flow.hpp"
#include "nctorus/io.hpp"
#include "nctorus/verify.hpp"

using namespace nctorus;

namespace {

constexpr double kDefaultStep16 = 9.5e-5;  // just under 2/(4 pi^2 * 2 * 16^2)

void print_checks(const SummaryReport& rep) {
  std::printf("harness: %s\n", rep.harness.c_str());
  for (const CheckLine& c : rep.checks) {
    std::printf("  %-28s value=%-14.10g bound=%-14.10g %s%s%s\n",
                c.name.c_str(), c.value, c.bound, c.pass ? "PASS" : "FAIL",
                c.note.empty() ? "" : "  # ", c.note.c_str());
  }
  std::printf("%s\n", rep.pass ? "PASS" : "FAIL");
}

int finish_report(const SummaryReport& rep, const std::string& out) {
  print_checks(rep);
  if (!out.empty()) write_report_with_csv(out, rep);
  return rep.pass ? 0 : 1;
}

FourierElement perturbed_monomial(double theta, int m, int n, int bandwidth,
                                  double hnorm, std::uint64_t seed) {
  const TruncationPolicy policy{bandwidth, ClipMode::track_spill, 0.0};
  FourierElement u = monomial(theta, m, n, cplx(1.0, 0.0), policy);
  if (hnorm > 0.0) {
    FourierElement h = random_selfadjoint(theta, bandwidth, 0.5, seed);
    h = scale(h, hnorm / hs_norm(h));
    u = multiply(u, exp_skew(scale(h, cplx(0.0, 1.0)), 16));
  }
  return u;
}

struct FlowFlags {
  FlowConfig config;
  void attach(CLI::App* cmd, double default_step) {
    config.step_size = default_step;
    cmd->add_option("--step", config.step_size, "gradient step size");
    cmd->add_option("--max-iters", config.max_iters, "iteration cap");
    cmd->add_option("--grad-tol", config.grad_tol, "gradient stop tolerance");
    cmd->add_option("--reunit-every", config.reunitarize_every,
                    "unitarize every k iterations");
    cmd->add_option("--exp-terms", config.exp_terms,
                    "max terms in the exponential series");
  }
};

struct EnergyArgs {
  double theta = 0.3;
  int bandwidth = 16;
  std::vector<int> monomials;  // flattened (m, n) pairs
  std::vector<std::string> files;
  std::string out;
};

int run_energy(const EnergyArgs& a) {
  if (a.monomials.size() % 2 != 0)
    throw std::runtime_error("--monomial expects pairs: m n");
  if (a.monomials.empty() && a.files.empty())
    throw std::runtime_error("give --monomial m n and/or --element <file>");
  SummaryReport rep;
  rep.harness = "energy";
  rep.add_config("theta", format_g17(a.theta));
  rep.add_config("bandwidth", std::to_string(a.bandwidth));
  rep.table_header = {"input",    "energy", "winding1",
                      "winding2", "defect", "spill_mass"};
  const TruncationPolicy policy{a.bandwidth, ClipMode::track_spill, 0.0};
  auto emit = [&rep](const std::string& name, const FourierElement& u) {
    const double E = energy(u);
    const double defect = unitarity_defect(u);
    std::string w1 = "n/a", w2 = "n/a";
    if (defect <= 1e-6) {
      w1 = format_g17(winding(u, 1).real());
      w2 = format_g17(winding(u, 2).real());
    }
    std::printf("%-24s energy=%.12g winding=(%s, %s) defect=%.3g\n",
                name.c_str(), E, w1.c_str(), w2.c_str(), defect);
    rep.table.push_back({name, format_g17(E), w1, w2, format_g17(defect),
                         format_g17(u.spill_mass())});
  };
  for (std::size_t i = 0; i + 1 < a.monomials.size(); i += 2) {
    const int m = a.monomials[i], n = a.monomials[i + 1];
    emit("U^" + std::to_string(m) + "V^" + std::to_string(n),
         monomial(a.theta, m, n, cplx(1.0, 0.0), policy));
  }
  for (const std::string& f : a.files) emit(f, load_element(f));
  rep.pass = true;
  if (!a.out.empty()) write_report_with_csv(a.out, rep);
  return 0;
}

struct FlowArgs {
  double theta = 0.3;
  std::vector<int> klass{1, 1};
  int bandwidth = 16;
  double hnorm = 0.1;
  std::uint64_t seed = 0;
  std::string element;
  std::string out;
  FlowFlags ff;
};

int run_flow(const FlowArgs& a) {
  if (a.klass.size() != 2)
    throw std::runtime_error("--class expects two integers: m n");
  FourierElement u0 = a.element.empty()
                          ? perturbed_monomial(a.theta, a.klass[0], a.klass[1],
                                               a.bandwidth, a.hnorm, a.seed)
                          : load_element(a.element);
  const double e0 = energy(u0);
  const FlowTrace trace = flow(u0, a.ff.config);
  const FlowRecord& last = trace.last();
  std::printf(
      "status=%s iters=%ld energy %.12g -> %.12g grad=%.3g winding=(%.6f, "
      "%.6f) defect=%.3g spill=%.3g\n",
      to_string(trace.status).c_str(), trace.iters, e0, last.energy,
      last.grad_norm, last.winding1, last.winding2, last.unitarity_defect,
      last.spill_mass);
  if (!a.out.empty()) write_text_atomic(a.out, flow_trace_to_jsonl(trace));
  return trace.status == FlowStatus::converged ? 0 : 1;
}

struct TheoremArgs {
  double theta = 0.3;
  int m = 1, n = 1;
  int trials = 100;
  int bandwidth = 16;
  std::uint64_t seed = 20260819;
  double max_h = 0.2;
  std::string out;
  FlowFlags ff;
};

int run_verify_theorem(const TheoremArgs& a) {
  const SummaryReport rep = verify_theorem(a.theta, a.m, a.n, a.trials,
                                           a.ff.config, a.bandwidth, a.seed,
                                           a.max_h);
  return finish_report(rep, a.out);
}

struct LemmaArgs {
  double theta = 0.3;
  int trials = 100;
  int bandwidth = 16;
  std::uint64_t seed = 20260819;
  std::string out;
};

int run_verify_lemma(const LemmaArgs& a) {
  const LemmaBatch batch = verify_lemma(a.theta, a.trials, a.seed, a.bandwidth);
  print_checks(batch.summary);
  if (!a.out.empty()) {
    write_text_atomic(a.out, lemma_batch_to_json(batch));
    std::filesystem::path csv(a.out);
    csv.replace_extension(".csv");
    write_text_atomic(csv.string(), summary_to_csv(batch.summary));
  }
  return batch.summary.pass ? 0 : 1;
}

struct EndoArgs {
  double theta = 0.3;
  int bound = 3;
  std::string out;
};

int run_verify_endo(const EndoArgs& a) {
  return finish_report(verify_endo_bound(a.theta, a.bound), a.out);
}

struct OracleArgs {
  std::vector<int> qs{5, 8, 13};
  int trials = 25;  // two fresh elements per trial
  std::uint64_t seed = 20260819;
  double tol = 1e-10;
  std::string out;
};

int run_verify_oracle(const OracleArgs& a) {
  return finish_report(verify_oracle(a.qs, a.trials, a.seed, a.tol), a.out);
}

struct ScalarArgs {
  double grid = 1e-3;
  std::string out;
};

int run_verify_scalar(const ScalarArgs& a) {
  const ScalarRegionResult res = scalar_region_min(a.grid);
  SummaryReport rep;
  rep.harness = "scalar-region";
  rep.add_config("grid_step", format_g17(a.grid));
  const double target = pair_floor_w();
  const double argmin_target = 0.5 * target;
  rep.add_check("w_min", res.w_min, target,
                std::abs(res.w_min - target) <= 2.0 * a.grid,
                "min t+s over the feasible region");
  rep.add_check("argmin_t", res.t_at_min, argmin_target,
                std::abs(res.t_at_min - argmin_target) <= 2.0 * a.grid, "");
  rep.add_check("argmin_s", res.s_at_min, argmin_target,
                std::abs(res.s_at_min - argmin_target) <= 2.0 * a.grid, "");
  rep.finalize();
  std::printf("w_min = %.10f at (t, s) = (%.10f, %.10f)\n", res.w_min,
              res.t_at_min, res.s_at_min);
  return finish_report(rep, a.out);
}

struct SweepArgs {
  std::vector<double> thetas{0.3};
  std::vector<int> klass{1, 1};  // flattened (m, n) pairs
  std::vector<std::uint64_t> seeds{0};
  int bandwidth = 16;
  double hnorm = 0.1;
  std::string out;
  FlowFlags ff;
};

int run_sweep(const SweepArgs& a) {
  if (a.klass.size() % 2 != 0 || a.klass.empty())
    throw std::runtime_error("--class expects pairs: m n");
  SummaryReport rep;
  rep.harness = "sweep";
  rep.add_config("bandwidth", std::to_string(a.bandwidth));
  rep.add_config("hnorm", format_g17(a.hnorm));
  rep.add_config("step_size", format_g17(a.ff.config.step_size));
  rep.table_header = {"theta",  "m",        "n",        "seed",
                      "e0",     "e_final",  "status",   "iters",
                      "w1",     "w2",       "dist_line"};
  bool all_converged = true;
  for (double theta : a.thetas)
    for (std::size_t k = 0; k + 1 < a.klass.size(); k += 2)
      for (std::uint64_t seed : a.seeds) {
        const int m = a.klass[k], n = a.klass[k + 1];
        const FourierElement u0 = perturbed_monomial(theta, m, n, a.bandwidth,
                                                     a.hnorm, seed);
        const double e0 = energy(u0);
        const FlowTrace trace = flow(u0, a.ff.config);
        const FourierElement& uf = *trace.final_state;
        const TruncationPolicy policy{a.bandwidth, ClipMode::track_spill, 0.0};
        const FourierElement mono =
            monomial(theta, m, n, cplx(1.0, 0.0), policy);
        const double dist = hs_norm(sub(uf, scale(mono, inner(uf, mono))));
        all_converged =
            all_converged && trace.status == FlowStatus::converged;
        const FlowRecord& last = trace.last();
        rep.table.push_back(
            {format_g17(theta), std::to_string(m), std::to_string(n),
             std::to_string(seed), format_g17(e0), format_g17(last.energy),
             to_string(trace.status), std::to_string(trace.iters),
             format_g17(last.winding1), format_g17(last.winding2),
             format_g17(dist)});
        std::printf("theta=%-10g class=(%d,%d) seed=%llu  %s in %ld iters, "
                    "E %.8g -> %.8g\n",
                    theta, m, n, static_cast<unsigned long long>(seed),
                    to_string(trace.status).c_str(), trace.iters, e0,
                    last.energy);
      }
  rep.add_check("all_converged", all_converged ? 1.0 : 0.0, 1.0,
                all_converged, "");
  rep.finalize();
  if (!a.out.empty()) write_report_with_csv(a.out, rep);
  return all_converged ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Twisted Fourier algebra toolkit: energies, minimizing flows, and "
      "bound verification on the noncommutative torus"};
  app.require_subcommand(1);
  std::function<int()> run;

  auto ea = std::make_shared<EnergyArgs>();
  auto* cmd_energy = app.add_subcommand(
      "energy", "Energies, windings and defects of monomials or elements");
  cmd_energy->add_option("--theta", ea->theta, "deformation parameter");
  cmd_energy->add_option("--bandwidth", ea->bandwidth, "truncation bandwidth")
      ->check(CLI::PositiveNumber);
  cmd_energy
      ->add_option("--monomial", ea->monomials,
                   "monomial exponents m n (repeatable)")
      ->expected(-2);
  cmd_energy->add_option("--element", ea->files,
                         "element JSON file (repeatable)");
  cmd_energy->add_option("--out", ea->out, "write a JSON report (+ CSV twin)");
  cmd_energy->callback([&run, ea] { run = [ea] { return run_energy(*ea); }; });

  auto fa = std::make_shared<FlowArgs>();
  auto* cmd_flow = app.add_subcommand(
      "flow", "Energy-minimizing flow from a perturbed monomial or element");
  cmd_flow->add_option("--theta", fa->theta, "deformation parameter");
  cmd_flow->add_option("--class", fa->klass, "winding class m n")
      ->expected(2);
  cmd_flow->add_option("--bandwidth", fa->bandwidth, "truncation bandwidth")
      ->check(CLI::PositiveNumber);
  cmd_flow->add_option("--hnorm", fa->hnorm,
                       "norm of the initial self-adjoint kick");
  cmd_flow->add_option("--seed", fa->seed, "perturbation seed");
  cmd_flow->add_option("--element", fa->element,
                       "start from an element JSON file instead");
  cmd_flow->add_option("--out", fa->out, "write the trace as JSONL");
  fa->ff.attach(cmd_flow, 1e-3);
  cmd_flow->callback([&run, fa] { run = [fa] { return run_flow(*fa); }; });

  auto* cmd_verify =
      app.add_subcommand("verify", "Run a verification harness");
  cmd_verify->require_subcommand(1);

  auto ta = std::make_shared<TheoremArgs>();
  auto* v_theorem = cmd_verify->add_subcommand(
      "theorem", "Energy floor + flow convergence for a winding class");
  v_theorem->add_option("--theta", ta->theta, "deformation parameter");
  v_theorem->add_option("--m", ta->m, "winding class m");
  v_theorem->add_option("--n", ta->n, "winding class n");
  v_theorem->add_option("--trials", ta->trials, "number of perturbed starts");
  v_theorem->add_option("--bandwidth", ta->bandwidth, "truncation bandwidth");
  v_theorem->add_option("--seed", ta->seed, "base seed");
  v_theorem->add_option("--max-h", ta->max_h, "largest perturbation norm");
  v_theorem->add_option("--out", ta->out, "report path");
  ta->ff.attach(v_theorem, kDefaultStep16);
  v_theorem->callback(
      [&run, ta] { run = [ta] { return run_verify_theorem(*ta); }; });

  auto la = std::make_shared<LemmaArgs>();
  auto* v_lemma = cmd_verify->add_subcommand(
      "lemma", "Pair bound E(u)+E(v) >= 2(3-sqrt5)pi^2 on generated pairs");
  v_lemma->add_option("--theta", la->theta, "deformation parameter");
  v_lemma->add_option("--trials", la->trials, "number of pairs");
  v_lemma->add_option("--bandwidth", la->bandwidth, "truncation bandwidth");
  v_lemma->add_option("--seed", la->seed, "base seed");
  v_lemma->add_option("--out", la->out, "report path");
  v_lemma->callback(
      [&run, la] { run = [la] { return run_verify_lemma(*la); }; });

  auto na = std::make_shared<EndoArgs>();
  auto* v_endo = cmd_verify->add_subcommand(
      "endo", "Endomorphism energy bound over the monomial family");
  v_endo->add_option("--theta", na->theta, "deformation parameter");
  v_endo->add_option("--bound", na->bound, "exponent bound");
  v_endo->add_option("--out", na->out, "report path");
  v_endo->callback(
      [&run, na] { run = [na] { return run_verify_endo(*na); }; });

  auto oa = std::make_shared<OracleArgs>();
  auto* v_oracle = cmd_verify->add_subcommand(
      "oracle", "Certify multiply/adjoint/trace against clock-shift matrices");
  v_oracle->add_option("--q", oa->qs, "matrix sizes (repeatable)");
  v_oracle->add_option("--trials", oa->trials, "element pairs per q");
  v_oracle->add_option("--seed", oa->seed, "base seed");
  v_oracle->add_option("--tol", oa->tol, "max allowed deviation");
  v_oracle->add_option("--out", oa->out, "report path");
  v_oracle->callback(
      [&run, oa] { run = [oa] { return run_verify_oracle(*oa); }; });

  auto sa = std::make_shared<ScalarArgs>();
  auto* v_scalar = cmd_verify->add_subcommand(
      "scalar", "Brute-force scan of the scalar feasibility region");
  v_scalar->add_option("--grid", sa->grid, "grid step (<= 1e-2)");
  v_scalar->add_option("--out", sa->out, "report path");
  v_scalar->callback(
      [&run, sa] { run = [sa] { return run_verify_scalar(*sa); }; });

  auto wa = std::make_shared<SweepArgs>();
  auto* cmd_sweep = app.add_subcommand(
      "sweep", "Cartesian product of theta x class x seed flow runs");
  cmd_sweep->add_option("--theta", wa->thetas, "thetas (repeatable)");
  cmd_sweep->add_option("--class", wa->klass, "winding classes m n (pairs)")
      ->expected(-2);
  cmd_sweep->add_option("--seed", wa->seeds, "seeds (repeatable)");
  cmd_sweep->add_option("--bandwidth", wa->bandwidth, "truncation bandwidth");
  cmd_sweep->add_option("--hnorm", wa->hnorm, "perturbation norm");
  cmd_sweep->add_option("--out", wa->out, "report path");
  wa->ff.attach(cmd_sweep, kDefaultStep16);
  cmd_sweep->callback([&run, wa] { run = [wa] { return run_sweep(*wa); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits 0; parse errors are config errors
  }

  try {
    return run ? run() : 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "assertion failed: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
