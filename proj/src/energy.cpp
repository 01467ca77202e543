#include "nctorus/energy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nctorus {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi2 = 2.0 * kPi * kPi;
constexpr double kWindingDefectGate = 1e-6;
constexpr double kCommutationTol = 1e-6;
constexpr double kLambdaOneTol = 1e-9;
}  // namespace

double energy(const FourierElement& u) {
  const int B = u.bandwidth();
  double acc = 0.0;
  for (int m = -B; m <= B; ++m)
    for (int n = -B; n <= B; ++n) {
      const double w = double(m) * m + double(n) * n;
      acc += w * std::norm(u.coeff(m, n));
    }
  return kTwoPi2 * acc;
}

double energy_trace_form(const FourierElement& u) {
  const FourierElement d1 = derivation(u, 1);
  const FourierElement d2 = derivation(u, 2);
  const cplx t = trace_of_product(adjoint(d1), d1) +
                 trace_of_product(adjoint(d2), d2);
  return 0.5 * t.real();
}

cplx winding_unchecked(const FourierElement& u, int j) {
  const cplx t = trace_of_product(adjoint(u), derivation(u, j));
  return t / cplx(0.0, 2.0 * kPi);
}

cplx winding(const FourierElement& u, int j) {
  const double defect = unitarity_defect(u);
  if (defect > kWindingDefectGate)
    throw std::domain_error(
        "winding: unitarity defect " + std::to_string(defect) +
        " exceeds 1e-6; the invariant only applies to unitaries");
  return winding_unchecked(u, j);
}

std::pair<double, double> poincare_gap(const FourierElement& u) {
  FourierElement centered = u;
  centered.set_coeff(0, 0, cplx(0.0, 0.0));
  const double nrm = hs_norm(centered);
  const double lhs = 4.0 * kPi * kPi * nrm * nrm;
  return {lhs, 2.0 * energy(u)};
}

bool endo_valid(const Endomorphism& phi) {
  if (std::abs(std::abs(phi.mu) - 1.0) > 1e-14) return false;
  if (std::abs(std::abs(phi.nu) - 1.0) > 1e-14) return false;
  // theta (ad - bc - 1) must be an integer so that the images of U and V
  // commute up to e^{2 pi i theta}, matching the defining relation.
  const double x = phi.theta * double(phi.det() - 1);
  return std::abs(x - std::round(x)) <= 1e-9;
}

FourierElement apply_endo(const Endomorphism& phi, Generator on,
                          const TruncationPolicy& policy) {
  if (!endo_valid(phi))
    throw std::invalid_argument(
        "apply_endo: invalid endomorphism (phase modulus or exponent matrix)");
  const int m = on == Generator::U ? phi.a() : phi.c();
  const int n = on == Generator::U ? phi.b() : phi.d();
  const cplx sc = on == Generator::U ? phi.mu : phi.nu;
  return monomial(phi.theta, m, n, sc, policy);
}

double endo_energy(const Endomorphism& phi, const TruncationPolicy& policy) {
  return 2.0 * energy(apply_endo(phi, Generator::U, policy)) +
         2.0 * energy(apply_endo(phi, Generator::V, policy));
}

bool LemmaReport::pass(double tol) const {
  for (const auto& e : slacks)
    if (e.violated(tol)) return false;
  return true;
}

const SlackEntry* LemmaReport::find(const std::string& name) const {
  for (const auto& e : slacks)
    if (e.name == name) return &e;
  return nullptr;
}

LemmaReport lemma_chain(const FourierElement& u_in, const FourierElement& v_in) {
  // Order so s >= t; the chain is symmetric in (u, v) but the scalar-region
  // analysis is normalized that way.
  const double Eu = energy(u_in);
  const double Ev = energy(v_in);
  const bool swapped = Eu > Ev;
  const FourierElement& u = swapped ? v_in : u_in;
  const FourierElement& v = swapped ? u_in : v_in;

  const FourierElement uv = multiply(u, v);
  const FourierElement vu = multiply(v, u);

  // lambda from r = (uv)(vu)*: for unitaries with uv = lambda vu this is
  // lambda * 1; the residue ||r - lambda 1|| certifies the hypothesis.
  const FourierElement r = multiply(uv, adjoint(vu));
  const cplx lambda = trace(r);
  FourierElement resid = r;
  resid.set_coeff(0, 0, r.coeff(0, 0) - lambda);
  const double comm_resid = hs_norm(resid);
  if (comm_resid > kCommutationTol)
    throw std::domain_error(
        "lemma_chain: uv and vu are not scalar multiples (residual " +
        std::to_string(comm_resid) + ")");
  if (std::abs(std::abs(lambda) - 1.0) > 1e-6)
    throw std::domain_error("lemma_chain: |lambda| is not 1");
  if (std::abs(lambda - cplx(1.0, 0.0)) <= kLambdaOneTol)
    throw std::domain_error(
        "lemma_chain: lambda = 1; the pair bound requires a nontrivial "
        "commutation phase");

  LemmaReport rep;
  rep.swapped = swapped;
  rep.lambda = lambda;
  rep.t = energy(u) / kTwoPi2;
  rep.s = energy(v) / kTwoPi2;
  rep.w = rep.t + rep.s;

  const cplx tr_u = trace(u);
  const cplx tr_v = trace(v);
  const cplx tr_uv = trace(uv);
  rep.tr_uv_abs = std::abs(tr_uv);
  rep.tr_u_abs2 = std::norm(tr_u);
  rep.tr_v_abs2 = std::norm(tr_v);

  // u0 = u - tr(u) 1; tr(u0 v) = tr(uv) - tr(u) tr(v), so with tr(uv) = 0
  // the product of traces factors through the centered element.
  FourierElement u0 = u;
  u0.set_coeff(0, 0, u.coeff(0, 0) - tr_u);
  const cplx tr_u0v = trace_of_product(u0, v);

  auto push = [&rep](const std::string& name, double lhs, double rhs) {
    rep.slacks.push_back(SlackEntry{name, lhs, rhs});
  };

  // Each slack is (lhs, rhs) with the contract lhs <= rhs.
  push("tr_uv_zero", rep.tr_uv_abs, 0.0);
  push("factorization_identity", std::abs(-tr_u * tr_v - tr_u0v), 0.0);
  push("trace_lower_u", 1.0 - rep.t, rep.tr_u_abs2);
  push("trace_lower_v", 1.0 - rep.s, rep.tr_v_abs2);
  const double prod2 = std::norm(tr_u * tr_v);
  push("product_upper", prod2, rep.t);

  const bool interior = rep.s <= 1.0 + 1e-6;
  rep.region = interior ? "interior" : "trivial";
  if (interior) {
    // (1-t)(1-s) <= |tr u|^2 |tr v|^2 needs both trace_lower factors to be
    // nonnegative, which is exactly the s <= 1 region; beyond it w > 1 beats
    // the floor outright.
    push("product_lower", (1.0 - rep.t) * (1.0 - rep.s), prod2);
  } else {
    push("trivial_region", 1.0, rep.w);
  }
  push("final_bound", pair_floor_w(), rep.w);

  return rep;
}

double pair_floor_w() { return 3.0 - std::sqrt(5.0); }
double pair_floor_energy() { return kTwoPi2 * pair_floor_w(); }
double endo_floor_energy() { return 2.0 * kTwoPi2 * pair_floor_w(); }

}  // namespace nctorus
