#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "nctorus/algebra.hpp"

namespace nctorus {

/// Dirichlet energy E(u) = 1/2 (||delta_1 u||_2^2 + ||delta_2 u||_2^2)
///                       = 2 pi^2 sum (m^2 + n^2) |a_{m,n}|^2.
/// Coefficient form; agrees with the trace form to roundoff.
double energy(const FourierElement& u);

/// E via 1/2 tr(delta_1(u)* delta_1(u) + delta_2(u)* delta_2(u)); used to
/// cross-check the coefficient form.
double energy_trace_form(const FourierElement& u);

/// Winding number tr(u* delta_j(u)) / (2 pi i); ~ integer for approximate
/// unitaries. Throws if the unitarity defect exceeds 1e-6 (the invariant is
/// meaningless away from the unitary group).
cplx winding(const FourierElement& u, int j);

/// Same, without the defect gate; for internal use where the caller already
/// tracks the defect.
cplx winding_unchecked(const FourierElement& u, int j);

/// lhs = (2 pi)^2 ||u - tr(u) 1||_2^2, rhs = 2 E(u); lhs <= rhs always,
/// with equality iff the support lies in modes with m^2 + n^2 <= 1.
std::pair<double, double> poincare_gap(const FourierElement& u);

/// Monomial *-endomorphism phi(U) = mu U^a V^b, phi(V) = nu U^c V^d.
struct Endomorphism {
  std::array<std::array<int, 2>, 2> exponents{{{1, 0}, {0, 1}}};  // (a,b;c,d)
  cplx mu{1.0, 0.0};
  cplx nu{1.0, 0.0};
  double theta = 0.0;

  int a() const { return exponents[0][0]; }
  int b() const { return exponents[0][1]; }
  int c() const { return exponents[1][0]; }
  int d() const { return exponents[1][1]; }
  long det() const { return long(a()) * d() - long(b()) * c(); }
};

/// Unit-modulus phases and theta (ad - bc - 1) within 1e-9 of an integer,
/// so that phi(U) phi(V) = e^{2 pi i theta} phi(V) phi(U) holds.
bool endo_valid(const Endomorphism& phi);

enum class Generator { U, V };

/// phi(U) or phi(V) as an element; throws if phi is invalid or the exponents
/// fall outside the policy window.
FourierElement apply_endo(const Endomorphism& phi, Generator on,
                          const TruncationPolicy& policy);

/// 2 E(phi(U)) + 2 E(phi(V)) = 4 pi^2 (a^2 + b^2 + c^2 + d^2).
double endo_energy(const Endomorphism& phi, const TruncationPolicy& policy);

struct SlackEntry {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double diff() const { return lhs - rhs; }        // violated if diff > tol
  bool violated(double tol) const { return diff() > tol; }
};

struct LemmaReport {
  double t = 0.0;  // E(u)/(2 pi^2) after sorting so s >= t
  double s = 0.0;  // E(v)/(2 pi^2)
  double w = 0.0;  // t + s
  cplx lambda{0.0, 0.0};
  double tr_uv_abs = 0.0;
  double tr_u_abs2 = 0.0;
  double tr_v_abs2 = 0.0;
  bool swapped = false;       // true if inputs were reordered to get s >= t
  std::string region;         // "interior" (s <= 1) or "trivial" (s > 1)
  std::vector<SlackEntry> slacks;

  bool pass(double tol = 1e-6) const;
  const SlackEntry* find(const std::string& name) const;
};

/// Evaluates the inequality chain behind the pair bound
/// E(u) + E(v) >= 2 (3 - sqrt 5) pi^2 for approximate unitaries with
/// u v = lambda v u, lambda != 1. Throws if the commutation check fails or
/// lambda is 1 (hypotheses not met).
LemmaReport lemma_chain(const FourierElement& u, const FourierElement& v);

/// 3 - sqrt 5 and friends, spelled once.
double pair_floor_w();          // 3 - sqrt 5
double pair_floor_energy();     // 2 (3 - sqrt 5) pi^2
double endo_floor_energy();     // 4 (3 - sqrt 5) pi^2

}  // namespace nctorus
