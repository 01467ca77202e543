#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace nctorus {

using cplx = std::complex<double>;

/// Fourier mode (m, n): the coefficient of U^m V^n.
struct LatticeIndex {
  int m = 0;
  int n = 0;
  friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;
};

enum class ClipMode {
  hard_clip,    // out-of-window coefficients are dropped silently
  track_spill,  // dropped l2 mass accumulates in TruncationPolicy::spill_mass
};

struct TruncationPolicy {
  int bandwidth = 16;  // coefficients kept for |m|, |n| <= bandwidth
  ClipMode clip_mode = ClipMode::track_spill;
  double spill_mass = 0.0;  // accumulated l2 mass of clipped coefficients
};

/// Element of the truncated twisted Fourier algebra at a fixed theta:
/// a = sum a_{m,n} U^m V^n with U V = e^{2 pi i theta} V U, coefficients
/// stored densely on the (2B+1)^2 window. Values are immutable once built
/// (operations return new elements), so sharing across threads is safe.
class FourierElement {
 public:
  FourierElement(double theta, TruncationPolicy policy);

  double theta() const { return theta_; }
  int bandwidth() const { return policy_.bandwidth; }
  int window() const { return 2 * policy_.bandwidth + 1; }
  const TruncationPolicy& policy() const { return policy_; }
  double spill_mass() const { return policy_.spill_mass; }

  cplx coeff(int m, int n) const;           // 0 outside the window
  void set_coeff(int m, int n, cplx v);     // throws outside the window
  cplx coeff(LatticeIndex i) const { return coeff(i.m, i.n); }

  // Flat row-major storage, index (m + B) * (2B+1) + (n + B).
  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& mutable_data() { return data_; }

  bool all_finite() const;

 private:
  double theta_;
  TruncationPolicy policy_;
  std::vector<cplx> data_;

  friend FourierElement multiply(const FourierElement&, const FourierElement&);
};

FourierElement monomial(double theta, int m, int n, cplx scale,
                        const TruncationPolicy& policy);
FourierElement identity(double theta, const TruncationPolicy& policy);

/// Twisted convolution: (ab)_{m,n} = sum_{k,l} a_{k,l} b_{m-k,n-l}
/// e^{-2 pi i theta l (m-k)}. Output modes beyond the window are clipped
/// per the policy. Requires bit-equal theta and equal bandwidth.
FourierElement multiply(const FourierElement& a, const FourierElement& b);

/// (a*)_{m,n} = conj(a_{-m,-n}) e^{-2 pi i theta m n}.
FourierElement adjoint(const FourierElement& a);

/// Canonical trace: picks out the (0,0) coefficient.
cplx trace(const FourierElement& a);

/// trace(multiply(a, b)) without materializing the product: the (0,0)
/// output coefficient never clips, so this equals the product's trace
/// exactly.
cplx trace_of_product(const FourierElement& a, const FourierElement& b);

/// GNS inner product <a,b> = sum a_{m,n} conj(b_{m,n}) = tr(b* a).
cplx inner(const FourierElement& a, const FourierElement& b);
double hs_norm(const FourierElement& a);

/// delta_j: scales mode (m,n) by 2 pi i m (j=1) or 2 pi i n (j=2).
FourierElement derivation(const FourierElement& a, int j);

/// -(delta_1^2 + delta_2^2): scales mode (m,n) by 4 pi^2 (m^2 + n^2).
FourierElement laplacian(const FourierElement& a);

FourierElement add(const FourierElement& a, const FourierElement& b);
FourierElement sub(const FourierElement& a, const FourierElement& b);
FourierElement scale(const FourierElement& a, cplx c);

inline FourierElement operator*(const FourierElement& a, const FourierElement& b) { return multiply(a, b); }
inline FourierElement operator+(const FourierElement& a, const FourierElement& b) { return add(a, b); }
inline FourierElement operator-(const FourierElement& a, const FourierElement& b) { return sub(a, b); }
inline FourierElement operator*(cplx c, const FourierElement& a) { return scale(a, c); }

/// Gaussian self-adjoint element, coefficient scale e^{-decay (m^2+n^2)},
/// mirrored so that adjoint(h) == h holds exactly. Deterministic in seed.
FourierElement random_selfadjoint(double theta, int bandwidth, double decay,
                                  std::uint64_t seed);

/// Fully random element (no symmetry), Gaussian coefficients with the given
/// decay, normalized to hs_norm 1. Deterministic in seed.
FourierElement random_element(double theta, int bandwidth, double decay,
                              std::uint64_t seed, int support = -1);

/// Truncated exponential sum_{k=0}^{terms} s^k / k! for skew s (s* = -s).
/// Requires hs_norm(s) <= 1; the remainder heuristic is
/// ||s||^(terms+1)/(terms+1)!. The series stops early once that bound for
/// the remaining tail drops below tail_tol.
FourierElement exp_skew(const FourierElement& s, int terms = 16,
                        double tail_tol = 1e-15);

/// hs_norm(u* u - 1).
double unitarity_defect(const FourierElement& u);

double max_abs_diff(const FourierElement& a, const FourierElement& b);

}  // namespace nctorus
