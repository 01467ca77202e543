#include "nctorus/algebra.hpp"

#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace nctorus {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_compatible(const FourierElement& a, const FourierElement& b,
                      const char* op) {
  // theta is compared bitwise: mixing deformation parameters is a bug in the
  // caller, not something to paper over with a tolerance.
  if (a.theta() != b.theta())
    throw std::invalid_argument(std::string(op) + ": theta mismatch");
  if (a.bandwidth() != b.bandwidth())
    throw std::invalid_argument(std::string(op) + ": bandwidth mismatch");
}

ClipMode merge_clip(const FourierElement& a, const FourierElement& b) {
  // track_spill is contagious: if either input tracks, the result tracks.
  if (a.policy().clip_mode == ClipMode::track_spill ||
      b.policy().clip_mode == ClipMode::track_spill)
    return ClipMode::track_spill;
  return ClipMode::hard_clip;
}

/// Table of e^{-2 pi i theta j} for |j| <= jmax, shared per theta.
struct PhaseTable {
  double theta = 0.0;
  int jmax = 0;
  std::vector<double> re;  // index j + jmax
  std::vector<double> im;
};

std::shared_ptr<const PhaseTable> build_phase_table(double theta, int jmax) {
  auto t = std::make_shared<PhaseTable>();
  t->theta = theta;
  t->jmax = jmax;
  t->re.resize(2 * jmax + 1);
  t->im.resize(2 * jmax + 1);
  for (int j = -jmax; j <= jmax; ++j) {
    // std::polar(1, x) for deterministic, correctly-rounded-ish phases.
    const cplx w = std::polar(1.0, -kTwoPi * theta * j);
    t->re[j + jmax] = w.real();
    t->im[j + jmax] = w.imag();
  }
  return t;
}

std::shared_ptr<const PhaseTable> phase_table(double theta, int jmax) {
  static std::mutex mu;
  static std::unordered_map<double, std::shared_ptr<const PhaseTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(theta);
  if (it != cache.end() && it->second->jmax >= jmax) return it->second;
  auto t = build_phase_table(theta, jmax);
  cache[theta] = t;
  return t;
}

}  // namespace

FourierElement::FourierElement(double theta, TruncationPolicy policy)
    : theta_(theta), policy_(policy) {
  if (policy_.bandwidth < 1)
    throw std::invalid_argument("FourierElement: bandwidth must be >= 1");
  const int w = window();
  data_.assign(static_cast<std::size_t>(w) * w, cplx(0.0, 0.0));
}

cplx FourierElement::coeff(int m, int n) const {
  const int b = policy_.bandwidth;
  if (m < -b || m > b || n < -b || n > b) return {0.0, 0.0};
  return data_[static_cast<std::size_t>(m + b) * window() + (n + b)];
}

void FourierElement::set_coeff(int m, int n, cplx v) {
  const int b = policy_.bandwidth;
  if (m < -b || m > b || n < -b || n > b)
    throw std::out_of_range("set_coeff: index outside truncation window");
  data_[static_cast<std::size_t>(m + b) * window() + (n + b)] = v;
}

bool FourierElement::all_finite() const {
  for (const cplx& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

FourierElement monomial(double theta, int m, int n, cplx scale,
                        const TruncationPolicy& policy) {
  FourierElement e(theta, policy);
  e.set_coeff(m, n, scale);
  return e;
}

FourierElement identity(double theta, const TruncationPolicy& policy) {
  return monomial(theta, 0, 0, cplx(1.0, 0.0), policy);
}

FourierElement multiply(const FourierElement& a, const FourierElement& b) {
  check_compatible(a, b, "multiply");
  const int B = a.bandwidth();
  const int W = 2 * B + 1;
  const int EW = 4 * B + 1;  // extended window holds every product mode
  const auto table = phase_table(a.theta(), B * B);
  const double* pre = table->re.data() + table->jmax;
  const double* pim = table->im.data() + table->jmax;

  // Scratch in structure-of-arrays form; reused across calls. b rows carry
  // three zeros of padding on each side so the blocked loop below never
  // branches on the row edges.
  const int PW = W + 6;
  thread_local std::vector<double> are, aim, bre, bim, ore_, oim_, twr, twi;
  are.resize(static_cast<std::size_t>(W) * W);
  aim.resize(static_cast<std::size_t>(W) * W);
  bre.assign(static_cast<std::size_t>(PW) * W, 0.0);
  bim.assign(static_cast<std::size_t>(PW) * W, 0.0);
  ore_.assign(static_cast<std::size_t>(EW) * EW, 0.0);
  oim_.assign(static_cast<std::size_t>(EW) * EW, 0.0);
  twr.resize(W);
  twi.resize(W);
  thread_local std::vector<unsigned char> arow_zero, brow_zero;
  arow_zero.assign(W, 1);
  brow_zero.assign(W, 1);

  const cplx* ad = a.data().data();
  const cplx* bd = b.data().data();
  for (int i = 0; i < W * W; ++i) {
    are[i] = ad[i].real();
    aim[i] = ad[i].imag();
    if (are[i] != 0.0 || aim[i] != 0.0) arow_zero[i / W] = 0;
    const double vr = bd[i].real();
    const double vi = bd[i].imag();
    bre[static_cast<std::size_t>(i / W) * PW + 3 + i % W] = vr;
    bim[static_cast<std::size_t>(i / W) * PW + 3 + i % W] = vi;
    if (vr != 0.0 || vi != 0.0) brow_zero[i / W] = 0;
  }

  // Scatter form of the twisted convolution: the contribution of the pair
  // (a_{k,l}, b-row r) lands in extended row k + r at column offset l, with
  // the scalar twist e^{-2 pi i theta l (r - B)} ... here k, l, r are window
  // offsets (lattice index + B), so l*(m-k) in lattice terms is
  // (l - B)*(r - B) for the b-row index r. Every (k,l,r,c) pair touches
  // exactly one output cell, so clipped mass can be read off the extended
  // buffer afterwards. For each (k, r) the l sweep is a 1D convolution of
  // the twisted a-row with the b-row; running it four taps at a time keeps
  // the extended row in registers for the whole block instead of streaming
  // it through once per tap.
  for (int k = 0; k < W; ++k) {
    if (arow_zero[k]) continue;
    const double* arow_r = &are[static_cast<std::size_t>(k) * W];
    const double* arow_i = &aim[static_cast<std::size_t>(k) * W];
    for (int r = 0; r < W; ++r) {
      if (brow_zero[r]) continue;
      const int rm = r - B;
      for (int l = 0; l < W; ++l) {
        const int j = (l - B) * rm;
        twr[l] = arow_r[l] * pre[j] - arow_i[l] * pim[j];
        twi[l] = arow_r[l] * pim[j] + arow_i[l] * pre[j];
      }
      const double* br = &bre[static_cast<std::size_t>(r) * PW + 3];
      const double* bi = &bim[static_cast<std::size_t>(r) * PW + 3];
      double* zrow_r = &ore_[static_cast<std::size_t>(k + r) * EW];
      double* zrow_i = &oim_[static_cast<std::size_t>(k + r) * EW];
      int lb = 0;
      for (; lb + 4 <= W; lb += 4) {
        const double w0r = twr[lb], w0i = twi[lb];
        const double w1r = twr[lb + 1], w1i = twi[lb + 1];
        const double w2r = twr[lb + 2], w2i = twi[lb + 2];
        const double w3r = twr[lb + 3], w3i = twi[lb + 3];
        if (w0r == 0.0 && w0i == 0.0 && w1r == 0.0 && w1i == 0.0 &&
            w2r == 0.0 && w2i == 0.0 && w3r == 0.0 && w3i == 0.0)
          continue;
        double* zr = zrow_r + lb;
        double* zi = zrow_i + lb;
#pragma GCC ivdep
        for (int n = 0; n < W + 3; ++n) {
          const double s0r = br[n], s0i = bi[n];
          const double s1r = br[n - 1], s1i = bi[n - 1];
          const double s2r = br[n - 2], s2i = bi[n - 2];
          const double s3r = br[n - 3], s3i = bi[n - 3];
          zr[n] += (w0r * s0r - w0i * s0i) + (w1r * s1r - w1i * s1i) +
                   (w2r * s2r - w2i * s2i) + (w3r * s3r - w3i * s3i);
          zi[n] += (w0r * s0i + w0i * s0r) + (w1r * s1i + w1i * s1r) +
                   (w2r * s2i + w2i * s2r) + (w3r * s3i + w3i * s3r);
        }
      }
      for (; lb < W; ++lb) {
        const double wr = twr[lb], wi = twi[lb];
        if (wr == 0.0 && wi == 0.0) continue;
        double* zr = zrow_r + lb;
        double* zi = zrow_i + lb;
#pragma GCC ivdep
        for (int n = 0; n < W; ++n) {
          zr[n] += wr * br[n] - wi * bi[n];
          zi[n] += wr * bi[n] + wi * br[n];
        }
      }
    }
  }

  TruncationPolicy pol = a.policy();
  pol.clip_mode = merge_clip(a, b);
  pol.spill_mass = 0.0;
  FourierElement out(a.theta(), pol);
  cplx* od = out.mutable_data().data();
  for (int m = 0; m < W; ++m) {
    const double* zr = &ore_[static_cast<std::size_t>(m + B) * EW + B];
    const double* zi = &oim_[static_cast<std::size_t>(m + B) * EW + B];
    cplx* row = od + static_cast<std::size_t>(m) * W;
    for (int n = 0; n < W; ++n) row[n] = cplx(zr[n], zi[n]);
  }

  if (pol.clip_mode == ClipMode::track_spill) {
    // Clipped mass = total extended mass minus the kept window.
    double total = 0.0;
    for (std::size_t i = 0; i < ore_.size(); ++i)
      total += ore_[i] * ore_[i] + oim_[i] * oim_[i];
    double kept = 0.0;
    for (int i = 0; i < W * W; ++i) kept += std::norm(od[i]);
    const double clipped = std::max(0.0, total - kept);
    out.policy_.spill_mass =
        a.spill_mass() + b.spill_mass() + std::sqrt(clipped);
  }
  return out;
}

FourierElement adjoint(const FourierElement& a) {
  const int B = a.bandwidth();
  const auto table = phase_table(a.theta(), B * B);
  const double* pre = table->re.data() + table->jmax;
  const double* pim = table->im.data() + table->jmax;
  FourierElement out(a.theta(), a.policy());
  for (int m = -B; m <= B; ++m)
    for (int n = -B; n <= B; ++n) {
      const cplx v = std::conj(a.coeff(-m, -n));
      const int j = m * n;
      out.set_coeff(m, n, v * cplx(pre[j], pim[j]));
    }
  return out;
}

cplx trace(const FourierElement& a) { return a.coeff(0, 0); }

cplx trace_of_product(const FourierElement& a, const FourierElement& b) {
  check_compatible(a, b, "trace_of_product");
  const int B = a.bandwidth();
  const auto table = phase_table(a.theta(), B * B);
  const double* pre = table->re.data() + table->jmax;
  const double* pim = table->im.data() + table->jmax;
  // (ab)_{0,0} = sum_{k,l} a_{k,l} b_{-k,-l} e^{2 pi i theta l k}.
  cplx acc(0.0, 0.0);
  for (int k = -B; k <= B; ++k)
    for (int l = -B; l <= B; ++l) {
      const cplx av = a.coeff(k, l);
      if (av == cplx(0.0, 0.0)) continue;
      const int j = -l * k;  // e^{+2 pi i theta l k} = table at -l*k
      acc += av * b.coeff(-k, -l) * cplx(pre[j], pim[j]);
    }
  return acc;
}

cplx inner(const FourierElement& a, const FourierElement& b) {
  check_compatible(a, b, "inner");
  cplx acc(0.0, 0.0);
  const auto& ad = a.data();
  const auto& bd = b.data();
  for (std::size_t i = 0; i < ad.size(); ++i) acc += ad[i] * std::conj(bd[i]);
  return acc;
}

double hs_norm(const FourierElement& a) {
  double acc = 0.0;
  for (const cplx& v : a.data()) acc += std::norm(v);
  return std::sqrt(acc);
}

FourierElement derivation(const FourierElement& a, int j) {
  if (j != 1 && j != 2)
    throw std::invalid_argument("derivation: j must be 1 or 2");
  const int B = a.bandwidth();
  FourierElement out(a.theta(), a.policy());
  for (int m = -B; m <= B; ++m)
    for (int n = -B; n <= B; ++n) {
      const double f = kTwoPi * (j == 1 ? m : n);
      out.set_coeff(m, n, cplx(0.0, f) * a.coeff(m, n));
    }
  return out;
}

FourierElement laplacian(const FourierElement& a) {
  const int B = a.bandwidth();
  const double fourpi2 = kTwoPi * kTwoPi;
  FourierElement out(a.theta(), a.policy());
  for (int m = -B; m <= B; ++m)
    for (int n = -B; n <= B; ++n)
      out.set_coeff(m, n, fourpi2 * double(m) * m * a.coeff(m, n) +
                              fourpi2 * double(n) * n * a.coeff(m, n));
  return out;
}

FourierElement add(const FourierElement& a, const FourierElement& b) {
  check_compatible(a, b, "add");
  TruncationPolicy pol = a.policy();
  pol.clip_mode = merge_clip(a, b);
  pol.spill_mass = a.spill_mass() + b.spill_mass();
  FourierElement out(a.theta(), pol);
  auto& od = out.mutable_data();
  const auto& ad = a.data();
  const auto& bd = b.data();
  for (std::size_t i = 0; i < od.size(); ++i) od[i] = ad[i] + bd[i];
  return out;
}

FourierElement sub(const FourierElement& a, const FourierElement& b) {
  check_compatible(a, b, "sub");
  TruncationPolicy pol = a.policy();
  pol.clip_mode = merge_clip(a, b);
  pol.spill_mass = a.spill_mass() + b.spill_mass();
  FourierElement out(a.theta(), pol);
  auto& od = out.mutable_data();
  const auto& ad = a.data();
  const auto& bd = b.data();
  for (std::size_t i = 0; i < od.size(); ++i) od[i] = ad[i] - bd[i];
  return out;
}

FourierElement scale(const FourierElement& a, cplx c) {
  TruncationPolicy pol = a.policy();
  // Spill is an l2 quantity: the discarded mass scales with the element.
  pol.spill_mass = std::abs(c) * pol.spill_mass;
  FourierElement out(a.theta(), pol);
  auto& od = out.mutable_data();
  const auto& ad = a.data();
  for (std::size_t i = 0; i < od.size(); ++i) od[i] = c * ad[i];
  return out;
}

FourierElement random_selfadjoint(double theta, int bandwidth, double decay,
                                  std::uint64_t seed) {
  if (decay <= 0.0)
    throw std::invalid_argument("random_selfadjoint: decay must be positive");
  const int B = bandwidth;
  const auto table = phase_table(theta, B * B);
  const double* pre = table->re.data() + table->jmax;
  const double* pim = table->im.data() + table->jmax;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  FourierElement h(theta, TruncationPolicy{bandwidth, ClipMode::track_spill, 0.0});
  h.set_coeff(0, 0, cplx(gauss(rng), 0.0));
  // Fill the half lattice m > 0, plus the m == 0, n > 0 ray; the opposite
  // mode is pinned by self-adjointness: h_{-m,-n} = conj(h_{m,n})
  // e^{-2 pi i theta m n}, which makes adjoint(h) == h exact.
  for (int m = 0; m <= B; ++m)
    for (int n = (m == 0 ? 1 : -B); n <= B; ++n) {
      const double amp = std::exp(-decay * (double(m) * m + double(n) * n));
      const cplx g = amp * cplx(gauss(rng), gauss(rng));
      h.set_coeff(m, n, g);
      const int j = m * n;
      h.set_coeff(-m, -n, std::conj(g) * cplx(pre[j], pim[j]));
    }
  return h;
}

FourierElement random_element(double theta, int bandwidth, double decay,
                              std::uint64_t seed, int support) {
  if (decay < 0.0)
    throw std::invalid_argument("random_element: decay must be >= 0");
  const int s = (support < 0 || support > bandwidth) ? bandwidth : support;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  FourierElement a(theta, TruncationPolicy{bandwidth, ClipMode::track_spill, 0.0});
  for (int m = -s; m <= s; ++m)
    for (int n = -s; n <= s; ++n) {
      const double amp = std::exp(-decay * (double(m) * m + double(n) * n));
      a.set_coeff(m, n, amp * cplx(gauss(rng), gauss(rng)));
    }
  const double nrm = hs_norm(a);
  return nrm > 0.0 ? scale(a, 1.0 / nrm) : a;
}

FourierElement exp_skew(const FourierElement& s, int terms, double tail_tol) {
  const double skew_defect = hs_norm(add(adjoint(s), s));
  if (skew_defect > 1e-10)
    throw std::invalid_argument("exp_skew: argument is not skew-adjoint");
  const double nrm = hs_norm(s);
  if (nrm > 1.0)
    throw std::invalid_argument(
        "exp_skew: hs_norm(s) > 1; reduce the step before exponentiating");
  if (terms < 1) throw std::invalid_argument("exp_skew: terms must be >= 1");

  FourierElement acc = add(identity(s.theta(), s.policy()), s);
  if (nrm == 0.0) return acc;
  FourierElement power = s;  // s^k / k!
  double bound = nrm;        // ||s||^k / k!
  for (int k = 2; k <= terms; ++k) {
    bound *= nrm / k;
    if (bound <= tail_tol) break;  // remainder heuristic ||s||^k / k!
    power = scale(multiply(power, s), 1.0 / k);
    acc = add(acc, power);
  }
  return acc;
}

double unitarity_defect(const FourierElement& u) {
  FourierElement d = multiply(adjoint(u), u);
  d.set_coeff(0, 0, d.coeff(0, 0) - 1.0);
  return hs_norm(d);
}

double max_abs_diff(const FourierElement& a, const FourierElement& b) {
  check_compatible(a, b, "max_abs_diff");
  double m = 0.0;
  const auto& ad = a.data();
  const auto& bd = b.data();
  for (std::size_t i = 0; i < ad.size(); ++i)
    m = std::max(m, std::abs(ad[i] - bd[i]));
  return m;
}

}  // namespace nctorus
