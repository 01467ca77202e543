#include "nctorus/matrix_oracle.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace nctorus {

MatrixRep MatrixRep::zero(int q, int p) {
  MatrixRep m;
  m.q = q;
  m.p = p;
  m.entries.assign(static_cast<std::size_t>(q) * q, cplx(0.0, 0.0));
  return m;
}

MatrixRep MatrixRep::identity_mat(int q, int p) {
  MatrixRep m = zero(q, p);
  for (int i = 0; i < q; ++i) m.at(i, i) = 1.0;
  return m;
}

MatrixRep mat_mul(const MatrixRep& x, const MatrixRep& y) {
  if (x.q != y.q) throw std::invalid_argument("mat_mul: size mismatch");
  const int q = x.q;
  MatrixRep z = MatrixRep::zero(q, x.p);
  for (int i = 0; i < q; ++i)
    for (int k = 0; k < q; ++k) {
      const cplx v = x.at(i, k);
      if (v == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < q; ++j) z.at(i, j) += v * y.at(k, j);
    }
  return z;
}

MatrixRep mat_adjoint(const MatrixRep& x) {
  MatrixRep z = MatrixRep::zero(x.q, x.p);
  for (int i = 0; i < x.q; ++i)
    for (int j = 0; j < x.q; ++j) z.at(i, j) = std::conj(x.at(j, i));
  return z;
}

MatrixRep mat_add(const MatrixRep& x, const MatrixRep& y) {
  if (x.q != y.q) throw std::invalid_argument("mat_add: size mismatch");
  MatrixRep z = x;
  for (std::size_t i = 0; i < z.entries.size(); ++i) z.entries[i] += y.entries[i];
  return z;
}

MatrixRep mat_scale(const MatrixRep& x, cplx c) {
  MatrixRep z = x;
  for (auto& v : z.entries) v *= c;
  return z;
}

cplx mat_normalized_trace(const MatrixRep& x) {
  cplx t(0.0, 0.0);
  for (int i = 0; i < x.q; ++i) t += x.at(i, i);
  return t / double(x.q);
}

double mat_frobenius(const MatrixRep& x) {
  double s = 0.0;
  for (const auto& v : x.entries) s += std::norm(v);
  return std::sqrt(s);
}

double mat_max_abs_diff(const MatrixRep& x, const MatrixRep& y) {
  if (x.q != y.q) throw std::invalid_argument("mat_max_abs_diff: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < x.entries.size(); ++i)
    m = std::max(m, std::abs(x.entries[i] - y.entries[i]));
  return m;
}

namespace {

void check_q(int q) {
  if (q < 2) throw std::invalid_argument("oracle: q must be >= 2");
}

/// omega^j for j in [0, q), omega = e^{2 pi i p / q}.
std::vector<cplx> omega_powers(int q, int p) {
  std::vector<cplx> w(q);
  for (int j = 0; j < q; ++j)
    w[j] = std::polar(1.0, 2.0 * std::numbers::pi * p * j / double(q));
  return w;
}

inline int pos_mod(long long v, int q) {
  const long long r = v % q;
  return int(r < 0 ? r + q : r);
}

}  // namespace

MatrixRep clock(int q, int p) {
  check_q(q);
  const auto w = omega_powers(q, pos_mod(p, q));
  MatrixRep c = MatrixRep::zero(q, p);
  for (int j = 0; j < q; ++j) c.at(j, j) = w[j];
  return c;
}

MatrixRep shift(int q) {
  check_q(q);
  MatrixRep s = MatrixRep::zero(q, 0);
  for (int j = 0; j < q; ++j) s.at((j + 1) % q, j) = 1.0;
  return s;
}

MatrixRep represent(const FourierElement& x, int q, int p) {
  check_q(q);
  if (x.theta() != double(p) / double(q))
    throw std::invalid_argument(
        "represent: element theta is not the oracle's p/q (bitwise)");
  const int pp = pos_mod(p, q);
  const auto w = omega_powers(q, pp);
  const int B = x.bandwidth();
  MatrixRep out = MatrixRep::zero(q, p);
  // C^m S^n has entries [(k+n) mod q, k] = omega^{m (k+n) mod q}.
  for (int m = -B; m <= B; ++m)
    for (int n = -B; n <= B; ++n) {
      const cplx v = x.coeff(m, n);
      if (v == cplx(0.0, 0.0)) continue;
      for (int k = 0; k < q; ++k) {
        const int row = pos_mod(k + n, q);
        out.at(row, k) += v * w[pos_mod(static_cast<long long>(m) * row, q)];
      }
    }
  return out;
}

int default_oracle_p(int q) {
  for (int p = q / 2; p >= 1; --p)
    if (std::gcd(p, q) == 1) return p;
  return 1;
}

CertReport certify_at(int q, int trials, std::uint64_t seed, double tol) {
  if (q < 5) throw std::invalid_argument("certify_at: q must be >= 5");
  const int p = default_oracle_p(q);
  const double theta = double(p) / double(q);
  // Supports small enough that a product of two trial elements stays inside
  // the window: any deviation is then a convention bug, not truncation.
  const int support = (q - 1) / 2;
  const int bandwidth = 2 * support;
  std::mt19937_64 rng(seed);

  CertReport rep;
  rep.q = q;
  rep.p = p;
  rep.trials = trials;

  auto random_trial = [&](std::uint64_t s) {
    FourierElement a(theta,
                     TruncationPolicy{bandwidth, ClipMode::track_spill, 0.0});
    std::mt19937_64 r(s);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int m = -support; m <= support; ++m)
      for (int n = -support; n <= support; ++n)
        a.set_coeff(m, n, cplx(g(r), g(r)));
    return a;
  };

  for (int t = 0; t < trials; ++t) {
    const FourierElement a = random_trial(rng());
    const FourierElement b = random_trial(rng());

    const MatrixRep ra = represent(a, q, p);
    const MatrixRep rb = represent(b, q, p);

    const double dev_prod =
        mat_max_abs_diff(represent(multiply(a, b), q, p), mat_mul(ra, rb));
    const double dev_adj =
        mat_max_abs_diff(represent(adjoint(a), q, p), mat_adjoint(ra));
    const double dev_tr = std::abs(trace(a) - mat_normalized_trace(ra)) +
                          std::abs(trace(b) - mat_normalized_trace(rb));

    rep.max_product_dev = std::max(rep.max_product_dev, dev_prod);
    rep.max_adjoint_dev = std::max(rep.max_adjoint_dev, dev_adj);
    rep.max_trace_dev = std::max(rep.max_trace_dev, dev_tr);
  }
  rep.pass = rep.max_product_dev <= tol && rep.max_adjoint_dev <= tol &&
             rep.max_trace_dev <= tol;
  return rep;
}

std::vector<CertReport> oracle_certify(const std::vector<int>& qs, int trials,
                                       std::uint64_t seed, double tol) {
  std::vector<CertReport> out;
  out.reserve(qs.size());
  std::uint64_t s = seed;
  for (int q : qs) out.push_back(certify_at(q, trials, s++, tol));
  return out;
}

}  // namespace nctorus
