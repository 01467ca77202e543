#pragma once

#include <cstdint>
#include <vector>

#include "nctorus/algebra.hpp"

namespace nctorus {

/// Dense q x q complex matrix in the finite representation at theta = p/q,
/// row-major. Just enough linear algebra for the clock-shift oracle.
struct MatrixRep {
  int q = 0;
  int p = 0;
  std::vector<cplx> entries;  // size q*q, entry (i, j) at i*q + j

  static MatrixRep zero(int q, int p = 0);
  static MatrixRep identity_mat(int q, int p = 0);
  cplx& at(int i, int j) { return entries[static_cast<std::size_t>(i) * q + j]; }
  const cplx& at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * q + j];
  }
};

MatrixRep mat_mul(const MatrixRep& x, const MatrixRep& y);
MatrixRep mat_adjoint(const MatrixRep& x);
MatrixRep mat_add(const MatrixRep& x, const MatrixRep& y);
MatrixRep mat_scale(const MatrixRep& x, cplx c);
cplx mat_normalized_trace(const MatrixRep& x);  // (1/q) Tr
double mat_frobenius(const MatrixRep& x);
double mat_max_abs_diff(const MatrixRep& x, const MatrixRep& y);

/// Clock matrix C = diag(1, omega, ..., omega^{q-1}), omega = e^{2 pi i p/q};
/// plays U. Coprimality of p is not required.
MatrixRep clock(int q, int p);
/// Cyclic shift S e_j = e_{j+1 mod q}; plays V. Satisfies C S = omega S C.
MatrixRep shift(int q);

/// Image of an element under U -> clock, V -> shift: sum a_{m,n} C^m S^n.
/// Requires the element's theta to equal double(p)/q bitwise. Trace is
/// faithful only for supports with |m|, |n| < q.
MatrixRep represent(const FourierElement& x, int q, int p);

struct CertReport {
  int q = 0;
  int p = 0;
  int trials = 0;
  double max_product_dev = 0.0;  // represent(ab) vs represent(a) represent(b)
  double max_adjoint_dev = 0.0;  // represent(a*) vs represent(a)^dagger
  double max_trace_dev = 0.0;    // trace(a) vs (1/q) Tr represent(a)
  bool pass = false;
};

/// Checks the algebra's multiply / adjoint / trace conventions against the
/// clock-shift representation on random elements whose supports are small
/// enough (|m|, |n| <= (q-1)/2) that products never clip and the trace is
/// faithful. Each trial draws two elements. p is the largest integer coprime
/// to q with p <= q/2.
CertReport certify_at(int q, int trials, std::uint64_t seed, double tol = 1e-9);

std::vector<CertReport> oracle_certify(const std::vector<int>& qs, int trials,
                                       std::uint64_t seed, double tol = 1e-9);

int default_oracle_p(int q);

}  // namespace nctorus
