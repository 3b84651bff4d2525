#pragma once

#include <cstdint>
#include <string>

#include "classex/common.hpp"
#include "classex/gf.hpp"

namespace classex {

/// 2x2 matrix over a finite field. SL2 elements have det 1; for odd
/// characteristic an element has order 4 exactly when its trace is 0 (its
/// characteristic polynomial is then x^2 + 1).
struct Mat2 {
  FiniteField::elem a, b, c, d;  // row-major [[a,b],[c,d]]

  static Mat2 identity(const FiniteField& f) {
    return {f.one(), 0, 0, f.one()};
  }

  static Mat2 mul(const FiniteField& f, const Mat2& x, const Mat2& y) {
    return {f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)),
            f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
            f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)),
            f.add(f.mul(x.c, y.b), f.mul(x.d, y.d))};
  }

  FiniteField::elem det(const FiniteField& f) const {
    return f.sub(f.mul(a, d), f.mul(b, c));
  }

  FiniteField::elem trace(const FiniteField& f) const { return f.add(a, d); }

  Mat2 frobenius(const FiniteField& f) const {
    return {f.frobenius(a), f.frobenius(b), f.frobenius(c), f.frobenius(d)};
  }

  bool is_identity(const FiniteField& f) const {
    return a == f.one() && b == 0 && c == 0 && d == f.one();
  }

  bool is_minus_identity(const FiniteField& f) const {
    return a == f.neg(f.one()) && b == 0 && c == 0 && d == f.neg(f.one());
  }

  bool operator==(const Mat2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
};

/// Element M * sigma^e of SL2(q) extended by the field automorphism sigma,
/// acting as v -> M v^(sigma^e). Composition: (M,i)(N,j) = (M N^(sigma^-i)
/// read through the action order below), tracked so powers and orders are
/// exact.
struct SemiMat2 {
  Mat2 m;
  int frob;  // exponent of sigma, mod field degree

  static SemiMat2 identity(const FiniteField& f) {
    return {Mat2::identity(f), 0};
  }

  static SemiMat2 mul(const FiniteField& f, const SemiMat2& x,
                      const SemiMat2& y) {
    // (M, i) * (N, j): apply (M,i) first.  v -> N ((M v^(s^i))^(s^j))
    //                = (N M^(s^j)) v^(s^(i+j))
    Mat2 mj = x.m;
    for (int t = 0; t < y.frob % f.degree(); ++t) mj = mj.frobenius(f);
    return {Mat2::mul(f, y.m, mj), (x.frob + y.frob) % f.degree()};
  }

  bool is_identity(const FiniteField& f) const {
    return frob % f.degree() == 0 && m.is_identity(f);
  }

  /// Central elements of SL2(odd q) extended by sigma: (+-I, 0).
  bool is_projectively_trivial(const FiniteField& f) const {
    return frob % f.degree() == 0 &&
           (m.is_identity(f) || m.is_minus_identity(f));
  }
};

inline std::uint64_t semi_order(const FiniteField& f, const SemiMat2& x,
                                std::uint64_t cap = 1 << 20) {
  SemiMat2 acc = x;
  std::uint64_t o = 1;
  while (!acc.is_identity(f)) {
    acc = SemiMat2::mul(f, acc, x);
    if (++o > cap) throw error("semi_order: cap exceeded");
  }
  return o;
}

/// Order in the projective group (mod the centre {+-I}).
inline std::uint64_t semi_projective_order(const FiniteField& f,
                                           const SemiMat2& x,
                                           std::uint64_t cap = 1 << 20) {
  SemiMat2 acc = x;
  std::uint64_t o = 1;
  while (!acc.is_projectively_trivial(f)) {
    acc = SemiMat2::mul(f, acc, x);
    if (++o > cap) throw error("semi_projective_order: cap exceeded");
  }
  return o;
}

}  // namespace classex
