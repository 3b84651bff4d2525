#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "classex/common.hpp"

namespace classex {

namespace detail {

struct PackedPoly {
  int p;
  int k;
  std::vector<int> low;  // non-leading coefficients, constant term first; monic
};

/// One irreducible polynomial per supported extension field; the constants
/// are fixed so that element labels are reproducible across runs and
/// platforms. Each is the least monic irreducible of its degree under the
/// base-p integer encoding of the low coefficients.
inline const std::vector<PackedPoly>& packed_polys() {
  static const std::vector<PackedPoly> table = {
      {2, 2, {1, 1}},
      {2, 3, {1, 1, 0}},
      {2, 4, {1, 1, 0, 0}},
      {2, 5, {1, 0, 1, 0, 0}},
      {2, 6, {1, 1, 0, 0, 0, 0}},
      {2, 7, {1, 1, 0, 0, 0, 0, 0}},
      {2, 8, {1, 1, 0, 1, 1, 0, 0, 0}},
      {2, 9, {1, 1, 0, 0, 0, 0, 0, 0, 0}},
      {2, 10, {1, 1, 0, 1, 0, 0, 0, 0, 0, 0}},
      {2, 11, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0}},
      {2, 12, {1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0}},
      {2, 13, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0}},
      {2, 14, {1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0}},
      {2, 15, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}},
      {2, 16, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}},
      {2, 17, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}},
      {3, 2, {2, 2}},
      {3, 3, {1, 2, 0}},
      {3, 4, {2, 2, 0, 0}},
      {3, 5, {1, 2, 0, 0, 0}},
      {3, 6, {2, 2, 1, 0, 0, 0}},
      {3, 7, {1, 0, 2, 0, 0, 0, 0}},
      {3, 8, {2, 2, 2, 0, 0, 0, 0, 0}},
      {3, 9, {1, 1, 2, 0, 0, 0, 0, 0, 0}},
      {3, 10, {2, 1, 0, 1, 0, 0, 0, 0, 0, 0}},
      {3, 11, {1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0}},
      {5, 2, {2, 1}},
      {5, 3, {1, 1, 0}},
      {5, 4, {2, 1, 1, 0}},
      {5, 5, {1, 4, 0, 0, 0}},
      {5, 6, {2, 1, 0, 0, 0, 0}},
      {5, 7, {1, 1, 0, 0, 0, 0, 0}},
      {7, 2, {3, 1}},
      {7, 3, {2, 3, 0}},
      {7, 4, {3, 1, 1, 0}},
      {7, 5, {4, 1, 0, 0, 0}},
      {7, 6, {3, 1, 1, 0, 0, 0}},
      {11, 2, {7, 1}},
      {11, 3, {5, 1, 0}},
      {11, 4, {7, 1, 1, 0}},
      {11, 5, {9, 0, 1, 0, 0}},
      {13, 2, {2, 1}},
      {13, 3, {6, 1, 0}},
      {13, 4, {2, 1, 1, 0}},
  };
  return table;
}

}  // namespace detail

/// GF(p^k) with elements encoded as integers in [0, p^k): the code of an
/// element with coefficients c_0..c_{k-1} (c_i on x^i) is sum c_i p^i.
/// Exact arithmetic; the multiplicative generator is located and verified at
/// construction.
class FiniteField {
 public:
  using elem = std::uint32_t;

  FiniteField(int p, int k) : p_(p), k_(k) {
    if (p < 2 || k < 1) throw error("field: bad parameters");
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) throw error("field: characteristic must be prime");
    q_ = 1;
    for (int i = 0; i < k; ++i) {
      q_ *= static_cast<std::uint64_t>(p);
      if (q_ > 177147)  // 3^11, the packaged ceiling
        throw error("field: unsupported size p^k > 3^11");
    }
    if (k > 1) {
      const detail::PackedPoly* found = nullptr;
      for (const auto& pp : detail::packed_polys())
        if (pp.p == p && pp.k == k) found = &pp;
      if (!found) throw error("field: no packaged polynomial for GF(" +
                              std::to_string(p) + "^" + std::to_string(k) + ")");
      poly_low_ = found->low;
    }
    build_tables();
    // locate and verify a multiplicative generator
    std::uint64_t m = q_ - 1;
    std::vector<std::uint64_t> prime_divs;
    std::uint64_t mm = m;
    for (std::uint64_t d = 2; d * d <= mm; ++d)
      if (mm % d == 0) {
        prime_divs.push_back(d);
        while (mm % d == 0) mm /= d;
      }
    if (mm > 1) prime_divs.push_back(mm);
    generator_ = 0;
    for (elem g = 2; g < q_; ++g) {
      bool ok = true;
      for (std::uint64_t d : prime_divs)
        if (pow(g, m / d) == one()) {
          ok = false;
          break;
        }
      if (ok) {
        generator_ = g;
        break;
      }
    }
    if (generator_ == 0 && q_ > 2) throw error("field: no generator found");
    if (q_ == 2) generator_ = 1;
    if (pow(generator_, m) != one()) throw error("field: generator order check failed");
  }

  int characteristic() const { return p_; }
  int degree() const { return k_; }
  std::uint64_t size() const { return q_; }
  elem zero() const { return 0; }
  elem one() const { return 1; }
  elem generator() const { return generator_; }

  elem add(elem a, elem b) const {
    return tabled_ ? add_[a * q_ + b] : add_direct(a, b);
  }
  elem sub(elem a, elem b) const { return add(a, neg(b)); }
  elem neg(elem a) const { return neg_[a]; }
  elem mul(elem a, elem b) const {
    return tabled_ ? mul_[a * q_ + b] : mul_direct(a, b);
  }

  elem inv(elem a) const {
    if (a == 0) throw error("field: division by zero");
    return pow(a, q_ - 2);
  }

  elem pow(elem a, std::uint64_t e) const {
    if (a == 0) {
      if (e == 0) throw error("field: 0^0");
      return 0;
    }
    e %= (q_ - 1);
    elem r = one(), base = a;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  elem frobenius(elem a) const { return pow(a, static_cast<std::uint64_t>(p_)); }

  /// x^(1 + p + ... + p^{k-1}); lands in the prime field.
  elem norm(elem a) const {
    elem r = one();
    elem x = a;
    for (int i = 0; i < k_; ++i) {
      r = mul(r, x);
      if (r == 0) return 0;
      x = frobenius(x);
    }
    return r;
  }

  std::uint64_t mult_order(elem a) const {
    if (a == 0) throw error("field: order of zero");
    std::uint64_t o = 1;
    elem x = a;
    while (x != one()) {
      x = mul(x, a);
      ++o;
    }
    return o;
  }

  std::vector<int> decode(elem a) const {
    std::vector<int> c(k_);
    for (int i = 0; i < k_; ++i) {
      c[i] = static_cast<int>(a % p_);
      a /= p_;
    }
    return c;
  }

  elem encode(const std::vector<int>& c) const {
    std::uint64_t v = 0;
    for (int i = k_; i-- > 0;)
      v = v * p_ + (((i < static_cast<int>(c.size()) ? c[i] : 0) % p_ + p_) % p_);
    return static_cast<elem>(v);
  }

 private:
  elem add_direct(elem a, elem b) const {
    auto ca = decode(a), cb = decode(b);
    std::vector<int> sc(k_);
    for (int i = 0; i < k_; ++i) sc[i] = (ca[i] + cb[i]) % p_;
    return encode(sc);
  }

  elem mul_direct(elem a, elem b) const {
    if (k_ == 1)
      return static_cast<elem>(static_cast<std::uint64_t>(a) * b % p_);
    auto ca = decode(a), cb = decode(b);
    std::vector<int> prod(2 * k_ - 1, 0);
    for (int i = 0; i < k_; ++i)
      if (ca[i])
        for (int j = 0; j < k_; ++j)
          prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
    for (int d = static_cast<int>(prod.size()) - 1; d >= k_; --d) {
      int f = prod[d];
      if (!f) continue;
      prod[d] = 0;
      for (int i = 0; i < k_; ++i)
        prod[d - k_ + i] =
            ((prod[d - k_ + i] - f * poly_low_[i]) % p_ + p_ * p_) % p_;
    }
    prod.resize(k_);
    return encode(prod);
  }

  void build_tables() {
    neg_.resize(q_);
    for (elem a = 0; a < q_; ++a) {
      auto ca = decode(a);
      std::vector<int> nc(k_);
      for (int i = 0; i < k_; ++i) nc[i] = (p_ - ca[i]) % p_;
      neg_[a] = encode(nc);
    }
    tabled_ = q_ <= 4096;
    if (!tabled_) return;
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    for (elem a = 0; a < q_; ++a)
      for (elem b = 0; b < q_; ++b) {
        add_[a * q_ + b] = add_direct(a, b);
        mul_[a * q_ + b] = mul_direct(a, b);
      }
  }

  int p_, k_;
  std::uint64_t q_;
  std::vector<int> poly_low_;
  elem generator_ = 0;
  bool tabled_ = false;
  std::vector<elem> neg_;
  std::vector<elem> add_, mul_;
};

}  // namespace classex
