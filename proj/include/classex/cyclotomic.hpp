#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "classex/common.hpp"

namespace classex {

namespace detail {

struct ConductorInfo {
  long n = 1;
  // prime -> (prime power p^a, phi(p^a), CRT idempotent exponent E_p)
  struct PrimePart {
    long p, pa, phi, idem;
  };
  std::vector<PrimePart> parts;

  explicit ConductorInfo(long n_) : n(n_) {
    long m = n_;
    for (long p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      long pa = 1;
      while (m % p == 0) {
        m /= p;
        pa *= p;
      }
      parts.push_back({p, pa, pa / p * (p - 1), 0});
    }
    if (m > 1) parts.push_back({m, m, m - 1, 0});
    for (auto& pp : parts) {
      long rest = n / pp.pa;
      // inverse of rest mod pa
      long inv = 1, base = rest % pp.pa, e = pp.pa / pp.p * (pp.p - 1) - 1;
      // Euler: rest^(phi(pa)-1) mod pa
      long acc = 1;
      base %= pp.pa;
      long ee = e;
      while (ee) {
        if (ee & 1) acc = acc * base % pp.pa;
        base = base * base % pp.pa;
        ee >>= 1;
      }
      inv = acc;
      pp.idem = static_cast<long>((__int128)rest * inv % n);
    }
  }
};

inline const ConductorInfo& conductor_info(long n) {
  static std::mutex mu;
  static std::unordered_map<long, std::shared_ptr<ConductorInfo>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<ConductorInfo>(n);
  return *slot;
}

}  // namespace detail

/// Exact element of Q(zeta_n), held in a canonical basis: the exponents j
/// whose CRT digit at every prime power p^a | n lies below phi(p^a). This is
/// the tensor basis of the prime-power subfields; reducing a power of zeta
/// uses 1 + z^{p^{a-1}} + ... + z^{(p-1)p^{a-1}} = 0 once per bad prime, so
/// canonical forms are reached without dense division by the cyclotomic
/// polynomial. Equality at mixed conductors lifts to the lcm.
class Cyclotomic {
 public:
  Cyclotomic() : n_(1) {}

  explicit Cyclotomic(const Rational& q) : n_(1) {
    if (q != 0) terms_[0] = q;
  }

  static Cyclotomic from_rational(const Rational& q) { return Cyclotomic(q); }

  static Cyclotomic root_of_unity(long n, long k,
                                  long bound = kDefaultConductorBound) {
    check_conductor(n, bound);
    Cyclotomic c;
    c.n_ = n;
    c.add_term(((k % n) + n) % n, Rational(1));
    c.prune();
    return c;
  }

  long conductor() const { return n_; }
  const std::map<long, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }

  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
  }

  Rational rational_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_rational()) throw error("cyclotomic value is not rational");
    return terms_.begin()->second;
  }

  Cyclotomic lifted(long m, long bound = kDefaultConductorBound) const {
    if (m == n_) return *this;
    if (m % n_ != 0) throw error("lift: conductor does not divide target");
    check_conductor(m, bound);
    Cyclotomic out;
    out.n_ = m;
    long f = m / n_;
    for (const auto& [j, c] : terms_) out.add_term(j * f, c);
    out.prune();
    return out;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    long m = std::lcm(a.n_, b.n_);
    Cyclotomic x = a.lifted(m), y = b.lifted(m);
    for (const auto& [j, c] : y.terms_) x.terms_[j] += c;
    x.prune();
    return x;
  }

  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    return a + (-b);
  }

  Cyclotomic operator-() const {
    Cyclotomic out = *this;
    for (auto& [j, c] : out.terms_) c = -c;
    return out;
  }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    long m = std::lcm(a.n_, b.n_);
    Cyclotomic x = a.lifted(m), y = b.lifted(m);
    Cyclotomic out;
    out.n_ = m;
    for (const auto& [j1, c1] : x.terms_)
      for (const auto& [j2, c2] : y.terms_)
        out.add_term((j1 + j2) % m, c1 * c2);
    out.prune();
    return out;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  /// zeta -> zeta^{-1}
  Cyclotomic complex_conjugate() const {
    Cyclotomic out;
    out.n_ = n_;
    for (const auto& [j, c] : terms_) out.add_term((n_ - j) % n_, c);
    out.prune();
    return out;
  }

  /// Galois map zeta -> zeta^t, t coprime to the conductor.
  Cyclotomic galois(long t) const {
    t = ((t % n_) + n_) % n_;
    if (std::gcd(t, n_) != 1) throw error("galois: exponent not coprime");
    Cyclotomic out;
    out.n_ = n_;
    for (const auto& [j, c] : terms_)
      out.add_term(static_cast<long>((__int128)j * t % n_), c);
    out.prune();
    return out;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    long m = std::lcm(a.n_, b.n_);
    return a.lifted(m).terms_ == b.lifted(m).terms_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) {
    return !(a == b);
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [j, c] : terms_) {
      if (!first) out += " + ";
      first = false;
      out += c.str();
      if (j != 0) out += "*z" + std::to_string(n_) + "^" + std::to_string(j);
    }
    return out;
  }

 private:
  static void check_conductor(long n, long bound) {
    if (n < 1) throw error("conductor must be positive");
    if (n > bound)
      throw conductor_overflow("conductor " + std::to_string(n) +
                               " exceeds bound " + std::to_string(bound));
  }

  void add_term(long j, const Rational& coeff) {
    if (coeff == 0) return;
    const detail::ConductorInfo& info = detail::conductor_info(n_);
    for (const auto& pp : info.parts) {
      long d = j % pp.pa;
      if (d < pp.phi) continue;
      long r = d - pp.phi;  // 0 <= r < p^{a-1}
      long pam1 = pp.pa / pp.p;
      // clear the p-digit, then spread over the replacement digits
      long stripped = static_cast<long>(
          (((__int128)j - (__int128)d * pp.idem) % n_ + n_) % n_);
      for (long t = 0; t + 1 < pp.p; ++t) {
        long nd = t * pam1 + r;
        long j2 = static_cast<long>(
            ((__int128)stripped + (__int128)nd * pp.idem) % n_);
        add_term(j2, -coeff);
      }
      return;
    }
    terms_[j] += coeff;
  }

  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = (it->second == 0) ? terms_.erase(it) : std::next(it);
  }

  long n_;
  std::map<long, Rational> terms_;
};

/// Coefficients of the n-th cyclotomic polynomial, low degree first, computed
/// by iterated division of x^n - 1 by Phi_d over proper divisors d.
inline std::vector<BigInt> cyclotomic_polynomial(long n) {
  std::vector<std::vector<BigInt>> cache(n + 1);
  for (long m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    // x^m - 1
    std::vector<BigInt> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (long d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      const auto& phi_d = cache[d];
      // exact polynomial division num /= phi_d
      std::vector<BigInt> q(num.size() - phi_d.size() + 1, 0);
      std::vector<BigInt> r = num;
      for (std::size_t i = q.size(); i-- > 0;) {
        BigInt lead = r[i + phi_d.size() - 1];
        if (lead == 0) continue;
        q[i] = lead;  // phi_d is monic
        for (std::size_t k = 0; k < phi_d.size(); ++k)
          r[i + k] -= lead * phi_d[k];
      }
      num = q;
    }
    cache[m] = num;
  }
  return cache[n];
}

}  // namespace classex
