#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "classex/cyclotomic.hpp"

using namespace classex;

namespace {
Cyclotomic zeta(long n, long k = 1) { return Cyclotomic::root_of_unity(n, k); }
Cyclotomic rat(long num, long den = 1) {
  return Cyclotomic(Rational(num, den));
}
}  // namespace

TEST_CASE("phi_3 relation: zeta3 + zeta3^2 = -1") {
  REQUIRE(zeta(3) + zeta(3, 2) == rat(-1));
}

TEST_CASE("zeta5 * zeta5^4 = 1") {
  REQUIRE(zeta(5) * zeta(5, 4) == rat(1));
}

TEST_CASE("sum of primitive 5th roots = -1") {
  Cyclotomic s = zeta(5, 1) + zeta(5, 2) + zeta(5, 3) + zeta(5, 4);
  REQUIRE(s == rat(-1));
  REQUIRE(s.is_rational());
  REQUIRE(s.rational_value() == -1);
}

TEST_CASE("golden ratio square") {
  // x = zeta5 + zeta5^-1 satisfies (2x+1)^2 = 5
  Cyclotomic x = zeta(5) + zeta(5, 4);
  Cyclotomic t = x + x + rat(1);
  REQUIRE(t * t == rat(5));
}

TEST_CASE("conjugation maps zeta to its inverse") {
  Cyclotomic z = zeta(7, 2);
  REQUIRE(z.complex_conjugate() == zeta(7, 5));
  REQUIRE(z * z.complex_conjugate() == rat(1));
}

TEST_CASE("mixed conductors") {
  // zeta6 + zeta6^5 = 1
  REQUIRE(zeta(6) + zeta(6, 5) == rat(1));
  REQUIRE(zeta(4) * zeta(4) == rat(-1));
  // equality across conductors: zeta6^2 = zeta3
  REQUIRE(zeta(6, 2) == zeta(3, 1));
}

TEST_CASE("lift then reduce is the identity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    long n = 2 + static_cast<long>(rng() % 40);
    Cyclotomic v = rat(0);
    for (int t = 0; t < 4; ++t)
      v += Cyclotomic(Rational(static_cast<long>(rng() % 7) - 3)) *
           zeta(n, static_cast<long>(rng() % n));
    long m = n * static_cast<long>(1 + rng() % 5);
    REQUIRE(v.lifted(m) == v);
  }
}

TEST_CASE("conductor bound enforced") {
  REQUIRE_THROWS_AS(Cyclotomic::root_of_unity(1 << 17, 1), conductor_overflow);
}

TEST_CASE("cyclotomic polynomial via iterated division, evaluated at zeta") {
  // Phi_n(zeta_n) must reduce to zero in the canonical basis
  for (long n : {1L, 2L, 4L, 6L, 12L, 15L, 30L, 36L, 105L}) {
    auto phi = cyclotomic_polynomial(n);
    Cyclotomic acc = rat(0);
    for (std::size_t i = 0; i < phi.size(); ++i) {
      if (phi[i] == 0) continue;
      acc += Cyclotomic(Rational(phi[i])) * zeta(n, static_cast<long>(i % n));
    }
    CAPTURE(n);
    REQUIRE(acc.is_zero());
  }
  // known coefficients
  auto p12 = cyclotomic_polynomial(12);  // x^4 - x^2 + 1
  REQUIRE(p12 == std::vector<BigInt>{1, 0, -1, 0, 1});
  auto p105 = cyclotomic_polynomial(105);
  REQUIRE(p105[7] == -2);
}

TEST_CASE("galois action permutes roots") {
  Cyclotomic z = zeta(15, 1) + zeta(15, 4);
  Cyclotomic g = z.galois(2);
  REQUIRE(g == zeta(15, 2) + zeta(15, 8));
  REQUIRE_THROWS_AS(z.galois(3), error);
}

TEST_CASE("arithmetic consistency under random expressions") {
  std::mt19937_64 rng(99);
  auto rand_val = [&](long n) {
    Cyclotomic v = rat(0);
    for (int t = 0; t < 3; ++t)
      v += Cyclotomic(Rational(static_cast<long>(rng() % 9) - 4,
                               1 + static_cast<long>(rng() % 3))) *
           zeta(n, static_cast<long>(rng() % n));
    return v;
  };
  for (int trial = 0; trial < 30; ++trial) {
    long n1 = 2 + static_cast<long>(rng() % 20);
    long n2 = 2 + static_cast<long>(rng() % 20);
    Cyclotomic a = rand_val(n1), b = rand_val(n2), c = rand_val(n1);
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a * b).complex_conjugate() ==
            a.complex_conjugate() * b.complex_conjugate());
  }
}
