#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "classex/constructions.hpp"
#include "classex/matsl2.hpp"

using namespace classex;
using P8 = std::uint8_t;
using P16 = std::uint16_t;

static std::string data_dir() { return CLASSEX_DATA_DIR; }

TEST_CASE("finite field basics") {
  FiniteField f8(2, 3);
  REQUIRE(f8.size() == 8);
  // frobenius has order 3
  FiniteField::elem x = f8.generator();
  REQUIRE(f8.frobenius(f8.frobenius(f8.frobenius(x))) == x);
  REQUIRE(f8.frobenius(x) != x);

  FiniteField f27(3, 3);
  REQUIRE(f27.norm(f27.one()) == f27.one());
  // norm maps onto GF(3): both nonzero prime-field values are hit
  std::set<FiniteField::elem> hits;
  for (FiniteField::elem z = 1; z < 27; ++z) hits.insert(f27.norm(z));
  REQUIRE(hits == std::set<FiniteField::elem>{1, 2});

  FiniteField f243(3, 5);
  for (FiniteField::elem z : {FiniteField::elem(5), FiniteField::elem(100),
                              FiniteField::elem(242)}) {
    FiniteField::elem w = z;
    for (int i = 0; i < 5; ++i) w = f243.frobenius(w);
    REQUIRE(w == z);  // x^(3^5) = x
  }
  REQUIRE_THROWS_AS(FiniteField(4, 1), error);
  REQUIRE_THROWS_AS(FiniteField(3, 12), error);
}

TEST_CASE("field arithmetic laws (random spot checks)") {
  FiniteField f(5, 3);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto a = static_cast<FiniteField::elem>(rng() % f.size());
    auto b = static_cast<FiniteField::elem>(rng() % f.size());
    auto c = static_cast<FiniteField::elem>(rng() % f.size());
    REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    if (a != 0) REQUIRE(f.mul(a, f.inv(a)) == f.one());
  }
  REQUIRE(f.mult_order(f.generator()) == f.size() - 1);
}

TEST_CASE("psl2 family orders") {
  REQUIRE(psl2<P8>(2, 3).order() == 504);
  REQUIRE(psl2<P8>(7, 1).order() == 168);
  REQUIRE(psigmal2<P8>(2, 3, 3).order() == 1512);
  REQUIRE(pgl2<P8>(5, 1).order() == 120);
  REQUIRE(psl2<P8>(2, 5).order() == 32736);
  REQUIRE(psigmal2<P8>(2, 5, 5).order() == 163680);
}

TEST_CASE("field automorphism permutes the projective line") {
  FiniteField f(2, 3);
  auto fr = field_automorphism_perm<P8>(f);
  REQUIRE(fr.order() == 3);
  // it normalizes PSL2(8)
  auto g = psl2<P8>(2, 3);
  for (const auto& s : g.generators())
    REQUIRE(g.contains(s.conjugated_by(fr)));
}

TEST_CASE("wreath products") {
  auto c2 = build_spec<P8>("cyclic:2");
  auto [w, ws] = wreath_cyclic<P8>(c2, 3);
  REQUIRE(w.order() == 24);  // 2 wr 3

  auto [w2, ws2] = wreath_cyclic<P8>(w, 5);
  REQUIRE(w2.order() == BigInt(39813120));  // (2 wr 3) wr 5

  // top cycle conjugation rotates coordinates: (h1,...,hn)^x = (hn,h1,...)
  auto s3 = build_spec<P8>("sym:3");
  auto [v, vs] = wreath_cyclic<P8>(s3, 4);
  auto h1 = parse_permutation<P8>("(1,2)", 3);
  auto h2 = parse_permutation<P8>("(1,2,3)", 3);
  auto h3 = parse_permutation<P8>("(2,3)", 3);
  auto id3 = Perm<P8>::identity(3);
  auto tup = vs.base_tuple({h1, h2, h3, id3});
  auto x = vs.top_cycle();
  REQUIRE(tup.conjugated_by(x) == vs.base_tuple({id3, h1, h2, h3}));
  REQUIRE(x.order() == 4);
}

TEST_CASE("semilinear affine groups") {
  REQUIRE(semilinear_affine<P8>(3, 3, 13, 3).order() == 1053);
  REQUIRE(semilinear_affine<P8>(2, 3, 7, 1).order() == 56);  // AGL(1,8)
  REQUIRE(semilinear_affine<P8>(2, 3, 7, 3).order() == 168);
  // order formula p^k * m * f
  REQUIRE(semilinear_affine<P8>(3, 2, 8, 2).order() == 9 * 8 * 2);
  REQUIRE_THROWS_AS(semilinear_affine<P8>(3, 3, 5, 1), error);
  REQUIRE_THROWS_AS(semilinear_affine<P8>(3, 3, 13, 2), error);
}

TEST_CASE("aff(p,k,p^k-1,k) has order p^k (p^k - 1) k") {
  auto g = semilinear_affine<P8>(3, 2, 8, 2);
  REQUIRE(g.order() == 144);
  auto g2 = semilinear_affine<P8>(2, 4, 15, 4);
  REQUIRE(g2.order() == 16 * 15 * 4);
}

TEST_CASE("named groups with order verification via two base rules") {
  for (const auto& name : {"M11", "Sz8", "Sz8.3"}) {
    auto g = named_group<P8>(name, data_dir());
    auto g2 = named_group<P8>(name, data_dir(), BaseRule::LargestMoved);
    REQUIRE(g.order() == g2.order());
  }
  auto j1 = named_group<P16>("J1", data_dir());
  auto j1b = named_group<P16>("J1", data_dir(), BaseRule::LargestMoved);
  REQUIRE(j1.order() == 175560);
  REQUIRE(j1b.order() == 175560);
  REQUIRE(named_group<P8>("M11", data_dir()).order() == 7920);
  REQUIRE(named_group<P8>("Sz8.3", data_dir()).order() == 87360);
  REQUIRE_THROWS_AS(named_group<P8>("NoSuchGroup", data_dir()), error);
}

TEST_CASE("generator file order mismatch is data corruption") {
  auto tmp = std::string("/tmp/classex_badorder.json");
  {
    std::ofstream f(tmp);
    f << R"js({"degree": 5, "generators": ["(1,2,3)", "(3,4,5)"], )js"
      << R"js("name": "bad", "order": 61})js" << "\n";
  }
  GeneratorFile gf = read_generator_file(tmp);
  REQUIRE_THROWS_AS(group_from_file<P8>(gf), error);
  std::remove(tmp.c_str());
}

TEST_CASE("group spec grammar") {
  REQUIRE(build_spec<P8>("alt:5").order() == 60);
  REQUIRE(build_spec<P8>("sym:6").order() == 720);
  REQUIRE(build_spec<P8>("cyclic:12").order() == 12);
  REQUIRE(build_spec<P8>("psl2:7").order() == 168);
  REQUIRE(build_spec<P8>("psigmal2:8,3").order() == 1512);
  REQUIRE(build_spec<P8>("wreath(cyclic:2,3)").order() == 24);
  REQUIRE(build_spec<P8>("aff(2,3,7,1)").order() == 56);
  REQUIRE(build_spec<P8>("name:Frob21", data_dir()).order() == 21);
  REQUIRE(spec_degree("wreath(wreath(cyclic:2,3),5)") == 30);
  REQUIRE_THROWS_AS(build_spec<P8>("nonsense:3"), parse_error);
}

TEST_CASE("sl2 matrix + semilinear machinery") {
  FiniteField f(3, 5);  // GF(243)
  Mat2 e{f.one(), 0, f.one(), f.one()};  // [[1,0],[1,1]]
  REQUIRE(e.det(f) == f.one());
  // order of the unipotent is 3
  Mat2 e2 = Mat2::mul(f, e, e);
  Mat2 e3 = Mat2::mul(f, e2, e);
  REQUIRE(e3.is_identity(f));
  // trace-0 elements square to -I (order 4)
  Mat2 t{0, f.one(), f.neg(f.one()), 0};
  REQUIRE(Mat2::mul(f, t, t).is_minus_identity(f));
  // semilinear element e * sigma has order 15 (sigma order 5, e order 3)
  SemiMat2 esig{e, 1};
  REQUIRE(semi_order(f, esig) == 15);
  // projective order of (I, sigma) is 5
  SemiMat2 sig{Mat2::identity(f), 1};
  REQUIRE(semi_projective_order(f, sig) == 5);
}
