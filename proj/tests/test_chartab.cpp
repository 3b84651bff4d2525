#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>

#include "classex/chartable.hpp"
#include "classex/constructions.hpp"

using namespace classex;
using P8 = std::uint8_t;

static std::string data_dir() { return CLASSEX_DATA_DIR; }

static nlohmann::json load_json(const std::string& name) {
  std::ifstream f(data_dir() + "/tables/" + name + ".json");
  REQUIRE(f.good());
  nlohmann::json doc;
  f >> doc;
  return doc;
}

// C6 character table written by hand: chi_j(g^k) = zeta_6^{jk}.
static nlohmann::json c6_table() {
  nlohmann::json doc;
  doc["name"] = "C6";
  doc["order"] = 6;
  doc["conductor"] = 6;
  const char* names[6] = {"1A", "6A", "3A", "2A", "3B", "6B"};
  int orders[6] = {1, 6, 3, 2, 3, 6};
  const char* invs[6] = {"1A", "6B", "3B", "2A", "3A", "6A"};
  for (int k = 0; k < 6; ++k) {
    nlohmann::json c;
    c["name"] = names[k];
    c["size"] = 1;
    c["order"] = orders[k];
    c["inverse"] = invs[k];
    c["powermap"] = {{"2", names[(2 * k) % 6]}, {"3", names[(3 * k) % 6]}};
    doc["classes"].push_back(c);
  }
  for (int j = 0; j < 6; ++j) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < 6; ++k) {
      int e = (j * k) % 6;
      if (e == 0)
        row.push_back(1);
      else if (e == 3)
        row.push_back(-1);
      else
        row.push_back(nlohmann::json{{"zeta", 6}, {"terms", {{e, 1}}}});
    }
    doc["irreducibles"].push_back(row);
  }
  return doc;
}

TEST_CASE("packaged Alt5 table loads with degrees 1,3,3,4,5") {
  auto t = CharacterTable::load(load_json("Alt5"));
  REQUIRE(t.num_classes() == 5);
  std::multiset<std::uint64_t> degs;
  for (std::size_t i = 0; i < 5; ++i) degs.insert(t.degree(i));
  REQUIRE(degs == std::multiset<std::uint64_t>{1, 3, 3, 4, 5});
}

TEST_CASE("perturbed table is rejected with an orthogonality witness") {
  auto doc = load_json("Alt5");
  auto v = doc["irreducibles"][2][1];
  doc["irreducibles"][2][1] = v.is_number() ? nlohmann::json(v.get<long>() + 1)
                                            : nlohmann::json(1);
  try {
    CharacterTable::load(doc);
    FAIL("corrupt table accepted");
  } catch (const schema_error& e) {
    REQUIRE(std::string(e.what()).find("orthogonality") != std::string::npos);
  }
}

TEST_CASE("packaged Frob21 table matches the enumeration backend class count") {
  auto t = CharacterTable::load(load_json("Frob21"));
  REQUIRE(t.num_classes() == 5);
  auto g = build_spec<P8>("name:Frob21", data_dir());
  ClassPartition<P8> part(g);
  REQUIRE(part.num_classes() == t.num_classes());
}

TEST_CASE("all packaged tables validate") {
  for (const char* n : {"Frob21", "Sym4", "Alt5", "PGammaL2_8", "M11",
                        "SL2_32.5", "Sz8.3", "J1"}) {
    CAPTURE(n);
    REQUIRE_NOTHROW(CharacterTable::load(load_json(n)));
  }
}

TEST_CASE("pairing count: coefficient(C, C^-1, 1A) = |C|") {
  for (const char* n : {"Alt5", "Frob21", "M11"}) {
    auto t = CharacterTable::load(load_json(n));
    for (std::size_t c = 0; c < t.num_classes(); ++c)
      REQUIRE(t.class_mult_coefficient(c, t.cls(c).inverse, 0) ==
              BigInt(t.cls(c).size));
  }
}

TEST_CASE("identity class coefficients: coefficient(1A, j, k) = delta_jk") {
  // for fixed z in C_k the only pair is (1, z), and only when j = k
  auto t = CharacterTable::load(load_json("Alt5"));
  for (std::size_t j = 0; j < t.num_classes(); ++j)
    for (std::size_t k = 0; k < t.num_classes(); ++k)
      REQUIRE(t.class_mult_coefficient(0, j, k) ==
              (j == k ? BigInt(1) : BigInt(0)));
}

TEST_CASE("Alt5: 5A*5A reaches 3A, checked against the enumeration oracle") {
  auto t = CharacterTable::load(load_json("Alt5"));
  auto i5A = t.class_by_name("5A");
  auto i3A = t.class_by_name("3A");
  REQUIRE(i5A.has_value());
  REQUIRE(t.class_mult_nonempty(*i5A, *i5A, *i3A));
  auto g = build_spec<P8>("alt:5");
  ClassPartition<P8> part(g);
  TableAlignment<P8> al(t, part);
  auto p5A = al.to_partition(*i5A);
  auto p3A = al.to_partition(*i3A);
  Perm<P8> rep3 = part.representative(p3A);
  BigInt count = 0;
  for (std::uint32_t mi : part.members(p5A))
    for (std::uint32_t ni : part.members(p5A))
      if (part.table().perm(mi) * part.table().perm(ni) == rep3) count += 1;
  REQUIRE(count == t.class_mult_coefficient(*i5A, *i5A, *i3A));
  REQUIRE(count > 0);
}

TEST_CASE("structure constants equal brute-force counts for every triple") {
  for (const char* name : {"Frob21", "Sym4", "Alt5", "PGammaL2_8"}) {
    CAPTURE(name);
    auto t = CharacterTable::load(load_json(name));
    Group<P8> g = std::string(name) == "Sym4"
                      ? build_spec<P8>("sym:4")
                      : std::string(name) == "Alt5"
                            ? build_spec<P8>("alt:5")
                            : build_spec<P8>(std::string("name:") + name,
                                             data_dir());
    ClassPartition<P8> part(g);
    TableAlignment<P8> al(t, part);
    std::size_t k = t.num_classes();
    for (std::size_t i = 0; i < k; ++i) {
      Perm<P8> ci = part.representative(al.to_partition(i));
      for (std::size_t j = 0; j < k; ++j) {
        std::vector<BigInt> counts(k, 0);
        for (std::uint32_t idx : part.members(al.to_partition(j)))
          counts[part.class_of(ci * part.table().perm(idx))] += 1;
        for (std::size_t kk = 0; kk < k; ++kk) {
          BigInt coeff = t.class_mult_coefficient(i, j, al.to_table(kk));
          // a_ijk * |C_k| = (fixed-rep count) * |C_i|
          REQUIRE(coeff * BigInt(part.info(kk).size) ==
                  counts[kk] * BigInt(part.info(al.to_partition(i)).size));
        }
      }
    }
  }
}

TEST_CASE("hj_test: abelian groups multiply classes to single classes") {
  auto t = CharacterTable::load(c6_table());
  auto a = *t.class_by_name("6A");
  auto b = *t.class_by_name("3A");  // g^1 * g^2 = g^3 = 2A
  REQUIRE(t.hj_test(a, b, *t.class_by_name("2A")));
  REQUIRE_FALSE(t.hj_test(a, b, *t.class_by_name("3B")));
}

TEST_CASE("hj_test fails for every target on Alt5 5A,5A and Frob21 7A,7A") {
  auto alt5 = CharacterTable::load(load_json("Alt5"));
  auto a = *alt5.class_by_name("5A");
  for (std::size_t c = 1; c < alt5.num_classes(); ++c)
    REQUIRE_FALSE(alt5.hj_test(a, a, c));
  auto f = CharacterTable::load(load_json("Frob21"));
  auto s = *f.class_by_name("7A");
  for (std::size_t c = 1; c < f.num_classes(); ++c)
    REQUIRE_FALSE(f.hj_test(s, s, c));
}

TEST_CASE("hj_test agrees with enumeration for every nontrivial triple of Frob21") {
  // includes a true nonabelian instance: 3A * 7A is the single class 3A
  auto t = CharacterTable::load(load_json("Frob21"));
  auto g = build_spec<P8>("name:Frob21", data_dir());
  ClassPartition<P8> part(g);
  TableAlignment<P8> al(t, part);
  bool saw_true = false;
  for (std::size_t a = 1; a < t.num_classes(); ++a)
    for (std::size_t b = 1; b < t.num_classes(); ++b) {
      NormalSubset<P8> ka(part), kb(part);
      ka.add_class(al.to_partition(a));
      kb.add_class(al.to_partition(b));
      auto prod = normal_set_product(part, ka, kb).class_indices();
      for (std::size_t c = 1; c < t.num_classes(); ++c) {
        bool single = prod.size() == 1 && prod[0] == al.to_partition(c);
        REQUIRE(t.hj_test(a, b, c) == single);
        saw_true |= single;
      }
    }
  REQUIRE(saw_true);
}

TEST_CASE("hj_test is consistent with class_mult_nonempty") {
  auto t = CharacterTable::load(c6_table());
  for (std::size_t a = 1; a < 6; ++a)
    for (std::size_t b = 1; b < 6; ++b)
      for (std::size_t c = 1; c < 6; ++c)
        if (t.hj_test(a, b, c))
          for (std::size_t k = 0; k < 6; ++k)
            if (k != c) REQUIRE_FALSE(t.class_mult_nonempty(a, b, k));
}

TEST_CASE("character product identity holds exactly on Alt5 and Frob21") {
  {
    auto t = CharacterTable::load(load_json("Alt5"));
    auto g = build_spec<P8>("alt:5");
    ClassPartition<P8> part(g);
    REQUIRE(character_product_identity_check(t, part));
  }
  {
    auto t = CharacterTable::load(load_json("Frob21"));
    auto g = build_spec<P8>("name:Frob21", data_dir());
    ClassPartition<P8> part(g);
    REQUIRE(character_product_identity_check(t, part));
  }
}

TEST_CASE("alignment fails when the group does not match the table") {
  auto t = CharacterTable::load(load_json("Alt5"));
  auto g = build_spec<P8>("sym:4");
  ClassPartition<P8> part(g);
  REQUIRE_THROWS_AS(TableAlignment<P8>(t, part), alignment_error);
}

TEST_CASE("coset square sums on PGammaL2_8 agree with enumeration") {
  auto t = CharacterTable::load(load_json("PGammaL2_8"));
  auto l = build_spec<P8>("psigmal2:8,3");
  ClassPartition<P8> part(l);
  TableAlignment<P8> al(t, part);
  auto g = build_spec<P8>("psl2:8");

  // x: an outer class of order 3 (field automorphism coset)
  std::size_t x_class = SIZE_MAX;
  for (std::size_t c = 0; c < part.num_classes(); ++c) {
    if (part.info(c).element_order == 3 &&
        !g.contains(part.representative(c))) {
      x_class = c;
      break;
    }
  }
  REQUIRE(x_class != SIZE_MAX);

  NormalSubset<P8> xk(part);
  xk.add_class(x_class);
  auto sq = normal_set_product(part, xk, xk);
  for (std::size_t c = 0; c < part.num_classes(); ++c) {
    Cyclotomic s = t.coset_square_sum(al.to_table(x_class), al.to_table(c));
    bool hit = sq.contains_class(c);
    CAPTURE(part.name(c));
    REQUIRE((s != Cyclotomic(Rational(0))) == hit);
  }
}
