#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "classex/classes.hpp"
#include "classex/common.hpp"
#include "classex/cyclotomic.hpp"

namespace classex {

/// Character table ingested from JSON and validated by exact orthogonality.
/// Tables are data; they are never computed here.
class CharacterTable {
 public:
  struct ClassMeta {
    std::string name;
    std::uint64_t size;
    std::uint64_t order;
    std::size_t inverse;
    std::map<std::uint64_t, std::size_t> powermap;  // prime -> class index
  };

  static CharacterTable load(const nlohmann::json& doc) {
    CharacterTable t;
    try {
      t.name_ = doc.at("name").get<std::string>();
      t.order_ = doc.at("order").get<std::uint64_t>();
      t.conductor_ = doc.at("conductor").get<long>();
      std::map<std::string, std::size_t> by_name;
      for (const auto& c : doc.at("classes")) {
        ClassMeta m;
        m.name = c.at("name").get<std::string>();
        m.size = c.at("size").get<std::uint64_t>();
        m.order = c.at("order").get<std::uint64_t>();
        by_name[m.name] = t.classes_.size();
        t.classes_.push_back(std::move(m));
      }
      std::size_t i = 0;
      for (const auto& c : doc.at("classes")) {
        t.classes_[i].inverse = by_name.at(c.at("inverse").get<std::string>());
        for (const auto& [p, target] : c.at("powermap").items())
          t.classes_[i].powermap[std::stoull(p)] =
              by_name.at(target.get<std::string>());
        ++i;
      }
      for (const auto& row : doc.at("irreducibles")) {
        std::vector<Cyclotomic> r;
        for (const auto& v : row) r.push_back(parse_value(v));
        t.values_.push_back(std::move(r));
      }
    } catch (const nlohmann::json::exception& e) {
      throw schema_error(std::string("character table schema: ") + e.what());
    }
    t.validate();
    return t;
  }

  static CharacterTable load_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw error("cannot open character table file: " + path);
    nlohmann::json doc;
    f >> doc;
    return load(doc);
  }

  const std::string& name() const { return name_; }
  std::uint64_t order() const { return order_; }
  long conductor() const { return conductor_; }
  std::size_t num_classes() const { return classes_.size(); }
  const ClassMeta& cls(std::size_t i) const { return classes_[i]; }
  const Cyclotomic& value(std::size_t chi, std::size_t c) const {
    return values_[chi][c];
  }
  std::uint64_t degree(std::size_t chi) const {
    return static_cast<std::uint64_t>(
        numerator(values_[chi][0].rational_value()));
  }

  std::optional<std::size_t> class_by_name(const std::string& n) const {
    for (std::size_t i = 0; i < classes_.size(); ++i)
      if (classes_[i].name == n) return i;
    return std::nullopt;
  }

  /// Number of pairs (x, y) in C_i x C_j with x*y = z for fixed z in C_k:
  /// (|C_i||C_j|/|G|) sum_chi chi(i)chi(j)conj(chi(k))/chi(1). Always a
  /// non-negative rational integer.
  BigInt class_mult_coefficient(std::size_t i, std::size_t j,
                                std::size_t k) const {
    check_index(i);
    check_index(j);
    check_index(k);
    Cyclotomic s;
    for (std::size_t chi = 0; chi < values_.size(); ++chi) {
      Cyclotomic term = values_[chi][i] * values_[chi][j] *
                        values_[chi][k].complex_conjugate();
      s += term * Cyclotomic(Rational(1, BigInt(degree(chi))));
    }
    if (!s.is_rational())
      throw error("class multiplication sum is not rational");
    Rational c = s.rational_value() *
                 Rational(BigInt(classes_[i].size) * BigInt(classes_[j].size),
                          BigInt(order_));
    if (denominator(c) != 1 || c < 0)
      throw error("class multiplication coefficient is not a non-negative integer: " +
                  c.str());
    return numerator(c);
  }

  bool class_mult_nonempty(std::size_t i, std::size_t j, std::size_t k) const {
    return class_mult_coefficient(i, j, k) > 0;
  }

  /// True iff C_a * C_b equals the single class C_c, by the character
  /// criterion: chi(a)chi(b) = chi(c)chi(1) for every irreducible chi.
  bool hj_test(std::size_t a, std::size_t b, std::size_t c) const {
    check_index(a);
    check_index(b);
    check_index(c);
    if (classes_[a].order == 1 || classes_[b].order == 1 ||
        classes_[c].order == 1)
      throw error("hj_test expects nontrivial classes");
    for (std::size_t chi = 0; chi < values_.size(); ++chi) {
      Cyclotomic lhs = values_[chi][a] * values_[chi][b];
      Cyclotomic rhs = values_[chi][c] * values_[chi][0];
      if (lhs != rhs) return false;
    }
    return true;
  }

  /// sum_chi chi(x)^2 conj(chi(t)) / chi(1); nonzero iff the class of t
  /// meets the square of the class of x.
  Cyclotomic coset_square_sum(std::size_t x_class,
                              std::size_t target_class) const {
    check_index(x_class);
    check_index(target_class);
    Cyclotomic s;
    for (std::size_t chi = 0; chi < values_.size(); ++chi) {
      Cyclotomic term = values_[chi][x_class] * values_[chi][x_class] *
                        values_[chi][target_class].complex_conjugate();
      s += term * Cyclotomic(Rational(1, BigInt(degree(chi))));
    }
    return s;
  }

 private:
  static Cyclotomic parse_value(const nlohmann::json& v) {
    if (v.is_number_integer())
      return Cyclotomic(Rational(v.get<long long>()));
    if (v.is_string()) return Cyclotomic(parse_rational(v.get<std::string>()));
    if (v.is_object()) {
      long n = v.at("zeta").get<long>();
      Cyclotomic acc;
      for (const auto& term : v.at("terms")) {
        long e = term.at(0).get<long>();
        Rational c = term.at(1).is_string()
                         ? parse_rational(term.at(1).get<std::string>())
                         : Rational(term.at(1).get<long long>());
        acc += Cyclotomic(c) * Cyclotomic::root_of_unity(n, e);
      }
      return acc;
    }
    throw schema_error("unrecognized character value encoding");
  }

  static Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  }

  void check_index(std::size_t i) const {
    if (i >= classes_.size()) throw error("class index out of range");
  }

  void validate() const {
    std::size_t k = classes_.size();
    if (values_.size() != k)
      throw schema_error("table is not square: " + std::to_string(values_.size()) +
                         " characters for " + std::to_string(k) + " classes");
    for (const auto& row : values_)
      if (row.size() != k) throw schema_error("short character row");
    if (classes_.empty() || classes_[0].order != 1)
      throw schema_error("first class must be the identity class");

    BigInt size_sum = 0;
    for (const auto& c : classes_) size_sum += BigInt(c.size);
    if (size_sum != BigInt(order_))
      throw schema_error("class sizes do not sum to the group order");
    for (const auto& c : classes_)
      if (order_ % c.size != 0)
        throw schema_error("class size does not divide the group order");

    BigInt deg_sq = 0;
    for (std::size_t chi = 0; chi < k; ++chi) {
      const Cyclotomic& d = values_[chi][0];
      if (!d.is_rational() || denominator(d.rational_value()) != 1 ||
          d.rational_value() <= 0)
        throw schema_error("character degree is not a positive integer");
      BigInt dz = numerator(d.rational_value());
      if (BigInt(order_) % dz != 0)
        throw schema_error("character degree does not divide the group order");
      deg_sq += dz * dz;
    }
    if (deg_sq != BigInt(order_))
      throw schema_error("sum of squared degrees != group order");

    // power map consistency: |rep^p| = order / gcd(order, p)
    for (const auto& c : classes_) {
      for (const auto& [p, tgt] : c.powermap) {
        std::uint64_t expect = c.order / std::gcd(c.order, p);
        if (classes_[tgt].order != expect)
          throw schema_error("power map order inconsistency at class " + c.name);
      }
      if (classes_[c.inverse].size != c.size ||
          classes_[c.inverse].order != c.order)
        throw schema_error("inverse class mismatch at " + c.name);
    }

    // row orthogonality (exact)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i; j < k; ++j) {
        Cyclotomic s;
        for (std::size_t c = 0; c < k; ++c)
          s += Cyclotomic(Rational(BigInt(classes_[c].size))) * values_[i][c] *
               values_[j][c].complex_conjugate();
        Cyclotomic want(i == j ? Rational(BigInt(order_)) : Rational(0));
        if (s != want)
          throw schema_error("row orthogonality fails for characters " +
                             std::to_string(i) + "," + std::to_string(j));
      }

    // column orthogonality (exact)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a; b < k; ++b) {
        Cyclotomic s;
        for (std::size_t chi = 0; chi < k; ++chi)
          s += values_[chi][a] * values_[chi][b].complex_conjugate();
        Cyclotomic want(a == b ? Rational(BigInt(order_), BigInt(classes_[a].size))
                               : Rational(0));
        if (s != want)
          throw schema_error("column orthogonality fails for classes " +
                             classes_[a].name + "," + classes_[b].name);
      }

    // complex conjugation permutes the rows
    for (std::size_t chi = 0; chi < k; ++chi) {
      bool found = false;
      for (std::size_t psi = 0; psi < k && !found; ++psi) {
        bool eq = true;
        for (std::size_t c = 0; c < k && eq; ++c)
          eq = values_[chi][c].complex_conjugate() == values_[psi][c];
        found = eq;
      }
      if (!found)
        throw schema_error("conjugate of character row " + std::to_string(chi) +
                           " is not a row of the table");
    }
  }

  std::string name_;
  std::uint64_t order_ = 0;
  long conductor_ = 1;
  std::vector<ClassMeta> classes_;
  std::vector<std::vector<Cyclotomic>> values_;
};

/// Bijection table class -> partition class matching (element order, size,
/// power maps, inverse map); when several equivariant bijections exist they
/// are screened against brute-force structure constants, and survivors are
/// interchangeable for every quantity computed here (they differ by a table
/// automorphism). Throws alignment_error if none survives.
template <class P>
class TableAlignment {
 public:
  TableAlignment(const CharacterTable& t, const ClassPartition<P>& part)
      : table_(&t), part_(&part) {
    if (BigInt(t.order()) != part.group().order())
      throw alignment_error("table/group order mismatch");
    if (t.num_classes() != part.num_classes())
      throw alignment_error("class count mismatch");
    align();
  }

  /// partition class index for table class i
  std::size_t to_partition(std::size_t i) const { return t2p_[i]; }
  /// table class index for partition class c
  std::size_t to_table(std::size_t c) const { return p2t_[c]; }

 private:
  void align() {
    std::size_t k = table_->num_classes();
    // candidate partition classes per table class, by (order, size)
    std::vector<std::vector<std::size_t>> cand(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t c = 0; c < k; ++c)
        if (table_->cls(i).order == part_->info(c).element_order &&
            table_->cls(i).size == part_->info(c).size)
          cand[i].push_back(c);
      if (cand[i].empty())
        throw alignment_error("no partition class matches table class " +
                              table_->cls(i).name);
    }
    std::vector<std::size_t> assign(k, SIZE_MAX);
    std::vector<bool> used(k, false);
    if (!search(0, cand, assign, used))
      throw alignment_error(
          "no power-map-equivariant, constant-consistent assignment found");
  }

  bool search(std::size_t i, const std::vector<std::vector<std::size_t>>& cand,
              std::vector<std::size_t>& assign, std::vector<bool>& used) {
    std::size_t k = table_->num_classes();
    if (i == k) {
      if (!constants_consistent(assign)) return false;
      t2p_ = assign;
      p2t_.assign(k, 0);
      for (std::size_t x = 0; x < k; ++x) p2t_[assign[x]] = x;
      return true;
    }
    for (std::size_t c : cand[i]) {
      if (used[c]) continue;
      if (!compatible(i, c, assign)) continue;
      assign[i] = c;
      used[c] = true;
      if (search(i + 1, cand, assign, used)) return true;
      assign[i] = SIZE_MAX;
      used[c] = false;
    }
    return false;
  }

  bool compatible(std::size_t i, std::size_t c,
                  const std::vector<std::size_t>& assign) const {
    // power maps must commute with the partial assignment
    for (const auto& [p, ti] : table_->cls(i).powermap) {
      std::size_t pc = part_->power_class(c, p);
      if (ti == i) {
        if (pc != c) return false;
      } else if (assign[ti] != SIZE_MAX && assign[ti] != pc) {
        return false;
      }
    }
    // inverse map
    std::size_t inv_t = table_->cls(i).inverse;
    std::size_t inv_p = part_->info(c).inverse_class;
    if (inv_t == i) {
      if (inv_p != c) return false;
    } else if (assign[inv_t] != SIZE_MAX && assign[inv_t] != inv_p) {
      return false;
    }
    return true;
  }

  bool constants_consistent(const std::vector<std::size_t>& assign) const {
    // spot-check the character structure constants against brute-force
    // fixed-representative counts for triples within ambiguous buckets
    std::size_t k = table_->num_classes();
    std::vector<bool> ambiguous(k, false);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i != j && table_->cls(i).order == table_->cls(j).order &&
            table_->cls(i).size == table_->cls(j).size)
          ambiguous[i] = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (!ambiguous[i]) continue;
      for (std::size_t j = 0; j < k; ++j) {
        // count products rep_i * d for d in class j landing in each class
        std::vector<BigInt> counts(k, 0);
        Perm<P> ci = part_->representative(assign[i]);
        for (std::uint32_t idx : part_->members(assign[j]))
          counts[part_->class_of_index(
              part_->table().index_of(ci * part_->table().perm(idx)))] += 1;
        // fixed-z pair count relates to fixed-representative counts by
        // a_ijk * |C_k| = counts_k * |C_i|
        for (std::size_t kk = 0; kk < k; ++kk) {
          BigInt lhs = table_->class_mult_coefficient(i, j, p2t_safe(assign, kk)) *
                       BigInt(part_->info(kk).size);
          BigInt rhs = counts[kk] * BigInt(part_->info(assign[i]).size);
          if (lhs != rhs) return false;
        }
        if (k > 12) break;  // one row of triples is plenty for big tables
      }
    }
    return true;
  }

  static std::size_t p2t_safe(const std::vector<std::size_t>& assign,
                              std::size_t part_class) {
    for (std::size_t i = 0; i < assign.size(); ++i)
      if (assign[i] == part_class) return i;
    throw alignment_error("incomplete assignment");
  }

  const CharacterTable* table_;
  const ClassPartition<P>* part_;
  std::vector<std::size_t> t2p_, p2t_;
};

/// Verifies |G| chi(a) chi(b) = chi(1) sum_{c in G} chi(a b^c) exactly for
/// every irreducible and every class pair, expanding the inner sum via the
/// enumeration backend: sum_c chi(a b^c) = |C_G(b)| sum_{d in b^G} chi(ab d).
template <class P>
bool character_product_identity_check(const CharacterTable& t,
                         const ClassPartition<P>& part) {
  TableAlignment<P> al(t, part);
  std::size_t k = t.num_classes();
  for (std::size_t a = 0; a < k; ++a) {
    Perm<P> ra = part.representative(al.to_partition(a));
    for (std::size_t b = 0; b < k; ++b) {
      // multiset of classes of ra * d over d in class b
      std::vector<std::uint64_t> counts(k, 0);
      for (std::uint32_t idx : part.members(al.to_partition(b)))
        counts[al.to_table(part.class_of_index(
            part.table().index_of(ra * part.table().perm(idx))))]++;
      std::uint64_t cent = t.order() / t.cls(b).size;
      for (std::size_t chi = 0; chi < k; ++chi) {
        Cyclotomic lhs = Cyclotomic(Rational(BigInt(t.order()))) *
                         t.value(chi, a) * t.value(chi, b);
        Cyclotomic inner;
        for (std::size_t c = 0; c < k; ++c) {
          if (!counts[c]) continue;
          inner += Cyclotomic(Rational(BigInt(counts[c]) * BigInt(cent))) *
                   t.value(chi, c);
        }
        Cyclotomic rhs = t.value(chi, 0) * inner;
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

}  // namespace classex
