#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "classex/common.hpp"
#include "classex/group.hpp"
#include "classex/perm.hpp"

namespace classex {

/// Contiguous store of enumerated group elements with a byte-key index.
template <class P>
class ElementTable {
 public:
  explicit ElementTable(const Group<P>& g,
                        std::uint64_t map_limit = kClassMapLimit) {
    if (g.order() > map_limit)
      throw cap_exceeded("element table: group order " + g.order().str() +
                         " exceeds materialization limit " +
                         std::to_string(map_limit));
    degree_ = g.degree();
    n_ = g.order_u64();
    data_.reserve(n_ * degree_);
    index_.reserve(n_ * 2);
    auto stream = g.elements(map_limit);
    Perm<P> e;
    while (stream.next(e)) {
      const P* raw = e.data();
      data_.insert(data_.end(), raw, raw + degree_);
    }
    for (std::uint64_t i = 0; i < n_; ++i) index_.emplace(key(i), i);
  }

  std::size_t degree() const { return degree_; }
  std::uint64_t size() const { return n_; }

  const P* row(std::uint64_t i) const { return data_.data() + i * degree_; }

  Perm<P> perm(std::uint64_t i) const {
    return Perm<P>(std::vector<P>(row(i), row(i) + degree_));
  }

  std::uint64_t index_of(const Perm<P>& p) const {
    auto it = index_.find(std::string_view(
        reinterpret_cast<const char*>(p.data()), degree_ * sizeof(P)));
    if (it == index_.end()) throw error("element not in table");
    return it->second;
  }

  std::optional<std::uint64_t> find(const Perm<P>& p) const {
    auto it = index_.find(std::string_view(
        reinterpret_cast<const char*>(p.data()), degree_ * sizeof(P)));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::string_view key(std::uint64_t i) const {
    return std::string_view(reinterpret_cast<const char*>(row(i)),
                            degree_ * sizeof(P));
  }

  std::size_t degree_ = 0;
  std::uint64_t n_ = 0;
  std::vector<P> data_;
  std::unordered_map<std::string_view, std::uint64_t> index_;
};

/// Conjugacy classes of an enumerable group. Representatives are the
/// enumeration-first elements of their classes; class names are
/// "{order}{letter}" by ascending element order, then size, then first-seen.
template <class P>
class ClassPartition {
 public:
  struct ClassInfo {
    std::uint64_t rep;            // element-table index of representative
    std::uint64_t size;
    std::uint64_t element_order;
    std::uint32_t inverse_class;
    std::string name;
  };

  explicit ClassPartition(const Group<P>& g,
                          std::uint64_t map_limit = kClassMapLimit)
      : group_(&g), table_(g, map_limit) {
    build();
  }

  const Group<P>& group() const { return *group_; }
  const ElementTable<P>& table() const { return table_; }
  std::size_t num_classes() const { return classes_.size(); }
  const ClassInfo& info(std::size_t c) const { return classes_[c]; }
  const std::string& name(std::size_t c) const { return classes_[c].name; }
  std::uint64_t exponent() const { return exponent_; }

  Perm<P> representative(std::size_t c) const {
    return table_.perm(classes_[c].rep);
  }

  std::uint32_t class_of_index(std::uint64_t i) const { return class_of_[i]; }

  std::uint32_t class_of(const Perm<P>& p) const {
    return class_of_[table_.index_of(p)];
  }

  std::optional<std::size_t> class_by_name(const std::string& n) const {
    for (std::size_t c = 0; c < classes_.size(); ++c)
      if (classes_[c].name == n) return c;
    return std::nullopt;
  }

  /// Member element-table indices of class c.
  const std::vector<std::uint32_t>& members(std::size_t c) const {
    return members_[c];
  }

  /// Class of rep^t.
  std::uint32_t power_class(std::size_t c, std::uint64_t t) const {
    return class_of(representative(c).power(static_cast<long long>(
        t % classes_[c].element_order)));
  }

  const std::vector<std::uint32_t>& power_map(std::uint64_t prime) const {
    auto it = power_maps_.find(prime);
    if (it == power_maps_.end()) throw error("no power map for that prime");
    return it->second;
  }

  const std::map<std::uint64_t, std::vector<std::uint32_t>>& power_maps()
      const {
    return power_maps_;
  }

 private:
  void build() {
    const std::uint64_t n = table_.size();
    class_of_.assign(n, UINT32_MAX);
    std::vector<Perm<P>> gens = group_->generators();
    std::vector<Perm<P>> gen_invs;
    for (const auto& g : gens) gen_invs.push_back(g.inverse());

    std::vector<std::uint64_t> reps;
    std::vector<std::uint64_t> sizes;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (class_of_[i] != UINT32_MAX) continue;
      auto ci = static_cast<std::uint32_t>(reps.size());
      reps.push_back(i);
      class_of_[i] = ci;
      std::vector<std::uint64_t> work = {i};
      std::uint64_t count = 1;
      while (!work.empty()) {
        std::uint64_t j = work.back();
        work.pop_back();
        Perm<P> ej = table_.perm(j);
        for (std::size_t s = 0; s < gens.size(); ++s) {
          Perm<P> c = gen_invs[s] * ej * gens[s];
          std::uint64_t k = table_.index_of(c);
          if (class_of_[k] == UINT32_MAX) {
            class_of_[k] = ci;
            ++count;
            work.push_back(k);
          }
        }
      }
      sizes.push_back(count);
    }

    // canonical ordering: ascending (element order, size, first-seen rep)
    std::size_t kk = reps.size();
    std::vector<std::uint64_t> orders(kk);
    for (std::size_t c = 0; c < kk; ++c) orders[c] = table_.perm(reps[c]).order();
    std::vector<std::uint32_t> idx(kk);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (orders[a] != orders[b]) return orders[a] < orders[b];
      if (sizes[a] != sizes[b]) return sizes[a] < sizes[b];
      return reps[a] < reps[b];
    });
    std::vector<std::uint32_t> remap(kk);
    for (std::uint32_t nw = 0; nw < kk; ++nw) remap[idx[nw]] = nw;
    classes_.resize(kk);
    for (std::size_t old = 0; old < kk; ++old) {
      ClassInfo& ci = classes_[remap[old]];
      ci.rep = reps[old];
      ci.size = sizes[old];
      ci.element_order = orders[old];
    }
    for (std::uint64_t i = 0; i < n; ++i) class_of_[i] = remap[class_of_[i]];

    // names
    std::map<std::uint64_t, std::uint32_t> seen_order;
    for (std::size_t c = 0; c < kk; ++c) {
      std::uint64_t o = classes_[c].element_order;
      std::uint32_t k2 = seen_order[o]++;
      std::string suffix;
      std::uint32_t v = k2;
      while (true) {
        suffix.insert(suffix.begin(), static_cast<char>('A' + v % 26));
        if (v < 26) break;
        v = v / 26 - 1;
      }
      classes_[c].name = std::to_string(o) + suffix;
    }

    // member lists
    members_.assign(kk, {});
    for (std::size_t c = 0; c < kk; ++c) members_[c].reserve(classes_[c].size);
    for (std::uint64_t i = 0; i < n; ++i)
      members_[class_of_[i]].push_back(static_cast<std::uint32_t>(i));

    // exponent, inverse classes, prime power maps
    exponent_ = 1;
    for (const auto& c : classes_) exponent_ = lcm_u64(exponent_, c.element_order);
    for (std::size_t c = 0; c < kk; ++c) {
      Perm<P> r = representative(c);
      classes_[c].inverse_class = class_of(r.inverse());
    }
    std::uint64_t e = exponent_;
    for (std::uint64_t p = 2; p <= e; ++p) {
      if (e % p != 0) continue;
      while (e % p == 0) e /= p;
      std::vector<std::uint32_t> pm(kk);
      for (std::size_t c = 0; c < kk; ++c)
        pm[c] = class_of(representative(c).power(static_cast<long long>(p)));
      power_maps_.emplace(p, std::move(pm));
    }
  }

  const Group<P>* group_;
  ElementTable<P> table_;
  std::vector<std::uint32_t> class_of_;
  std::vector<ClassInfo> classes_;
  std::vector<std::vector<std::uint32_t>> members_;
  std::map<std::uint64_t, std::vector<std::uint32_t>> power_maps_;
  std::uint64_t exponent_ = 1;
};

/// Union of whole conjugacy classes, as a mask over class indices.
template <class P>
class NormalSubset {
 public:
  explicit NormalSubset(const ClassPartition<P>& part)
      : part_(&part), mask_(part.num_classes(), false) {}

  NormalSubset(const ClassPartition<P>& part, std::vector<bool> mask)
      : part_(&part), mask_(std::move(mask)) {}

  const ClassPartition<P>& partition() const { return *part_; }
  const std::vector<bool>& mask() const { return mask_; }
  bool contains_class(std::size_t c) const { return mask_[c]; }
  void add_class(std::size_t c) { mask_[c] = true; }

  std::uint64_t element_count() const {
    std::uint64_t n = 0;
    for (std::size_t c = 0; c < mask_.size(); ++c)
      if (mask_[c]) n += part_->info(c).size;
    return n;
  }

  bool subset_of(const NormalSubset& other) const {
    for (std::size_t c = 0; c < mask_.size(); ++c)
      if (mask_[c] && !other.mask_[c]) return false;
    return true;
  }

  bool empty() const {
    for (bool b : mask_)
      if (b) return false;
    return true;
  }

  std::vector<std::size_t> class_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < mask_.size(); ++c)
      if (mask_[c]) out.push_back(c);
    return out;
  }

  std::vector<std::string> class_names() const {
    std::vector<std::string> out;
    for (std::size_t c : class_indices()) out.push_back(part_->name(c));
    return out;
  }

  friend bool operator==(const NormalSubset& a, const NormalSubset& b) {
    return a.mask_ == b.mask_;
  }

 private:
  const ClassPartition<P>* part_;
  std::vector<bool> mask_;
};

/// D_K: all y with <y> = <x> for some x in K. Computed as the union of the
/// classes of rep^t over t coprime to the representative order.
template <class P>
NormalSubset<P> rational_closure(const ClassPartition<P>& part,
                                 const NormalSubset<P>& k) {
  NormalSubset<P> out(part);
  for (std::size_t c : k.class_indices()) {
    Perm<P> r = part.representative(c);
    std::uint64_t o = part.info(c).element_order;
    for (std::uint64_t t = 1; t <= o; ++t) {
      if (std::gcd(t, o) != 1) continue;
      out.add_class(part.class_of(r.power(static_cast<long long>(t))));
    }
  }
  return out;
}

/// Classes meeting {c*d : d in D} for one fixed representative c per class
/// of K; valid because every product m*n with m in C is conjugate to one of
/// this form.
template <class P>
NormalSubset<P> normal_set_product(const ClassPartition<P>& part,
                                   const NormalSubset<P>& k,
                                   const NormalSubset<P>& l) {
  NormalSubset<P> out(part);
  const auto& tbl = part.table();
  for (std::size_t ci : k.class_indices()) {
    Perm<P> c = part.representative(ci);
    for (std::size_t di : l.class_indices()) {
      for (std::uint32_t idx : part.members(di)) {
        Perm<P> prod = c * tbl.perm(idx);
        out.add_class(part.class_of(prod));
      }
    }
  }
  return out;
}

template <class P>
struct ExpansionResult {
  bool holds;
  std::optional<std::size_t> violating_class;
};

/// Does K^2 lie inside D_K? On failure reports the first violating class of
/// the product (ascending canonical class order).
template <class P>
ExpansionResult<P> expansion_check(const ClassPartition<P>& part,
                                   const NormalSubset<P>& k) {
  NormalSubset<P> dk = rational_closure(part, k);
  NormalSubset<P> sq = normal_set_product(part, k, k);
  for (std::size_t c = 0; c < part.num_classes(); ++c)
    if (sq.contains_class(c) && !dk.contains_class(c))
      return {false, c};
  return {true, std::nullopt};
}

enum class AuditPredicate {
  Expansion,   // K^2 subset of D_K
  SquareSet,   // K^2 == {x^2 : x in K}
  PowerUnion,  // K^n == D u D^{-1} for some class D (K a single class)
  PPower,      // K of order-p elements, K^2 consists of p-elements
};

struct AuditOptions {
  AuditPredicate predicate = AuditPredicate::Expansion;
  std::uint64_t power_n = 2;   // for PowerUnion
  std::uint64_t prime_p = 3;   // for PPower
  std::size_t search_bound = 22;
};

template <class P>
struct AuditEntry {
  std::vector<std::string> classes;
  BigInt span_order;
  bool soluble;
};

template <class P>
struct AuditReport {
  std::string group;
  std::string predicate;
  std::vector<AuditEntry<P>> satisfying;
  std::vector<std::string> violations;  // non-soluble spans, if any
};

namespace detail {

inline bool is_p_power(std::uint64_t n, std::uint64_t p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace detail

/// Enumerates all unions K of odd-order classes (the identity class counts as
/// odd); for each K satisfying the predicate, computes <K> by normal closure
/// and records solubility. A non-soluble span is a falsification witness.
template <class P>
AuditReport<P> odd_subset_audit(const ClassPartition<P>& part,
                                const AuditOptions& opt = {}) {
  std::vector<std::size_t> odd;
  for (std::size_t c = 0; c < part.num_classes(); ++c)
    if (part.info(c).element_order % 2 == 1) odd.push_back(c);
  if (odd.size() > opt.search_bound)
    throw error("odd_subset_audit: " + std::to_string(odd.size()) +
                " odd classes exceed search bound " +
                std::to_string(opt.search_bound));

  std::size_t m = odd.size();
  std::size_t k = part.num_classes();
  // pairwise product masks and per-class D_K masks, computed once
  std::vector<std::vector<std::vector<bool>>> prod(m);
  std::vector<std::vector<bool>> dk1(m);
  for (std::size_t a = 0; a < m; ++a) {
    prod[a].resize(m);
    NormalSubset<P> ka(part);
    ka.add_class(odd[a]);
    dk1[a] = rational_closure(part, ka).mask();
    for (std::size_t b = 0; b < m; ++b) {
      NormalSubset<P> kb(part);
      kb.add_class(odd[b]);
      prod[a][b] = normal_set_product(part, ka, kb).mask();
    }
  }

  AuditReport<P> report;
  report.group = part.group().name();
  switch (opt.predicate) {
    case AuditPredicate::Expansion: report.predicate = "expansion"; break;
    case AuditPredicate::SquareSet: report.predicate = "square-set"; break;
    case AuditPredicate::PowerUnion:
      report.predicate = "power-union:" + std::to_string(opt.power_n);
      break;
    case AuditPredicate::PPower:
      report.predicate = "p-power:" + std::to_string(opt.prime_p);
      break;
  }

  for (std::uint64_t bits = 0; bits < (1ull << m); ++bits) {
    NormalSubset<P> kset(part);
    std::vector<bool> sq(k, false), dk(k, false);
    for (std::size_t a = 0; a < m; ++a) {
      if (!(bits >> a & 1)) continue;
      kset.add_class(odd[a]);
      for (std::size_t c = 0; c < k; ++c) dk[c] = dk[c] || dk1[a][c];
      for (std::size_t b = 0; b < m; ++b) {
        if (!(bits >> b & 1)) continue;
        for (std::size_t c = 0; c < k; ++c)
          sq[c] = sq[c] || prod[a][b][c];
      }
    }
    bool ok = false;
    switch (opt.predicate) {
      case AuditPredicate::Expansion: {
        ok = true;
        for (std::size_t c = 0; c < k && ok; ++c)
          if (sq[c] && !dk[c]) ok = false;
        break;
      }
      case AuditPredicate::SquareSet: {
        // L = classes of rep^2 over K
        std::vector<bool> l(k, false);
        for (std::size_t a = 0; a < m; ++a)
          if (bits >> a & 1)
            l[part.class_of(part.representative(odd[a]).power(2))] = true;
        ok = sq == l;
        break;
      }
      case AuditPredicate::PowerUnion: {
        // single class K with K^n = D u D^{-1}
        if (__builtin_popcountll(bits) != 1 || bits == 0) { ok = false; break; }
        NormalSubset<P> kn = kset;
        for (std::uint64_t i = 1; i < opt.power_n; ++i)
          kn = normal_set_product(part, kn, kset);
        auto cls = kn.class_indices();
        ok = false;
        for (std::size_t d : cls) {
          std::vector<bool> du(k, false);
          du[d] = true;
          du[part.info(d).inverse_class] = true;
          if (kn.mask() == du) { ok = true; break; }
        }
        break;
      }
      case AuditPredicate::PPower: {
        ok = bits != 0;
        for (std::size_t a = 0; a < m && ok; ++a)
          if (bits >> a & 1)
            if (part.info(odd[a]).element_order != opt.prime_p) ok = false;
        for (std::size_t c = 0; c < k && ok; ++c)
          if (sq[c] && !detail::is_p_power(part.info(c).element_order, opt.prime_p))
            ok = false;
        break;
      }
    }
    if (!ok) continue;
    // span
    std::vector<Perm<P>> seeds;
    for (std::size_t a = 0; a < m; ++a)
      if (bits >> a & 1) seeds.push_back(part.representative(odd[a]));
    AuditEntry<P> entry;
    if (seeds.empty()) {
      entry.span_order = 1;
      entry.soluble = true;
    } else {
      Group<P> span = normal_closure(part.group(), seeds);
      entry.span_order = span.order();
      entry.soluble = is_soluble(span);
    }
    entry.classes = kset.class_names();
    if (!entry.soluble) {
      std::string v = "non-soluble span for K = {";
      for (const auto& s : entry.classes) v += s + ",";
      v += "}";
      report.violations.push_back(v);
    }
    report.satisfying.push_back(std::move(entry));
  }
  return report;
}

template <class P>
struct ProbeResult {
  bool even_order_in_square;                 // (i)
  std::optional<std::string> even_witness;   // class name of an even-order class in C*C
  // (ii): involution class name -> witness element (cycle string), when found
  std::vector<std::pair<std::string, std::optional<std::string>>> order4_witnesses;
};

/// For an odd class C: (i) does C*C contain an even-order class; (ii) for each
/// involution class rep t, a witness d in C with |t*d| = 4, if one exists.
template <class P>
ProbeResult<P> involution_coset_probe(const ClassPartition<P>& part,
                                      std::size_t c) {
  if (part.info(c).element_order % 2 == 0)
    throw error("involution_coset_probe: class has even order");
  ProbeResult<P> res;
  res.even_order_in_square = false;
  const auto& tbl = part.table();
  Perm<P> rep = part.representative(c);
  for (std::uint32_t idx : part.members(c)) {
    Perm<P> prod = rep * tbl.perm(idx);
    if (prod.order() % 2 == 0) {
      res.even_order_in_square = true;
      res.even_witness = part.name(part.class_of(prod));
      break;
    }
  }
  for (std::size_t t = 0; t < part.num_classes(); ++t) {
    if (part.info(t).element_order != 2) continue;
    Perm<P> tt = part.representative(t);
    std::optional<std::string> witness;
    for (std::uint32_t idx : part.members(c)) {
      Perm<P> d = tbl.perm(idx);
      if ((tt * d).order() == 4) {
        witness = cycle_string(d);
        break;
      }
    }
    res.order4_witnesses.emplace_back(part.name(t), witness);
  }
  return res;
}

template <class P>
struct CosetView {
  std::vector<std::size_t> coset_classes;    // classes making up yL
  std::vector<std::size_t> square_classes;   // classes of (yL)^2
  std::vector<std::size_t> y2L_classes;      // classes inside y^2 L
  std::vector<std::size_t> dk_classes;       // D_{yL}
  std::vector<std::size_t> outside_L;        // classes not meeting L
  bool square_equals_y2L;
  bool dk_equals_complement;
};

/// For L normal in G and y in G, views the coset yL as a normal subset,
/// with its square, its rational closure, and the classes of y^2 L.
template <class P>
CosetView<P> coset_structure(const ClassPartition<P>& part, const Group<P>& l,
                             const Perm<P>& y) {
  const Group<P>& g = part.group();
  for (const auto& lg : l.generators())
    for (const auto& gg : g.generators())
      if (!l.contains(lg.conjugated_by(gg)))
        throw error("coset_structure: L is not normal in G");
  if (!g.contains(y)) throw error("coset_structure: y not in G");

  auto classes_in_coset = [&](const Perm<P>& rep) {
    // class c lies in rep*L iff rep^-1 * (class rep) in L; conjugation
    // preserves cosets of a normal subgroup with abelian quotient only, so
    // test every class by membership of one element and verify closure.
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < part.num_classes(); ++c) {
      Perm<P> x = part.representative(c);
      if (l.contains(rep.inverse() * x)) out.push_back(c);
    }
    return out;
  };

  CosetView<P> view;
  view.coset_classes = classes_in_coset(y);
  // sanity: the coset must be a union of whole classes
  std::uint64_t total = 0;
  for (std::size_t c : view.coset_classes) total += part.info(c).size;
  if (total != l.order_u64())
    throw error("coset_structure: coset is not a union of classes");

  NormalSubset<P> k(part);
  for (std::size_t c : view.coset_classes) k.add_class(c);
  NormalSubset<P> sq = normal_set_product(part, k, k);
  view.square_classes = sq.class_indices();
  view.y2L_classes = classes_in_coset(y * y);
  NormalSubset<P> dk = rational_closure(part, k);
  view.dk_classes = dk.class_indices();
  for (std::size_t c = 0; c < part.num_classes(); ++c) {
    Perm<P> x = part.representative(c);
    if (!l.contains(x)) view.outside_L.push_back(c);
  }
  view.square_equals_y2L = view.square_classes == view.y2L_classes;
  view.dk_equals_complement = view.dk_classes == view.outside_L;
  return view;
}

}  // namespace classex
