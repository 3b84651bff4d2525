#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "classex/checks.hpp"
#include "classex/classes.hpp"
#include "classex/constructions.hpp"

namespace classex {

/// Conjugacy bookkeeping for W = H wr C_n with n prime, exploiting the
/// imprimitive block structure. Elements with a full top cycle are classified
/// by (top power, H-class of the cycle product); top-trivial elements by the
/// necklace of componentwise H-classes. Both are complete invariants, so no
/// element tabulation of W is ever needed.
template <class P>
class WreathClassifier {
 public:
  WreathClassifier(const Group<P>& h, std::size_t n)
      : h_(&h), n_(n), ws_{h.degree(), n}, part_(h) {}

  const ClassPartition<P>& base_partition() const { return part_; }
  const WreathStructure<P>& structure() const { return ws_; }
  std::size_t top_power(const Perm<P>& g) const { return ws_.block_of(g[0]); }

  struct Label {
    std::size_t top;                  // 0 for base elements
    std::vector<std::uint32_t> data;  // [cycle product class] or necklace
    bool operator==(const Label& o) const {
      return top == o.top && data == o.data;
    }
    bool operator<(const Label& o) const {
      return top != o.top ? top < o.top : data < o.data;
    }
    std::string str(const ClassPartition<P>& part) const {
      std::string s = "top^" + std::to_string(top) + ":[";
      for (std::size_t i = 0; i < data.size(); ++i)
        s += part.name(data[i]) + (i + 1 < data.size() ? "," : "");
      return s + "]";
    }
  };

  Label classify(const Perm<P>& g) const {
    std::size_t k = top_power(g);
    if (k != 0) {
      // cycle product: component at block 0 of g^n
      Perm<P> gn = g.power(static_cast<long long>(n_));
      Perm<P> p = ws_.component(gn, 0);
      return {k, {part_.class_of(p)}};
    }
    std::vector<std::uint32_t> labels(n_);
    for (std::size_t b = 0; b < n_; ++b)
      labels[b] = part_.class_of(ws_.component(g, b));
    return {0, canonical_necklace(labels)};
  }

  static std::vector<std::uint32_t> canonical_necklace(
      std::vector<std::uint32_t> v) {
    std::vector<std::uint32_t> best = v;
    for (std::size_t r = 1; r < v.size(); ++r) {
      std::rotate(v.begin(), v.begin() + 1, v.end());
      if (v < best) best = v;
    }
    return best;
  }

  /// Label of g^t computed without constructing g^t, valid when g has a full
  /// top cycle of known label.
  Label power_label(const Label& l, std::uint64_t t) const {
    if (l.top != 0) {
      std::size_t newtop = (l.top * t) % n_;
      if (newtop == 0) throw error("power lands in the base subgroup");
      return {newtop, {static_cast<std::uint32_t>(
                           part_.power_class(l.data[0], t))}};
    }
    std::vector<std::uint32_t> labels(l.data.size());
    for (std::size_t i = 0; i < l.data.size(); ++i)
      labels[i] =
          static_cast<std::uint32_t>(part_.power_class(l.data[i], t));
    return {0, canonical_necklace(labels)};
  }

  /// Representative element with the given label.
  Perm<P> representative(const Label& l) const {
    if (l.top != 0) {
      // solve h0 * 1 * ... = q around the cycle: embed q at block 0
      return ws_.embed(part_.representative(l.data[0]), 0) *
             ws_.top_cycle().power(static_cast<long long>(l.top));
    }
    std::vector<Perm<P>> hs;
    for (std::uint32_t c : l.data) hs.push_back(part_.representative(c));
    return ws_.base_tuple(hs);
  }

  std::uint64_t element_order_of_label(const Label& l) const {
    return representative(l).order();
  }

  /// Streams every element of the class with full-cycle label (top k, class
  /// q): tuples (h_0, ..., h_{n-1}) with cycle product h_0 h_k h_{2k}... in
  /// class q, times top^k. Calls fn for each; fn returns false to abort.
  template <class Fn>
  bool stream_full_cycle_class(const Label& l, Fn&& fn) const {
    std::size_t k = l.top;
    Perm<P> top_k = ws_.top_cycle().power(static_cast<long long>(k));
    // free choice at blocks k, 2k, ..., (n-1)k (mod n); block 0 solves the
    // cycle product
    std::vector<std::size_t> free_blocks;
    for (std::size_t i = 1; i < n_; ++i) free_blocks.push_back(i * k % n_);
    const auto& tbl = part_.table();
    std::uint64_t hsize = h_->order_u64();
    std::vector<std::uint64_t> idx(free_blocks.size(), 0);
    std::vector<Perm<P>> hs(n_, Perm<P>::identity(h_->degree()));
    const auto& members = part_.members(l.data[0]);
    for (;;) {
      // product h_k h_{2k} ... h_{(n-1)k} (cycle order after h_0)
      Perm<P> tail = Perm<P>::identity(h_->degree());
      for (std::size_t i = 0; i < free_blocks.size(); ++i)
        tail = tail * tbl.perm(idx[i]);
      for (std::uint32_t qi : members) {
        // h_0 = q * tail^{-1}
        hs[0] = tbl.perm(qi) * tail.inverse();
        for (std::size_t i = 0; i < free_blocks.size(); ++i)
          hs[free_blocks[i]] = tbl.perm(idx[i]);
        if (!fn(ws_.base_tuple(hs) * top_k)) return false;
      }
      // odometer over the free blocks
      std::size_t lev = 0;
      while (lev < idx.size()) {
        if (++idx[lev] < hsize) break;
        idx[lev] = 0;
        ++lev;
      }
      if (lev == idx.size()) break;
    }
    return true;
  }

  /// Streams the class of a top-trivial label: componentwise class members
  /// over each distinct rotation of the necklace.
  template <class Fn>
  bool stream_base_class(const Label& l, Fn&& fn) const {
    std::set<std::vector<std::uint32_t>> rotations;
    std::vector<std::uint32_t> v = l.data;
    for (std::size_t r = 0; r < n_; ++r) {
      rotations.insert(v);
      std::rotate(v.begin(), v.begin() + 1, v.end());
    }
    const auto& tbl = part_.table();
    for (const auto& rot : rotations) {
      std::vector<std::uint64_t> idx(n_, 0);
      std::vector<Perm<P>> hs(n_, Perm<P>::identity(h_->degree()));
      for (;;) {
        for (std::size_t b = 0; b < n_; ++b)
          hs[b] = tbl.perm(part_.members(rot[b])[idx[b]]);
        if (!fn(ws_.base_tuple(hs))) return false;
        std::size_t lev = 0;
        while (lev < n_) {
          if (++idx[lev] < part_.members(rot[lev]).size()) break;
          idx[lev] = 0;
          ++lev;
        }
        if (lev == n_) break;
      }
    }
    return true;
  }

  std::uint64_t class_size(const Label& l) const {
    if (l.top != 0) {
      // |H|^{n-1} free coordinates times the size of the cycle-product class
      std::uint64_t free = 1;
      for (std::size_t i = 1; i < n_; ++i) free *= h_->order_u64();
      return free * part_.info(l.data[0]).size;
    }
    std::set<std::vector<std::uint32_t>> rotations;
    std::vector<std::uint32_t> v = l.data;
    for (std::size_t r = 0; r < n_; ++r) {
      rotations.insert(v);
      std::rotate(v.begin(), v.begin() + 1, v.end());
    }
    std::uint64_t per_rot = 1;
    for (std::uint32_t c : l.data) per_rot *= part_.info(c).size;
    return per_rot * rotations.size();
  }

 private:
  const Group<P>* h_;
  std::size_t n_;
  WreathStructure<P> ws_;
  ClassPartition<P> part_;
};

struct WreathSearchOutcome {
  CheckResult result;
  // all satisfying (I, J) label strings with span index
  std::vector<std::string> found;
};

/// Example-1.4 search: in (2 wr 3) wr 5, find classes I (order 15) and
/// J (order 3) with K = I u J satisfying K^2 inside D_K; report the span
/// index. product_budget caps the number of classified products; exceeding
/// it yields an inconclusive skip rather than a fail.
template <class P>
WreathSearchOutcome wreath_order15_search(std::uint64_t product_budget) {
  WreathSearchOutcome out;
  CheckResult& res = out.result;
  res = CheckResult::fail("wreath-order15-search");
  auto h = build_spec<P>("wreath(cyclic:2,3)");  // 2 wr 3, order 24
  const std::size_t n = 5;
  auto [w, ws] = wreath_cyclic<P>(h, n);
  WreathClassifier<P> cls(h, n);
  const auto& hp = cls.base_partition();
  using Label = typename WreathClassifier<P>::Label;

  // candidate I: top k in 1..4, cycle product of H-order 3
  std::vector<Label> cand_i;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t c = 0; c < hp.num_classes(); ++c)
      if (hp.info(c).element_order == 3)
        cand_i.push_back({k, {static_cast<std::uint32_t>(c)}});
  // candidate J: necklaces over classes of order dividing 3, not all trivial
  std::vector<Label> cand_j;
  {
    std::vector<std::uint32_t> small;
    for (std::size_t c = 0; c < hp.num_classes(); ++c)
      if (hp.info(c).element_order == 1 || hp.info(c).element_order == 3)
        small.push_back(static_cast<std::uint32_t>(c));
    std::set<std::vector<std::uint32_t>> seen;
    std::vector<std::uint32_t> tup(n, 0);
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      for (std::size_t b = 0; b < n; ++b) tup[b] = small[idx[b]];
      auto canon = WreathClassifier<P>::canonical_necklace(tup);
      bool nontrivial = false;
      for (std::uint32_t c : canon)
        if (hp.info(c).element_order != 1) nontrivial = true;
      if (nontrivial && seen.insert(canon).second) cand_j.push_back({0, canon});
      std::size_t lev = 0;
      while (lev < n) {
        if (++idx[lev] < small.size()) break;
        idx[lev] = 0;
        ++lev;
      }
      if (lev == n) break;
    }
  }

  std::uint64_t products_used = 0;
  bool budget_hit = false;

  auto units = [](std::uint64_t m) {
    std::vector<std::uint64_t> u;
    for (std::uint64_t t = 1; t < m; ++t)
      if (std::gcd(t, m) == 1) u.push_back(t);
    return u;
  };

  for (const Label& li : cand_i) {
    if (cls.element_order_of_label(li) != 15) continue;
    for (const Label& lj : cand_j) {
      if (cls.element_order_of_label(lj) != 3) continue;
      // D_K labels
      std::set<Label> dk;
      for (std::uint64_t t : units(15)) dk.insert(cls.power_label(li, t));
      for (std::uint64_t t : units(3)) dk.insert(cls.power_label(lj, t));
      Perm<P> irep = cls.representative(li);
      Perm<P> jrep = cls.representative(lj);
      bool ok = true;
      auto check_product = [&](const Perm<P>& c0, const Perm<P>& d) {
        ++products_used;
        if (products_used > product_budget) {
          budget_hit = true;
          return false;
        }
        Perm<P> y = c0 * d;
        std::uint64_t o = y.order();
        if (o != 3 && o != 15) {
          ok = false;
          return false;
        }
        if (!dk.count(cls.classify(y))) {
          ok = false;
          return false;
        }
        return true;
      };
      // K^2: products c0 * d for c0 in {irep, jrep}, d over both classes
      for (const Perm<P>* c0 : {&irep, &jrep}) {
        if (ok && !budget_hit)
          cls.stream_full_cycle_class(
              li, [&](const Perm<P>& d) { return check_product(*c0, d); });
        if (ok && !budget_hit)
          cls.stream_base_class(
              lj, [&](const Perm<P>& d) { return check_product(*c0, d); });
        if (!ok || budget_hit) break;
      }
      if (budget_hit) {
        res = CheckResult::skip(res.id,
                                "product budget exhausted: inconclusive");
        res.with("products_used", std::to_string(products_used));
        return out;
      }
      if (!ok) continue;
      // satisfying pair: span and index
      Group<P> span = normal_closure(w, {irep, jrep});
      BigInt index = w.order() / span.order();
      std::string desc = "I=" + li.str(hp) + " J=" + lj.str(hp) +
                         " index=" + index.str();
      out.found.push_back(desc);
      if (index == 2) {
        res.status = CheckStatus::Pass;
        res.with("I", li.str(hp))
            .with("J", lj.str(hp))
            .with("span_order", span.order().str())
            .with("index", index.str())
            .with("products_checked", std::to_string(products_used));
        return out;
      }
    }
  }
  res.with("note", "no satisfying pair with span of index 2")
      .with("products_checked", std::to_string(products_used));
  return out;
}

}  // namespace classex
