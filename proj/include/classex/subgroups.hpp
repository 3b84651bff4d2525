#pragma once

#include <cstdint>
#include <vector>

#include "classex/classes.hpp"
#include "classex/group.hpp"

namespace classex {

inline std::uint64_t p_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline bool is_prime_power_u64(std::uint64_t n, std::uint64_t p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

/// Largest normal subgroup of odd order: generated by every element whose
/// normal closure has odd order (products of odd normal subgroups stay odd).
template <class P>
Group<P> odd_core(const Group<P>& g, const ClassPartition<P>& part) {
  std::vector<Perm<P>> seeds;
  for (std::size_t c = 0; c < part.num_classes(); ++c) {
    if (part.info(c).element_order % 2 == 0) continue;
    Perm<P> r = part.representative(c);
    Group<P> n = normal_closure(g, {r});
    if (n.order() % 2 != 0) seeds.push_back(r);
  }
  if (seeds.empty()) return Group<P>({Perm<P>::identity(g.degree())}, g.degree());
  return normal_closure(g, seeds);
}

/// O_p(G): generated by every element whose normal closure is a p-group.
template <class P>
Group<P> p_core(const Group<P>& g, const ClassPartition<P>& part,
                std::uint64_t p) {
  std::vector<Perm<P>> seeds;
  for (std::size_t c = 0; c < part.num_classes(); ++c) {
    if (!is_prime_power_u64(part.info(c).element_order, p)) continue;
    if (part.info(c).element_order == 1) continue;
    Perm<P> r = part.representative(c);
    Group<P> n = normal_closure(g, {r});
    if (n.order_u64() != 0 && is_prime_power_u64(n.order_u64(), p))
      seeds.push_back(r);
  }
  if (seeds.empty()) return Group<P>({Perm<P>::identity(g.degree())}, g.degree());
  return normal_closure(g, seeds);
}

/// A Sylow p-subgroup of an enumerable group, grown greedily from p-parts of
/// streamed elements.
template <class P>
Group<P> sylow_subgroup(const Group<P>& g, std::uint64_t p,
                        std::uint64_t cap = kDefaultEnumerationCap) {
  std::uint64_t target = p_part(g.order_u64(), p);
  std::vector<Perm<P>> gens;
  StabilizerChain<P> chain(g.degree(), BaseRule::SmallestMoved);
  BigInt cur = 1;
  auto st = g.elements(cap);
  Perm<P> e;
  while (cur < target && st.next(e)) {
    std::uint64_t o = e.order();
    std::uint64_t pp = p_part(o, p);
    if (pp == 1) continue;
    Perm<P> x = e.power(static_cast<long long>(o / pp));
    if (chain.contains(x)) continue;
    // accept only if the enlarged group is still a p-group
    std::vector<Perm<P>> trial = gens;
    trial.push_back(x);
    Group<P> h(trial, g.degree());
    if (is_prime_power_u64(h.order_u64(), p)) {
      gens = trial;
      chain = StabilizerChain<P>(g.degree(), BaseRule::SmallestMoved);
      for (const auto& t : gens) chain.extend(t);
      cur = h.order();
    }
  }
  if (gens.empty()) return Group<P>({Perm<P>::identity(g.degree())}, g.degree());
  Group<P> res(gens, g.degree());
  if (res.order() != BigInt(target))
    throw error("sylow_subgroup: greedy growth stalled");
  return res;
}

/// Centralizer of a set of elements, by streaming the whole group.
template <class P>
std::vector<Perm<P>> centralizer_elements(const Group<P>& g,
                                          const std::vector<Perm<P>>& xs,
                                          std::uint64_t cap = kDefaultEnumerationCap) {
  std::vector<Perm<P>> out;
  auto st = g.elements(cap);
  Perm<P> e;
  while (st.next(e)) {
    bool ok = true;
    for (const auto& x : xs)
      if (!(e * x == x * e)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(e);
  }
  return out;
}

/// <elements of G whose image in G/Q has order coprime to p>, as a group:
/// contains the preimage of any normal p-complement of G/Q.
template <class P>
Group<P> pprime_preimage(const Group<P>& g, const Group<P>& q, std::uint64_t p,
                         std::uint64_t cap = kDefaultEnumerationCap) {
  BigInt quotient = g.order() / q.order();
  std::uint64_t mprime = static_cast<std::uint64_t>(quotient);
  mprime /= p_part(mprime, p);
  std::vector<Perm<P>> gens = q.generators();
  StabilizerChain<P> chain(g.degree(), BaseRule::SmallestMoved);
  for (const auto& s : gens) chain.extend(s);
  auto st = g.elements(cap);
  Perm<P> e;
  while (st.next(e)) {
    Perm<P> t = e.power(static_cast<long long>(mprime));
    if (!q.contains(t)) continue;  // image of e has order divisible by p
    if (!chain.contains(e)) {
      chain.extend(e);
      gens.push_back(e);
    }
  }
  return Group<P>(gens, g.degree());
}

}  // namespace classex
