#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "classex/common.hpp"
#include "classex/gf.hpp"
#include "classex/group.hpp"
#include "classex/perm.hpp"

namespace classex {

/// Generator file: {"degree": d, "generators": ["(1,2,3)", ...],
///                  "name": optional, "order": optional}
struct GeneratorFile {
  std::size_t degree;
  std::vector<std::string> generators;
  std::string name;
  std::optional<BigInt> order;
};

inline GeneratorFile read_generator_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw error("cannot open generator file: " + path);
  nlohmann::json doc;
  try {
    f >> doc;
    GeneratorFile gf;
    gf.degree = doc.at("degree").get<std::size_t>();
    for (const auto& s : doc.at("generators"))
      gf.generators.push_back(s.get<std::string>());
    if (doc.contains("name")) gf.name = doc["name"].get<std::string>();
    if (doc.contains("order")) gf.order = BigInt(doc["order"].get<std::uint64_t>());
    return gf;
  } catch (const nlohmann::json::exception& e) {
    throw schema_error(std::string("generator file schema: ") + e.what());
  }
}

template <class P>
Group<P> group_from_file(const GeneratorFile& gf,
                         BaseRule rule = BaseRule::SmallestMoved) {
  std::vector<Perm<P>> gens;
  for (const auto& s : gf.generators)
    gens.push_back(parse_permutation<P>(s, gf.degree));
  Group<P> g(gens, gf.degree, rule, gf.name);
  if (gf.order && g.order() != *gf.order)
    throw error("generator file order mismatch for " + gf.name + ": chain says " +
                g.order().str() + ", file says " + gf.order->str());
  return g;
}

// ---------------------------------------------------------------------------
// Projective line constructions. Point 0 is infinity; point 1+code is the
// field element with that code, so labels are fixed bit-exactly by the
// packaged polynomials.

template <class P>
Perm<P> moebius_perm(const FiniteField& f, FiniteField::elem a,
                     FiniteField::elem b, FiniteField::elem c,
                     FiniteField::elem d) {
  std::size_t n = f.size() + 1;
  std::vector<P> img(n);
  img[0] = c == 0 ? 0 : static_cast<P>(1 + f.mul(a, f.inv(c)));
  for (FiniteField::elem z = 0; z < f.size(); ++z) {
    FiniteField::elem num = f.add(f.mul(a, z), b);
    FiniteField::elem den = f.add(f.mul(c, z), d);
    img[1 + z] = den == 0 ? 0 : static_cast<P>(1 + f.mul(num, f.inv(den)));
  }
  return Perm<P>(std::move(img));
}

template <class P>
Perm<P> field_automorphism_perm(const FiniteField& f) {
  std::size_t n = f.size() + 1;
  std::vector<P> img(n);
  img[0] = 0;
  for (FiniteField::elem z = 0; z < f.size(); ++z)
    img[1 + z] = static_cast<P>(1 + f.frobenius(z));
  return Perm<P>(std::move(img));
}

template <class P>
std::vector<Perm<P>> psl2_gens(const FiniteField& f) {
  FiniteField::elem s = f.generator();
  std::vector<Perm<P>> gens;
  gens.push_back(moebius_perm<P>(f, f.one(), f.one(), 0, f.one()));  // z+1
  if (f.characteristic() == 2) {
    gens.push_back(moebius_perm<P>(f, s, 0, 0, f.one()));            // s z
    gens.push_back(moebius_perm<P>(f, 0, f.one(), f.one(), 0));      // 1/z
  } else {
    gens.push_back(moebius_perm<P>(f, f.mul(s, s), 0, 0, f.one()));  // s^2 z
    gens.push_back(moebius_perm<P>(f, 0, f.neg(f.one()), f.one(), 0));  // -1/z
  }
  return gens;
}

template <class P>
Group<P> psl2(int p, int k) {
  FiniteField f(p, k);
  std::uint64_t q = f.size();
  Group<P> g(psl2_gens<P>(f), q + 1, BaseRule::SmallestMoved,
             "PSL2_" + std::to_string(q));
  BigInt expect = BigInt(q) * (BigInt(q) * q - 1) / (p == 2 ? 1 : 2);
  if (g.order() != expect) throw error("psl2 order check failed");
  return g;
}

template <class P>
Group<P> pgl2(int p, int k) {
  FiniteField f(p, k);
  std::uint64_t q = f.size();
  std::vector<Perm<P>> gens = {
      moebius_perm<P>(f, f.one(), f.one(), 0, f.one()),
      moebius_perm<P>(f, f.generator(), 0, 0, f.one()),
      moebius_perm<P>(f, 0, f.one(), f.one(), 0)};
  Group<P> g(gens, q + 1, BaseRule::SmallestMoved, "PGL2_" + std::to_string(q));
  BigInt expect = BigInt(q) * (BigInt(q) * q - 1);
  if (g.order() != expect) throw error("pgl2 order check failed");
  return g;
}

/// PSL2(p^k) extended by the field automorphism subgroup of order f_ord.
template <class P>
Group<P> psigmal2(int p, int k, int f_ord) {
  if (f_ord < 1 || k % f_ord != 0)
    throw error("psigmal2: automorphism order must divide the field degree");
  FiniteField f(p, k);
  std::uint64_t q = f.size();
  std::vector<Perm<P>> gens = psl2_gens<P>(f);
  Perm<P> fr = field_automorphism_perm<P>(f);
  gens.push_back(fr.power(k / f_ord));
  Group<P> g(gens, q + 1, BaseRule::SmallestMoved,
             "PSigmaL2_" + std::to_string(q) + "." + std::to_string(f_ord));
  BigInt expect =
      BigInt(q) * (BigInt(q) * q - 1) / (p == 2 ? 1 : 2) * f_ord;
  if (g.order() != expect) throw error("psigmal2 order check failed");
  return g;
}

// ---------------------------------------------------------------------------
// Wreath product H wr C_n, imprimitive action on d*n points: block i holds
// points [i*d, (i+1)*d). Conjugation by the top cycle rotates base
// coordinates: (h_1,...,h_n)^x = (h_n, h_1, ..., h_{n-1}).

template <class P>
struct WreathStructure {
  std::size_t block_size;
  std::size_t blocks;

  Perm<P> embed(const Perm<P>& h, std::size_t block) const {
    std::size_t n = block_size * blocks;
    std::vector<P> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<P>(i);
    for (std::size_t j = 0; j < block_size; ++j)
      img[block * block_size + j] =
          static_cast<P>(block * block_size + h[j]);
    return Perm<P>(std::move(img));
  }

  Perm<P> top_cycle() const {
    std::size_t n = block_size * blocks;
    std::vector<P> img(n);
    for (std::size_t b = 0; b < blocks; ++b)
      for (std::size_t j = 0; j < block_size; ++j)
        img[b * block_size + j] =
            static_cast<P>(((b + 1) % blocks) * block_size + j);
    return Perm<P>(std::move(img));
  }

  /// Tuple (h_1, ..., h_n) as an element of the base subgroup.
  Perm<P> base_tuple(const std::vector<Perm<P>>& hs) const {
    std::size_t n = block_size * blocks;
    std::vector<P> img(n);
    for (std::size_t b = 0; b < blocks; ++b)
      for (std::size_t j = 0; j < block_size; ++j)
        img[b * block_size + j] = static_cast<P>(b * block_size + hs[b][j]);
    return Perm<P>(std::move(img));
  }

  std::size_t block_of(std::size_t point) const { return point / block_size; }

  /// Base component of a base-subgroup element at the given block.
  Perm<P> component(const Perm<P>& g, std::size_t block) const {
    std::vector<P> img(block_size);
    for (std::size_t j = 0; j < block_size; ++j)
      img[j] = static_cast<P>(g[block * block_size + j] - block * block_size);
    return Perm<P>(std::move(img));
  }
};

template <class P>
std::pair<Group<P>, WreathStructure<P>> wreath_cyclic(const Group<P>& h,
                                                      std::size_t n) {
  if (n < 2) throw error("wreath_cyclic: n must be at least 2");
  WreathStructure<P> ws{h.degree(), n};
  std::vector<Perm<P>> gens;
  for (const auto& g : h.generators()) gens.push_back(ws.embed(g, 0));
  gens.push_back(ws.top_cycle());
  std::string nm = (h.name().empty() ? "H" : h.name()) + "wr" + std::to_string(n);
  Group<P> w(gens, h.degree() * n, BaseRule::SmallestMoved, nm);
  BigInt expect = 1;
  for (std::size_t i = 0; i < n; ++i) expect *= h.order();
  expect *= static_cast<std::uint64_t>(n);
  if (w.order() != expect) throw error("wreath order check failed");
  return {std::move(w), ws};
}

// ---------------------------------------------------------------------------
// Subgroups of AGammaL(1, p^k): maps x -> a * x^phi + b acting on the p^k
// field elements, with a in the order-m subgroup of the multiplicative group
// and phi in the order-f subgroup of the Frobenius group.

template <class P>
Group<P> semilinear_affine(int p, int k, std::uint64_t m, int f_ord) {
  FiniteField f(p, k);
  std::uint64_t q = f.size();
  if ((q - 1) % m != 0)
    throw error("semilinear_affine: m must divide p^k - 1");
  if (f_ord < 1 || k % f_ord != 0)
    throw error("semilinear_affine: f must divide k");
  std::vector<Perm<P>> gens;
  {  // translation x -> x + 1
    std::vector<P> img(q);
    for (FiniteField::elem z = 0; z < q; ++z)
      img[z] = static_cast<P>(f.add(z, f.one()));
    gens.emplace_back(std::move(img));
  }
  {  // scaling by the order-m element
    FiniteField::elem a = f.pow(f.generator(), (q - 1) / m);
    std::vector<P> img(q);
    for (FiniteField::elem z = 0; z < q; ++z)
      img[z] = static_cast<P>(f.mul(a, z));
    gens.emplace_back(std::move(img));
  }
  {  // x -> x^(p^(k/f)), the Frobenius power of order f_ord
    std::vector<P> img(q);
    for (FiniteField::elem z = 0; z < q; ++z) {
      FiniteField::elem w = z;
      for (int i = 0; i < k / f_ord; ++i) w = f.frobenius(w);
      img[z] = static_cast<P>(w);
    }
    gens.emplace_back(std::move(img));
  }
  Group<P> g(gens, q, BaseRule::SmallestMoved,
             "aff(" + std::to_string(p) + "," + std::to_string(k) + "," +
                 std::to_string(m) + "," + std::to_string(f_ord) + ")");
  BigInt expect = BigInt(q) * m * f_ord;
  if (g.order() != expect) throw error("semilinear_affine order check failed");
  return g;
}

// ---------------------------------------------------------------------------
// Named groups from the packaged registry.

struct NamedGroupEntry {
  std::string file;
  BigInt order;
};

inline const std::map<std::string, NamedGroupEntry>& named_registry() {
  static const std::map<std::string, NamedGroupEntry> reg = {
      {"Frob21", {"Frob21.json", 21}},
      {"M11", {"M11.json", 7920}},
      {"J1", {"J1.json", 175560}},
      {"Sz8", {"Sz8.json", 29120}},
      {"Sz8.3", {"Sz8.3.json", 87360}},
      {"SL2_32.5", {"SL2_32.5.json", 163680}},
      {"PGammaL2_8", {"PGammaL2_8.json", 1512}},
      {"PSL3_2", {"PSL3_2.json", 168}},
  };
  return reg;
}

inline std::string data_dir_or_default(const std::string& data_dir) {
  if (!data_dir.empty()) return data_dir;
#ifdef CLASSEX_DATA_DIR
  return CLASSEX_DATA_DIR;
#else
  return "data";
#endif
}

template <class P>
Group<P> named_group(const std::string& name, const std::string& data_dir = "",
                     BaseRule rule = BaseRule::SmallestMoved) {
  auto it = named_registry().find(name);
  if (it == named_registry().end()) throw error("unknown named group: " + name);
  std::string path =
      data_dir_or_default(data_dir) + "/generators/" + it->second.file;
  GeneratorFile gf = read_generator_file(path);
  gf.name = name;
  Group<P> g = group_from_file<P>(gf, rule);
  if (g.order() != it->second.order)
    throw error("named group " + name + " order mismatch: data corruption");
  return g;
}

inline std::size_t named_group_degree(const std::string& name,
                                      const std::string& data_dir = "") {
  auto it = named_registry().find(name);
  if (it == named_registry().end()) throw error("unknown named group: " + name);
  return read_generator_file(data_dir_or_default(data_dir) + "/generators/" +
                             it->second.file)
      .degree;
}

// ---------------------------------------------------------------------------
// GroupSpec grammar:
//   spec := "name:" id | "alt:" n | "sym:" n | "cyclic:" n
//         | "psl2:" q | "pgl2:" q | "psigmal2:" q "," f
//         | "wreath(" spec "," n ")" | "aff(" p "," k "," m "," f ")"
//         | "file:" path

struct GroupSpec {
  std::string text;
};

inline std::pair<int, int> split_prime_power(std::uint64_t q) {
  for (int p = 2; static_cast<std::uint64_t>(p) <= q; ++p) {
    if (q % p) continue;
    std::uint64_t m = q;
    int k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    if (m != 1) throw error("not a prime power: " + std::to_string(q));
    return {p, k};
  }
  throw error("not a prime power: " + std::to_string(q));
}

/// Degree of the permutation action a spec will produce (needed to pick the
/// point width before building).
inline std::size_t spec_degree(const std::string& spec,
                               const std::string& data_dir = "");

template <class P>
Group<P> build_spec(const std::string& spec, const std::string& data_dir = "");

namespace detail {

inline std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  std::size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

template <class P>
Group<P> sym_group(std::size_t n, bool alternating) {
  if (n < 1) throw error("degree must be positive");
  std::vector<Perm<P>> gens;
  std::size_t deg = std::max<std::size_t>(n, 1);
  if (alternating) {
    // Alt(n): <(1,2,3), (1,2,...,n)> for odd n, <(1,2,3), (2,...,n)> for even
    if (n >= 3) {
      std::vector<P> c3(deg);
      for (std::size_t i = 0; i < deg; ++i) c3[i] = static_cast<P>(i);
      c3[0] = 1; c3[1] = 2; c3[2] = 0;
      gens.emplace_back(std::move(c3));
    }
    if (n >= 4) {
      std::vector<P> cyc(deg);
      for (std::size_t i = 0; i < deg; ++i) cyc[i] = static_cast<P>(i);
      if (n % 2 == 1) {
        for (std::size_t i = 0; i < n; ++i) cyc[i] = static_cast<P>((i + 1) % n);
      } else {
        for (std::size_t i = 1; i < n; ++i)
          cyc[i] = static_cast<P>(1 + (i % (n - 1)));
      }
      gens.emplace_back(std::move(cyc));
    }
    if (gens.empty()) gens.push_back(Perm<P>::identity(deg));
    Group<P> g(gens, deg, BaseRule::SmallestMoved, "Alt" + std::to_string(n));
    BigInt fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<std::uint64_t>(i);
    BigInt expect = n >= 2 ? BigInt(fact / 2) : BigInt(1);
    if (g.order() != expect) throw error("alt order check failed");
    return g;
  }
  if (n >= 2) {
    std::vector<P> t(deg);
    for (std::size_t i = 0; i < deg; ++i) t[i] = static_cast<P>(i);
    t[0] = 1; t[1] = 0;
    gens.emplace_back(std::move(t));
  }
  if (n >= 3) {
    std::vector<P> cyc(deg);
    for (std::size_t i = 0; i < deg; ++i) cyc[i] = static_cast<P>(i);
    for (std::size_t i = 0; i < n; ++i) cyc[i] = static_cast<P>((i + 1) % n);
    gens.emplace_back(std::move(cyc));
  }
  if (gens.empty()) gens.push_back(Perm<P>::identity(deg));
  Group<P> g(gens, deg, BaseRule::SmallestMoved, "Sym" + std::to_string(n));
  BigInt fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<std::uint64_t>(i);
  if (g.order() != fact) throw error("sym order check failed");
  return g;
}

template <class P>
Group<P> cyclic_group(std::size_t n) {
  std::size_t deg = std::max<std::size_t>(n, 1);
  std::vector<P> cyc(deg);
  for (std::size_t i = 0; i < deg; ++i) cyc[i] = static_cast<P>((i + 1) % n);
  if (n <= 1)
    return Group<P>({Perm<P>::identity(1)}, 1, BaseRule::SmallestMoved, "C1");
  return Group<P>({Perm<P>(std::move(cyc))}, deg, BaseRule::SmallestMoved,
                  "C" + std::to_string(n));
}

}  // namespace detail

inline std::size_t spec_degree(const std::string& spec_in,
                               const std::string& data_dir) {
  std::string spec = detail::strip(spec_in);
  auto num_after = [&](const std::string& prefix) {
    return std::stoull(spec.substr(prefix.size()));
  };
  if (spec.rfind("name:", 0) == 0)
    return named_group_degree(spec.substr(5), data_dir);
  if (spec.rfind("alt:", 0) == 0 || spec.rfind("sym:", 0) == 0)
    return std::max<std::size_t>(num_after("alt:"), 1);
  if (spec.rfind("cyclic:", 0) == 0)
    return std::max<std::size_t>(num_after("cyclic:"), 1);
  if (spec.rfind("psl2:", 0) == 0 || spec.rfind("pgl2:", 0) == 0)
    return num_after("psl2:") + 1;
  if (spec.rfind("psigmal2:", 0) == 0) {
    auto rest = spec.substr(9);
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw parse_error("psigmal2:q,f expected");
    return std::stoull(rest.substr(0, comma)) + 1;
  }
  if (spec.rfind("wreath(", 0) == 0 && spec.back() == ')') {
    std::string inner = spec.substr(7, spec.size() - 8);
    // split at the last top-level comma
    int depth = 0;
    std::size_t pos = std::string::npos;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0) pos = i;
    }
    if (pos == std::string::npos) throw parse_error("wreath(spec,n) expected");
    std::size_t n = std::stoull(detail::strip(inner.substr(pos + 1)));
    return spec_degree(detail::strip(inner.substr(0, pos)), data_dir) * n;
  }
  if (spec.rfind("aff(", 0) == 0 && spec.back() == ')') {
    std::string inner = spec.substr(4, spec.size() - 5);
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= inner.size(); ++i)
      if (i == inner.size() || inner[i] == ',') {
        parts.push_back(detail::strip(inner.substr(start, i - start)));
        start = i + 1;
      }
    if (parts.size() != 4) throw parse_error("aff(p,k,m,f) expected");
    std::uint64_t q = 1;
    int p = std::stoi(parts[0]), k = std::stoi(parts[1]);
    for (int i = 0; i < k; ++i) q *= p;
    return q;
  }
  if (spec.rfind("file:", 0) == 0)
    return read_generator_file(spec.substr(5)).degree;
  throw parse_error("unrecognized group spec: " + spec);
}

template <class P>
Group<P> build_spec(const std::string& spec_in, const std::string& data_dir) {
  std::string spec = detail::strip(spec_in);
  if (spec.rfind("name:", 0) == 0)
    return named_group<P>(spec.substr(5), data_dir);
  if (spec.rfind("alt:", 0) == 0)
    return detail::sym_group<P>(std::stoull(spec.substr(4)), true);
  if (spec.rfind("sym:", 0) == 0)
    return detail::sym_group<P>(std::stoull(spec.substr(4)), false);
  if (spec.rfind("cyclic:", 0) == 0)
    return detail::cyclic_group<P>(std::stoull(spec.substr(7)));
  if (spec.rfind("psl2:", 0) == 0) {
    auto [p, k] = split_prime_power(std::stoull(spec.substr(5)));
    return psl2<P>(p, k);
  }
  if (spec.rfind("pgl2:", 0) == 0) {
    auto [p, k] = split_prime_power(std::stoull(spec.substr(5)));
    return pgl2<P>(p, k);
  }
  if (spec.rfind("psigmal2:", 0) == 0) {
    auto rest = spec.substr(9);
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw parse_error("psigmal2:q,f expected");
    auto [p, k] = split_prime_power(std::stoull(rest.substr(0, comma)));
    int f = std::stoi(rest.substr(comma + 1));
    return psigmal2<P>(p, k, f);
  }
  if (spec.rfind("wreath(", 0) == 0 && spec.back() == ')') {
    std::string inner = spec.substr(7, spec.size() - 8);
    int depth = 0;
    std::size_t pos = std::string::npos;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0) pos = i;
    }
    if (pos == std::string::npos) throw parse_error("wreath(spec,n) expected");
    Group<P> h = build_spec<P>(detail::strip(inner.substr(0, pos)), data_dir);
    std::size_t n = std::stoull(detail::strip(inner.substr(pos + 1)));
    return wreath_cyclic<P>(h, n).first;
  }
  if (spec.rfind("aff(", 0) == 0 && spec.back() == ')') {
    std::string inner = spec.substr(4, spec.size() - 5);
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= inner.size(); ++i)
      if (i == inner.size() || inner[i] == ',') {
        parts.push_back(detail::strip(inner.substr(start, i - start)));
        start = i + 1;
      }
    if (parts.size() != 4) throw parse_error("aff(p,k,m,f) expected");
    return semilinear_affine<P>(std::stoi(parts[0]), std::stoi(parts[1]),
                                std::stoull(parts[2]), std::stoi(parts[3]));
  }
  if (spec.rfind("file:", 0) == 0)
    return group_from_file<P>(read_generator_file(spec.substr(5)));
  throw parse_error("unrecognized group spec: " + spec);
}

}  // namespace classex
