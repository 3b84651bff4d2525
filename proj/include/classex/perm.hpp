#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "classex/common.hpp"

namespace classex {

/// Permutation of {0, ..., d-1} stored as an image array. The point type P is
/// uint8_t for degrees up to 255 and uint16_t beyond, keeping bulk element
/// scans compact. Composition is left-to-right: (p * q) applies p, then q.
template <class P>
class Perm {
 public:
  using point = P;

  Perm() = default;

  explicit Perm(std::size_t degree) : img_(degree) {
    for (std::size_t i = 0; i < degree; ++i) img_[i] = static_cast<P>(i);
  }

  explicit Perm(std::vector<P> images) : img_(std::move(images)) {}

  static Perm identity(std::size_t degree) { return Perm(degree); }

  std::size_t degree() const { return img_.size(); }

  P operator[](std::size_t i) const { return img_[i]; }

  const std::vector<P>& images() const { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  friend Perm operator*(const Perm& a, const Perm& b) {
    if (a.degree() != b.degree())
      throw degree_mismatch("compose: degree mismatch");
    Perm r;
    r.img_.resize(a.degree());
    for (std::size_t i = 0; i < a.degree(); ++i) r.img_[i] = b.img_[a.img_[i]];
    return r;
  }

  Perm inverse() const {
    Perm r;
    r.img_.resize(degree());
    for (std::size_t i = 0; i < degree(); ++i)
      r.img_[img_[i]] = static_cast<P>(i);
    return r;
  }

  /// w^-1 * (*this) * w
  Perm conjugated_by(const Perm& w) const {
    Perm winv = w.inverse();
    return winv * (*this) * w;
  }

  Perm power(long long e) const {
    std::size_t d = degree();
    if (e < 0) return inverse().power(-e);
    Perm r = identity(d);
    Perm base = *this;
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const Perm& a, const Perm& b) {
    return a.img_ == b.img_;
  }
  friend bool operator!=(const Perm& a, const Perm& b) {
    return !(a.img_ == b.img_);
  }
  friend bool operator<(const Perm& a, const Perm& b) {
    return a.img_ < b.img_;
  }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    std::vector<bool> seen(degree(), false);
    for (std::size_t i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 0;
      std::size_t j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = img_[j];
        ++len;
      }
      o = lcm_u64(o, len);
    }
    return o;
  }

  /// Multiset of cycle lengths >= 2.
  std::multiset<std::uint64_t> cycle_type() const {
    std::multiset<std::uint64_t> t;
    std::vector<bool> seen(degree(), false);
    for (std::size_t i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 0;
      std::size_t j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = img_[j];
        ++len;
      }
      if (len >= 2) t.insert(len);
    }
    return t;
  }

  /// 0-based fixed points.
  std::vector<std::size_t> fixed_points() const {
    std::vector<std::size_t> f;
    for (std::size_t i = 0; i < degree(); ++i)
      if (img_[i] == i) f.push_back(i);
    return f;
  }

  std::size_t smallest_moved_point() const {
    for (std::size_t i = 0; i < degree(); ++i)
      if (img_[i] != i) return i;
    return degree();
  }

  const P* data() const { return img_.data(); }

 private:
  std::vector<P> img_;
};

/// Parses cycle notation with 1-based points, e.g. "(1,2,3)(4,5)". Cycles need
/// not be disjoint; they are multiplied left-to-right. "()" is the identity.
template <class P>
Perm<P> parse_permutation(const std::string& text, std::size_t degree) {
  if (degree > static_cast<std::size_t>(std::numeric_limits<P>::max()) + 1)
    throw parse_error("degree exceeds point type range");
  Perm<P> result = Perm<P>::identity(degree);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  bool any = false;
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size()) break;
    if (text[i] != '(') throw parse_error("expected '(' in cycle notation");
    ++i;
    std::vector<std::size_t> cyc;
    std::set<std::size_t> used;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      std::size_t start = i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
      if (i == start) throw parse_error("expected point number");
      std::size_t pt = std::stoul(text.substr(start, i - start));
      if (pt < 1 || pt > degree)
        throw parse_error("point " + std::to_string(pt) + " out of range 1.." +
                          std::to_string(degree));
      if (!used.insert(pt).second)
        throw parse_error("repeated point " + std::to_string(pt) +
                          " within one cycle");
      cyc.push_back(pt - 1);
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        skip_ws();
      } else if (i < text.size() && text[i] != ')') {
        throw parse_error("expected ',' or ')'");
      }
    }
    if (i >= text.size()) throw parse_error("unterminated cycle");
    ++i;  // ')'
    any = true;
    if (cyc.size() >= 2) {
      std::vector<P> img(degree);
      for (std::size_t k = 0; k < degree; ++k) img[k] = static_cast<P>(k);
      for (std::size_t k = 0; k < cyc.size(); ++k)
        img[cyc[k]] = static_cast<P>(cyc[(k + 1) % cyc.size()]);
      result = result * Perm<P>(std::move(img));
    }
    skip_ws();
  }
  if (!any) throw parse_error("empty cycle notation");
  return result;
}

/// Disjoint-cycle rendering with 1-based points; identity prints as "()".
template <class P>
std::string cycle_string(const Perm<P>& p) {
  std::string out;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += ',';
      out += std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  if (out.empty()) return "()";
  return out;
}

}  // namespace classex
