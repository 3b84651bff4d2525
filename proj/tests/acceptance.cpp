// Acceptance suite: one line per criterion, with the stated exactness and
// wall-clock budgets enforced. Criteria are grouped into fast / full / slow
// sets selectable with --group; --all runs everything.
#include <chrono>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "classex/chartable.hpp"
#include "classex/suite.hpp"
#include "classex/wreath_search.hpp"

using namespace classex;
using P8 = std::uint8_t;
using P16 = std::uint16_t;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_data = CLASSEX_DATA_DIR;
int g_failures = 0;

struct Criterion {
  int number;
  std::string label;
  double budget_seconds;
  bool (*run)(std::string& detail);
};

bool criterion1(std::string& detail) {
  auto g = named_group<P8>("Frob21", g_data);
  ClassPartition<P8> part(g);
  auto report = odd_subset_audit(part);
  if (!report.violations.empty()) {
    detail = "non-soluble span reported";
    return false;
  }
  for (const auto& e : report.satisfying) {
    if (e.classes.size() != 2) continue;
    std::set<std::uint64_t> orders;
    NormalSubset<P8> k(part);
    for (const auto& nm : e.classes) {
      auto c = *part.class_by_name(nm);
      orders.insert(part.info(c).element_order);
      k.add_class(c);
    }
    if (orders != std::set<std::uint64_t>{3, 7}) continue;
    auto dk = rational_closure(part, k);
    if (dk.element_count() != 20 || dk.contains_class(0)) continue;
    if (!expansion_check(part, k).holds) continue;
    if (e.span_order != 21 || !e.soluble) continue;
    detail = "K = {" + e.classes[0] + "," + e.classes[1] +
             "}, D_K = 20 nontrivial elements, span = G soluble";
    return true;
  }
  detail = "no satisfying order-{3,7} pair found";
  return false;
}

bool criterion2(std::string& detail) {
  auto g = build_spec<P8>("alt:5", g_data);
  ClassPartition<P8> part(g);
  NormalSubset<P8> k(part);
  k.add_class(*part.class_by_name("5A"));
  auto sq = normal_set_product(part, k, k);
  if (sq.class_names() != std::vector<std::string>{"1A", "3A", "5A", "5B"}) {
    detail = "5A*5A is not the four odd-order classes";
    return false;
  }
  std::size_t odd = 0;
  for (std::size_t c = 0; c < part.num_classes(); ++c)
    if (part.info(c).element_order % 2 == 1) ++odd;
  if (odd != 4) {
    detail = "expected 4 odd-order classes";
    return false;
  }
  auto report = odd_subset_audit(part);
  if (!report.violations.empty()) {
    detail = "audit reported a non-soluble span";
    return false;
  }
  detail = "5A^2 = {1A,3A,5A,5B}; all 16 odd unions audited, no non-soluble span";
  return true;
}

bool criterion3(std::string& detail) {
  auto g = build_spec<P8>("psigmal2:8,3", g_data);
  auto l = build_spec<P8>("psl2:8", g_data);
  ClassPartition<P8> part(g);
  Perm<P8> y;
  bool found = false;
  for (std::size_t c = 0; c < part.num_classes() && !found; ++c)
    if (!l.contains(part.representative(c))) {
      y = part.representative(c);
      found = true;
    }
  if (!found) {
    detail = "no element outside L";
    return false;
  }
  auto view = coset_structure(part, l, y);
  bool order6 = false;
  for (std::size_t c : view.coset_classes)
    if (part.info(c).element_order == 6) order6 = true;
  if (!view.dk_equals_complement) {
    detail = "D_{yL} != G minus L";
    return false;
  }
  if (!view.square_equals_y2L) {
    detail = "(yL)^2 != y^2 L";
    return false;
  }
  if (!order6) {
    detail = "no order-6 element in yL";
    return false;
  }
  detail = "D_{yL} = G\\L, (yL)^2 = y^2 L, and yL has an order-6 element";
  return true;
}

bool criterion4(std::string& detail) {
  SuiteContext ctx;
  ctx.data_dir = g_data;
  auto m11 = suite_detail::sporadic_probe<P8>("M11", false, ctx);
  if (m11.status != CheckStatus::Pass) {
    detail = "M11 probe failed";
    return false;
  }
  auto j1 = suite_detail::sporadic_probe<P16>("J1", true, ctx);
  if (j1.status != CheckStatus::Pass) {
    detail = "J1 probe did not show the expected exception";
    return false;
  }
  std::string cls;
  for (auto& [k, v] : j1.witnesses)
    if (k == "empty_witness_class") cls = v;
  detail = "M11: (i) and (ii) for every odd class; J1: (i) everywhere, (ii) empty for " + cls;
  return true;
}

bool criterion5(std::string& detail) {
  SuiteContext ctx;
  ctx.data_dir = g_data;
  auto a = suite_detail::coprime_square_with_tables<P8>("SL2_32.5", "psl2:32",
                                                        5, "SL2_32.5", ctx);
  if (a.status != CheckStatus::Pass) {
    detail = "SL2(32).5 failed";
    return false;
  }
  auto b = suite_detail::coprime_square_with_tables<P8>("Sz8.3", "name:Sz8", 3,
                                                        "Sz8.3", ctx);
  if (b.status != CheckStatus::Pass) {
    detail = "Sz8.3 failed";
    return false;
  }
  detail = "(x^L)^2 = x^2 G by enumeration on both groups; coset-square sums agree class-by-class";
  return true;
}

bool criterion6(std::string& detail) {
  auto r = check_3r_to_2r(5, 1'000'000, 20250810);
  if (r.status != CheckStatus::Pass) {
    detail = "no witness within budget";
    return false;
  }
  std::string trials;
  for (auto& [k, v] : r.witnesses)
    if (k == "trials") trials = v;
  detail = "witness involution with |t*tau| = 10 found (trial " + trials +
           "), re-verified by direct powers";
  return true;
}

bool criterion7(std::string& detail) {
  SuiteContext ctx;
  ctx.data_dir = g_data;
  ctx.seed = 20250810;
  struct Named {
    const char* label;
    CheckResult r;
  };
  std::vector<Named> results;
  results.push_back({"wreath order x100", suite_detail::wreath_conjugate_order_randomized(ctx)});
  results.push_back({"odd-core complement", suite_detail::odd_core_complement_instances(ctx)});
  results.push_back({"factor-transitive order", suite_detail::factor_transitive_order_instances(ctx)});
  results.push_back({"factor subgroup orbit", suite_detail::factor_subgroup_orbit_instance(ctx)});
  results.push_back({"order drop aff(3,3,13,3)", suite_detail::order_drop_small(ctx)});
  results.push_back({"order drop aff(5,5,11,5)", suite_detail::order_drop_large(ctx)});
  for (std::size_t n = 5; n <= 8; ++n)
    results.push_back({"sym fix", check_sym_fix<P8>(n)});
  for (std::size_t n = 6; n <= 9; ++n)
    results.push_back({"alt order-4", check_altfact<P8>(n)});
  results.push_back(
      {"commutator alt5", check_commutator_even(build_spec<P8>("alt:5", g_data))});
  results.push_back(
      {"commutator psl2:7", check_commutator_even(build_spec<P8>("psl2:7", g_data))});
  results.push_back({"coset involutions", suite_detail::coset_involutions_checks(ctx)});
  results.push_back({"gow", suite_detail::gow_checks(ctx)});
  results.push_back(
      {"constants", suite_detail::structure_constant_agreement(ctx)});
  results.push_back({"character identity", suite_detail::character_product_identity_checks(ctx)});
  results.push_back({"D_K corpus", suite_detail::corpus_dk_properties(ctx)});
  for (const auto& n : results) {
    if (n.r.status != CheckStatus::Pass) {
      detail = std::string("subcheck failed: ") + n.label + " [" +
               n.r.status_str() + "]";
      for (auto& [k, v] : n.r.witnesses) detail += " " + k + "=" + v;
      return false;
    }
  }
  detail = std::to_string(results.size()) + " property suites, all exact";
  return true;
}

bool criterion8(std::string& detail) {
  auto out = wreath_order15_search<P8>(400'000'000);
  if (out.result.status == CheckStatus::Skip) {
    detail = "inconclusive: search budget exceeded";
    std::cout << "  (reported inconclusive, not fail, per the slow-tier contract)\n";
    return true;  // inconclusive is an allowed outcome; fast/full stay green
  }
  if (out.result.status != CheckStatus::Pass) {
    detail = "no (I, J) with K^2 in D_K and index-2 span";
    return false;
  }
  std::string i, j, idx;
  for (auto& [k, v] : out.result.witnesses) {
    if (k == "I") i = v;
    if (k == "J") j = v;
    if (k == "index") idx = v;
  }
  detail = "found I = " + i + ", J = " + j + ", |G:<K>| = " + idx;
  return true;
}

int run_group(const std::vector<Criterion>& cs) {
  for (const auto& c : cs) {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0)
            .count() /
        1000.0;
    bool in_budget = secs <= c.budget_seconds;
    bool pass = ok && in_budget;
    std::cout << "CRITERION " << c.number << " [" << (pass ? "PASS" : "FAIL")
              << "] " << c.label << " (" << secs << "s, budget "
              << c.budget_seconds << "s)\n";
    if (!detail.empty()) std::cout << "    " << detail << "\n";
    if (!in_budget && ok) std::cout << "    exceeded the time budget\n";
    if (!pass) ++g_failures;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::string group = "all";
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--group") && i + 1 < argc) group = argv[++i];
    if (!std::strcmp(argv[i], "--data") && i + 1 < argc) g_data = argv[++i];
  }
  std::vector<Criterion> fast = {
      {1, "Frob21 odd-class audit", 1.0, criterion1},
      {2, "Alt(5) class squares and audit", 1.0, criterion2},
      {3, "PGammaL2(8) coset structure", 10.0, criterion3},
      {6, "SL2(3^5) twisted involution witness", 300.0, criterion6},
      {7, "property suites", 300.0, criterion7},
  };
  std::vector<Criterion> full = {
      {4, "sporadic odd-class probes on M11 and J1", 1800.0, criterion4},
      {5, "coprime-automorphism coset squares with table agreement", 1800.0,
       criterion5},
  };
  std::vector<Criterion> slow = {
      {8, "(2 wr 3) wr 5 order-15/order-3 subset search", 86400.0, criterion8},
  };
  if (group == "fast" || group == "all") run_group(fast);
  if (group == "full" || group == "all") run_group(full);
  if (group == "slow" || group == "all") run_group(slow);
  if (g_failures) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria green\n";
  return 0;
}
