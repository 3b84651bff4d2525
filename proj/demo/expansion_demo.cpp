// Minimal tour: build a group, partition it into classes, and test whether
// K^2 stays inside the rational closure D_K.
#include <iostream>

#include "classex/classes.hpp"
#include "classex/constructions.hpp"

int main() {
  using namespace classex;
  using P = std::uint8_t;

  auto g = build_spec<P>("alt:5");
  ClassPartition<P> part(g);
  std::cout << g.name() << " has " << part.num_classes() << " classes:";
  for (std::size_t c = 0; c < part.num_classes(); ++c)
    std::cout << " " << part.name(c) << "(" << part.info(c).size << ")";
  std::cout << "\n";

  NormalSubset<P> k(part);
  k.add_class(*part.class_by_name("5A"));
  auto dk = rational_closure(part, k);
  auto sq = normal_set_product(part, k, k);

  std::cout << "K = {5A}, D_K = {";
  for (const auto& n : dk.class_names()) std::cout << n << " ";
  std::cout << "}, K^2 = {";
  for (const auto& n : sq.class_names()) std::cout << n << " ";
  std::cout << "}\n";

  auto verdict = expansion_check(part, k);
  std::cout << "K^2 inside D_K: " << (verdict.holds ? "yes" : "no");
  if (verdict.violating_class)
    std::cout << " (violating class " << part.name(*verdict.violating_class)
              << ")";
  std::cout << "\n";
  return 0;
}
