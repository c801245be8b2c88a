#pragma once

// The order-n intersection graph of pullback labels.
//
// Nodes are the 2^n sequences w . 1_infinity for n-symbol words w, stored in
// canonical form; distinct words give distinct sequences, so no two nodes
// collide. Edges come from the parent rule in itinerary.hpp, which is
// equivalent to the pairwise intersection predicate; each non-root node has
// exactly one parent of strictly smaller order, so the graph is a tree with
// 2^n - 1 edges without any extra checking. Tests re-verify this against the
// quadratic all-pairs predicate for small n.

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cremerlab/errors.hpp"
#include "cremerlab/itinerary.hpp"

namespace cremerlab {

struct pullback_tree {
  unsigned n = 0;
  std::vector<pullback_id> nodes;                      // index order: word value, msb first
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (min index, max index), sorted
};

inline constexpr unsigned default_tree_order_budget = 20;

inline pullback_tree build_tree(unsigned n, unsigned order_budget = default_tree_order_budget) {
  if (n > order_budget)
    fail(errc::budget_exceeded, "tree order " + std::to_string(n) +
                                    " exceeds the memory budget order " +
                                    std::to_string(order_budget));

  pullback_tree t;
  t.n = n;
  const std::size_t count = std::size_t{1} << n;
  t.nodes.reserve(count);
  std::unordered_map<std::string, std::size_t> index_of;
  index_of.reserve(count * 2);

  for (std::size_t w = 0; w < count; ++w) {
    std::string head(n, '0');
    for (unsigned b = 0; b < n; ++b)
      if (w & (std::size_t{1} << (n - 1 - b))) head[b] = '1';
    t.nodes.push_back(pullback_id::from_head(std::move(head)));
    index_of.emplace(t.nodes.back().to_string(), w);
  }

  t.edges.reserve(count == 0 ? 0 : count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    if (t.nodes[i].head().empty()) continue;  // root
    std::size_t j = index_of.at(parent_of(t.nodes[i]).to_string());
    t.edges.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(t.edges.begin(), t.edges.end());
  return t;
}

// True when the two trees carry the same labels and the same label
// adjacencies, regardless of node ordering. Labels default to the node
// itineraries; callers relabeling nodes pass parallel label vectors.
inline bool same_intersection_pattern(const pullback_tree& t1,
                                      const std::vector<std::string>& labels1,
                                      const pullback_tree& t2,
                                      const std::vector<std::string>& labels2) {
  if (t1.n != t2.n)
    fail(errc::order_mismatch, "trees have orders " + std::to_string(t1.n) + " and " +
                                   std::to_string(t2.n));
  auto label = [](const pullback_tree& t, const std::vector<std::string>& labels,
                  std::size_t i) -> std::string {
    if (labels.empty()) return t.nodes[i].to_string();
    if (labels.size() != t.nodes.size())
      fail(errc::invalid_argument, "label list does not match node count");
    return labels[i];
  };

  std::vector<std::string> set1, set2;
  for (std::size_t i = 0; i < t1.nodes.size(); ++i) set1.push_back(label(t1, labels1, i));
  for (std::size_t i = 0; i < t2.nodes.size(); ++i) set2.push_back(label(t2, labels2, i));
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(set1) != sorted(set2)) return false;

  auto edge_labels = [&](const pullback_tree& t, const std::vector<std::string>& names) {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(t.edges.size());
    for (auto [i, j] : t.edges) {
      std::string a = names[i], b = names[j];
      if (b < a) std::swap(a, b);
      out.emplace_back(std::move(a), std::move(b));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return edge_labels(t1, set1) == edge_labels(t2, set2);
}

inline bool same_intersection_pattern(const pullback_tree& t1, const pullback_tree& t2) {
  return same_intersection_pattern(t1, {}, t2, {});
}

}  // namespace cremerlab
