#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dtwc/rational.hpp"

namespace dtwc {

// Enumeration guards.  Explicit config, overridable via DTWC_BUDGET-aware
// callers; these are not hidden constants.
struct EnumLimits {
  int max_tree_vertices = 8;    // n^(n-2) labelled trees
  int max_composition_total = 20;
};

// Mobius function on positive integers.
int moebius(std::uint64_t m);

// Standard binomial coefficient; 0 outside 0 <= k <= n.
Int binomial(std::uint64_t n, std::int64_t k);

// Ordered composition of a positive integer.
struct Composition {
  std::vector<int> parts;  // each >= 1
  int total = 0;           // sum of parts
};

// All 2^(total-1) compositions in lexicographic order.
std::vector<Composition> enumerate_compositions(int total,
                                                const EnumLimits& lim = {});

// For tight loops: visit compositions without materializing them.
void for_each_composition(int total, const std::function<void(const std::vector<int>&)>& fn);

// Labelled tree on {1..n} with every edge oriented low-to-high.
struct OrientedTree {
  int vertex_count = 1;
  std::vector<std::pair<int, int>> edges;  // (i, j), 1 <= i < j <= n
};

// All n^(n-2) labelled trees (Cayley), generated from Prufer sequences,
// each with the canonical low-to-high orientation.  n = 1 gives one tree.
std::vector<OrientedTree> enumerate_oriented_trees(int n,
                                                   const EnumLimits& lim = {});

}  // namespace dtwc
