#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "locmax/oracle.hpp"

namespace locmax {

// Digraph with 0/1 pins: variables 0..variable_count-1, edge (u, v) reads
// "u = 1 forces v = 1". Self-loops are tautologies and are dropped at
// construction; edges and pins are deduplicated sets.
struct ImplicationInstance {
  ImplicationInstance(int variables, std::set<std::pair<int, int>> edge_set,
                      std::set<int> pins0, std::set<int> pins1);

  int variable_count = 0;
  std::set<std::pair<int, int>> edges;
  std::set<int> pinned0;
  std::set<int> pinned1;

  bool operator==(const ImplicationInstance&) const = default;
};

// Strongly connected components of an implication instance, collapsed to a
// DAG. Components are sorted by least member; edges connect component indices.
struct CondensationDag {
  std::vector<std::vector<int>> components;
  std::set<std::pair<int, int>> edges;
};

// Counts locally maximal satisfying assignments when every relation used is
// essentially monotone: variables scoped at an always-zero position must be 0,
// everything else goes to 1, and that single candidate either satisfies (count
// 1) or not (count 0). Errors LanguageMismatch otherwise.
CountReport count_max_monotone(const Instance& instance);

// Counts locally maximal satisfying assignments when every relation used is
// affine: constraints decompose into XOR equations, scope repeats cancel,
// unconstrained variables are forced to 1, and the answer is 0 on an
// inconsistent system or 2^(m - rank) with m the number of constrained
// variables. Errors LanguageMismatch otherwise.
CountReport count_max_affine(const Instance& instance);

// Rewrites an instance whose relations all sit in the pin/implication class as
// an ImplicationInstance over the same variables. Errors LanguageMismatch.
ImplicationInstance to_implication_instance(const Instance& instance);

struct PruneResult {
  ImplicationInstance reduced;  // pin-free, over the surviving variables renumbered
  bool satisfiable = false;
  std::vector<int> kept;  // original ids of the surviving variables, in order
};

// Propagates pins: V1 = forward-reachable from the 1-pins, V0 =
// backward-reachable from the 0-pins (both including the pinned vertices).
// The instance is satisfiable exactly when V0 and V1 are disjoint; the
// surviving induced sub-instance preserves the locally-maximal count.
PruneResult prune(const ImplicationInstance& g);

// One step of singleton elimination on a pin-free instance: the least variable
// forming a singleton strongly connected component is removed and its
// in-neighbours are wired to its out-neighbours; the locally-maximal count is
// preserved. nullopt when no step applies (one variable left, or no singleton
// component). Requires no pins.
std::optional<ImplicationInstance> eliminate_one_singleton(const ImplicationInstance& g);

// Runs eliminate_one_singleton to fixpoint. On exit either one variable
// remains or every component is a cycle of length >= 2, and in the latter case
// every satisfying assignment of the result is locally maximal.
ImplicationInstance eliminate_singletons(const ImplicationInstance& g);

CondensationDag condensation(const ImplicationInstance& g);

inline constexpr int kDefaultComponentCap = 30;

// Number of upward-closed vertex sets of the DAG ("up" = toward successors),
// which equals the number of satisfying assignments of the underlying pin-free
// implication instance. Memoized two-way recursion; worst case exponential,
// so component count is capped (TooLarge).
mpz_class count_up_sets(const CondensationDag& dag, int component_cap = kDefaultComponentCap);

// Full pipeline for languages in the pin/implication class:
// to_implication_instance -> prune -> eliminate_singletons -> condensation ->
// count_up_sets.
CountReport count_max_im2(const Instance& instance, int component_cap = kDefaultComponentCap);

// View of an implication instance as a CSP over {Implies, U0, U1}; variables
// are named v0..v(n-1). Used to cross-check the pipeline against enumeration.
Instance to_csp_instance(const ImplicationInstance& g);

}  // namespace locmax
