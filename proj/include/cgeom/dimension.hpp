#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgeom/geometry.hpp"

namespace cgeom {

/// A chain all of whose prefixes are closed.
using CompatibleOrdering = Chain;

struct OrderingEnumeration {
  std::vector<CompatibleOrdering> orderings;  // lexicographic in element index
  bool truncated = false;                     // stopped after `limit` orderings
};

/// Depth-first: a prefix is only extended by elements that keep it closed.
OrderingEnumeration compatible_orderings(const ClosureSystem& system,
                                         std::size_t limit = static_cast<std::size_t>(-1));

/// Closed sets other than the top with exactly one upper cover, canonical order.
std::vector<Mask> meet_irreducibles(const ClosureSystem& system);

/// Size of the largest antichain of meet-irreducibles under inclusion. Each
/// chain can hold at most one member of an antichain, so this bounds cdim below.
int meet_irreducible_width(const ClosureSystem& system);

struct DimensionWitness {
  int k = 0;
  std::vector<CompatibleOrdering> chains;
};

struct DimensionOptions {
  bool prune = true;
  std::size_t max_orderings = 20000;
  int max_k = 12;
  /// Pruned search: node budget per choice of first chain and per k. Each
  /// branch has its own budget, so the outcome does not depend on scheduling.
  std::uint64_t max_search_nodes = 20'000'000;
};

struct DimensionResult {
  std::optional<DimensionWitness> witness;  // empty when a bound was hit
  std::string bound_exceeded;               // reason, when witness is empty
  std::size_t orderings = 0;
  int lower_bound = 1;
  bool found() const { return witness.has_value(); }
};

/// Minimal k with k compatible orderings generating `system` exactly. The
/// witness is the lexicographically first k-subset of the orderings unless
/// the pruned search runs out of budget looking for it, in which case some
/// other valid k-subset is returned. Throws Error if the system fails
/// anti-exchange.
DimensionResult convex_dimension(const ClosureSystem& system, const DimensionOptions& options = {});

}  // namespace cgeom
