#include "cgeom/dimension.hpp"

#include <algorithm>
#include <functional>

#include "cgeom/detail/parallel.hpp"

namespace cgeom {

namespace {

/// Fixed-width bitset over meet-irreducible indices.
struct Cover {
  std::vector<std::uint64_t> words;

  explicit Cover(std::size_t n = 0) : words((n + 63) / 64, 0) {}
  void set(std::size_t i) { words[i / 64] |= std::uint64_t{1} << (i % 64); }
  Cover operator|(const Cover& o) const {
    Cover r = *this;
    for (std::size_t i = 0; i < words.size(); ++i) r.words[i] |= o.words[i];
    return r;
  }
  bool covers_all(const Cover& other, const Cover& full) const {
    for (std::size_t i = 0; i < words.size(); ++i) {
      if ((words[i] | other.words[i]) != full.words[i]) return false;
    }
    return true;
  }
  int count() const {
    int c = 0;
    for (auto w : words) c += std::popcount(w);
    return c;
  }
  bool test(std::size_t i) const { return (words[i / 64] >> (i % 64)) & 1U; }
  void assign_or(const Cover& a, const Cover& b) {
    for (std::size_t i = 0; i < words.size(); ++i) words[i] = a.words[i] | b.words[i];
  }
  bool operator==(const Cover&) const = default;
};

std::vector<int> upper_cover_counts(const std::vector<Mask>& closed) {
  std::vector<int> counts(closed.size(), 0);
  for (std::size_t i = 0; i < closed.size(); ++i) {
    for (std::size_t j = 0; j < closed.size(); ++j) {
      if (!is_proper_subset(closed[i], closed[j])) continue;
      const bool minimal = std::none_of(closed.begin(), closed.end(), [&](Mask k) {
        return is_proper_subset(closed[i], k) && is_proper_subset(k, closed[j]);
      });
      if (minimal) ++counts[i];
    }
  }
  return counts;
}

std::vector<Chain> pick(const std::vector<Chain>& all, const std::vector<int>& idx) {
  std::vector<Chain> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(all[i]);
  return out;
}

bool generates(const ClosureSystem& system, const std::vector<Chain>& chains) {
  const ClosureSystem g = generate(MultiChainPresentation(system.ground(), chains));
  return g.closed().sets() == system.closed().sets();
}

struct BranchOutcome {
  bool exhausted = false;
  std::vector<int> chosen;
};

struct PrunedOutcome {
  std::optional<std::vector<int>> chosen;
  bool exhausted = false;
};

class PrunedSearch {
 public:
  PrunedSearch(const std::vector<Chain>& orderings, const std::vector<Mask>& irreducibles)
      : m_(orderings.size()), r_(irreducibles.size()), full_(r_), cov_(m_, Cover(r_)) {
    for (std::size_t i = 0; i < r_; ++i) full_.set(i);
    for (std::size_t c = 0; c < m_; ++c) {
      auto mark = [&](Mask prefix) {
        auto it = std::lower_bound(irreducibles.begin(), irreducibles.end(), prefix, canonical_less);
        if (it != irreducibles.end() && *it == prefix) cov_[c].set(it - irreducibles.begin());
      };
      Mask prefix = 0;
      mark(prefix);
      for (int e : orderings[c].order()) {
        prefix |= bit(e);
        mark(prefix);
      }
    }
    suffix_.assign(m_ + 1, Cover(r_));
    suffix_best_.assign(m_ + 1, 0);
    for (std::size_t c = m_; c-- > 0;) {
      suffix_[c] = suffix_[c + 1] | cov_[c];
      suffix_best_[c] = std::max(suffix_best_[c + 1], cov_[c].count());
    }
    // Orderings whose prefix coverage is contained in another's never help a
    // feasibility proof; keep the lowest index of each maximal coverage.
    for (std::size_t c = 0; c < m_; ++c) {
      bool dominated = false;
      for (std::size_t d = 0; d < m_ && !dominated; ++d) {
        if (d == c) continue;
        if ((cov_[c] | cov_[d]) == cov_[d] && (cov_[c] != cov_[d] || d < c)) dominated = true;
      }
      if (!dominated) maximal_.push_back(static_cast<int>(c));
    }
    holders_.resize(r_);
    for (std::size_t i = 0; i < r_; ++i) {
      for (int c : maximal_) {
        if (cov_[c].test(i)) holders_[i].push_back(c);
      }
    }
  }

  /// Lexicographically first k-subset covering every meet-irreducible.
  PrunedOutcome lexicographic(int k, std::uint64_t budget) const {
    const int need = static_cast<int>(r_);
    auto branch = [&](long first) -> std::optional<BranchOutcome> {
      std::uint64_t nodes = 0;
      bool exhausted = false;
      std::vector<int> chosen{static_cast<int>(first)};
      std::vector<Cover> level(static_cast<std::size_t>(k) + 1, Cover(r_));
      std::function<bool(std::size_t, int)> dfs = [&](std::size_t next, int depth) -> bool {
        const Cover& got = level[depth];
        if (got == full_) return true;
        if (depth == k) return false;
        if (++nodes > budget) {
          exhausted = true;
          return false;
        }
        const int missing = need - got.count();
        for (std::size_t c = next; c < m_ && !exhausted; ++c) {
          if (!got.covers_all(suffix_[c], full_)) return false;
          if (suffix_best_[c] * (k - depth) < missing) return false;
          level[depth + 1].assign_or(got, cov_[c]);
          chosen.push_back(static_cast<int>(c));
          if (dfs(c + 1, depth + 1)) return true;
          chosen.pop_back();
        }
        return false;
      };
      if (!Cover(r_).covers_all(suffix_[first], full_)) return std::nullopt;
      level[1] = cov_[first];
      if (dfs(first + 1, 1)) return BranchOutcome{false, chosen};
      if (exhausted) return BranchOutcome{true, {}};
      return std::nullopt;
    };
    return decide(detail::first_violation<BranchOutcome>(static_cast<long>(m_), branch));
  }

  /// Any covering k-subset of maximal orderings, branching on the uncovered
  /// meet-irreducible with the fewest candidate orderings.
  PrunedOutcome feasible(int k, std::uint64_t budget) const {
    if (r_ == 0) return {std::vector<int>{maximal_.front()}, false};
    const std::size_t root = most_constrained(Cover(r_));
    const auto& options = holders_[root];
    auto branch = [&](long which) -> std::optional<BranchOutcome> {
      std::uint64_t nodes = 0;
      bool exhausted = false;
      std::vector<int> chosen{options[which]};
      std::vector<Cover> level(static_cast<std::size_t>(k) + 1, Cover(r_));
      std::function<bool(int)> dfs = [&](int depth) -> bool {
        const Cover& got = level[depth];
        if (got == full_) return true;
        if (depth == k) return false;
        if (++nodes > budget) {
          exhausted = true;
          return false;
        }
        const std::size_t pick = most_constrained(got);
        for (int c : holders_[pick]) {
          if (exhausted) break;
          level[depth + 1].assign_or(got, cov_[c]);
          chosen.push_back(c);
          if (dfs(depth + 1)) return true;
          chosen.pop_back();
        }
        return false;
      };
      level[1] = cov_[options[which]];
      if (dfs(1)) {
        std::sort(chosen.begin(), chosen.end());
        return BranchOutcome{false, chosen};
      }
      if (exhausted) return BranchOutcome{true, {}};
      return std::nullopt;
    };
    return decide(detail::first_violation<BranchOutcome>(static_cast<long>(options.size()), branch));
  }

 private:
  static PrunedOutcome decide(std::optional<BranchOutcome> decided) {
    PrunedOutcome out;
    if (decided) {
      if (decided->exhausted) {
        out.exhausted = true;
      } else {
        out.chosen = std::move(decided->chosen);
      }
    }
    return out;
  }

  std::size_t most_constrained(const Cover& got) const {
    std::size_t best = r_;
    std::size_t best_count = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < r_; ++i) {
      if (got.test(i)) continue;
      std::size_t count = 0;
      for (int c : holders_[i]) {
        if (!((cov_[c] | got) == got)) ++count;
      }
      if (count < best_count) {
        best = i;
        best_count = count;
      }
    }
    return best;
  }

  std::size_t m_, r_;
  Cover full_;
  std::vector<Cover> cov_;
  std::vector<Cover> suffix_;
  std::vector<int> suffix_best_;
  std::vector<int> maximal_;
  std::vector<std::vector<int>> holders_;
};

std::optional<std::vector<int>> search_unpruned(const ClosureSystem& system,
                                                const std::vector<Chain>& orderings, int k) {
  const int m = static_cast<int>(orderings.size());
  if (k > m) return std::nullopt;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (generates(system, pick(orderings, idx))) return idx;
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == m - k + pos) --pos;
    if (pos < 0) return std::nullopt;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace

OrderingEnumeration compatible_orderings(const ClosureSystem& system, std::size_t limit) {
  OrderingEnumeration out;
  const int n = system.ground_size();
  const Mask full = system.ground()->full();
  std::vector<int> order;
  order.reserve(n);
  std::function<void(Mask)> walk = [&](Mask prefix) {
    if (out.truncated) return;
    if (prefix == full) {
      if (out.orderings.size() >= limit) {
        out.truncated = true;
        return;
      }
      out.orderings.emplace_back(system.ground(), order);
      return;
    }
    for (int e = 0; e < n; ++e) {
      if (prefix & bit(e)) continue;
      if (!system.is_closed(prefix | bit(e))) continue;
      order.push_back(e);
      walk(prefix | bit(e));
      order.pop_back();
    }
  };
  if (system.is_closed(0)) walk(0);
  return out;
}

std::vector<Mask> meet_irreducibles(const ClosureSystem& system) {
  const auto& closed = system.closed().sets();
  const Mask top = system.ground()->full();
  const std::vector<int> counts = upper_cover_counts(closed);
  std::vector<Mask> out;
  for (std::size_t i = 0; i < closed.size(); ++i) {
    if (closed[i] != top && counts[i] == 1) out.push_back(closed[i]);
  }
  return out;
}

int meet_irreducible_width(const ClosureSystem& system) {
  const std::vector<Mask> mi = meet_irreducibles(system);
  const int r = static_cast<int>(mi.size());
  // Dilworth: width = |P| - maximum matching in the strict-order bipartite graph.
  std::vector<int> match_right(r, -1);
  std::vector<char> visited;
  std::function<bool(int)> augment = [&](int u) {
    for (int v = 0; v < r; ++v) {
      if (!is_proper_subset(mi[u], mi[v]) || visited[v]) continue;
      visited[v] = 1;
      if (match_right[v] < 0 || augment(match_right[v])) {
        match_right[v] = u;
        return true;
      }
    }
    return false;
  };
  int matching = 0;
  for (int u = 0; u < r; ++u) {
    visited.assign(r, 0);
    if (augment(u)) ++matching;
  }
  return r - matching;
}

DimensionResult convex_dimension(const ClosureSystem& system, const DimensionOptions& options) {
  if (!system.contains_empty_and_top() || !system.is_intersection_closed() ||
      check_ae_operator(system)) {
    throw Error("convex dimension is undefined: the system is not a convex geometry");
  }
  DimensionResult result;
  const OrderingEnumeration enumeration = compatible_orderings(system, options.max_orderings);
  result.orderings = enumeration.orderings.size();
  if (enumeration.truncated) {
    result.bound_exceeded = "more than " + std::to_string(options.max_orderings) +
                            " compatible orderings";
    return result;
  }
  const auto& orderings = enumeration.orderings;
  const std::vector<Mask> irreducibles = meet_irreducibles(system);
  int k_start = 1;
  if (options.prune) {
    result.lower_bound = std::max(1, meet_irreducible_width(system));
    k_start = result.lower_bound;
  }
  std::optional<PrunedSearch> search;
  if (options.prune) search.emplace(orderings, irreducibles);
  for (int k = k_start; k <= options.max_k; ++k) {
    std::optional<std::vector<int>> chosen;
    if (options.prune) {
      const PrunedOutcome feasible = search->feasible(k, options.max_search_nodes);
      if (feasible.exhausted) {
        result.bound_exceeded = "search budget of " + std::to_string(options.max_search_nodes) +
                                " nodes per branch exhausted at k = " + std::to_string(k);
        return result;
      }
      if (!feasible.chosen) continue;
      PrunedOutcome first = search->lexicographic(k, options.max_search_nodes);
      chosen = first.chosen ? std::move(first.chosen) : feasible.chosen;
    } else {
      chosen = search_unpruned(system, orderings, k);
    }
    if (!chosen) continue;
    std::vector<Chain> chains = pick(orderings, *chosen);
    if (!generates(system, chains)) {
      throw Error("internal: dimension witness does not generate the system");
    }
    result.witness = DimensionWitness{static_cast<int>(chains.size()), std::move(chains)};
    return result;
  }
  result.bound_exceeded = "convex dimension exceeds " + std::to_string(options.max_k);
  return result;
}

}  // namespace cgeom
