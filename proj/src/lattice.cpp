#include "cgeom/lattice.hpp"

#include <algorithm>
#include <set>

#include "cgeom/detail/parallel.hpp"

namespace cgeom {

ClosedSetLattice::ClosedSetLattice(ClosureSystem system)
    : system_(std::make_shared<const ClosureSystem>(std::move(system))) {
  if (!system_->contains_empty_and_top()) {
    throw InputError("closed-set lattice needs the empty set and the ground set to be closed");
  }
  if (!system_->is_intersection_closed()) {
    throw InputError("closed-set lattice needs an intersection-closed family");
  }
  const int m = size();
  covers_.assign(static_cast<std::size_t>(m) * m, 0);
  const auto& e = elements();
  std::vector<int> above;
  for (int i = 0; i < m; ++i) {
    above.clear();
    for (int j = 0; j < m; ++j) {
      if (is_proper_subset(e[i], e[j])) above.push_back(j);
    }
    for (int j : above) {
      const bool minimal = std::none_of(above.begin(), above.end(), [&](int k) {
        return is_proper_subset(e[k], e[j]);
      });
      if (minimal) covers_[static_cast<std::size_t>(i) * m + j] = 1;
    }
  }
}

int ClosedSetLattice::meet_at(int i, int j) const { return *index_of(element(i) & element(j)); }

int ClosedSetLattice::join_at(int i, int j) const {
  return *index_of(system_->closure(element(i) | element(j)));
}

int ClosedSetLattice::require_element(const ESet& s) const {
  require_same_ground(ground(), s.ground());
  auto idx = index_of(s.bits());
  if (!idx) throw InputError("operand " + s.str() + " is not closed");
  return *idx;
}

ESet ClosedSetLattice::meet(const ESet& c, const ESet& d) const {
  return ESet(ground(), element(meet_at(require_element(c), require_element(d))));
}

ESet ClosedSetLattice::join(const ESet& c, const ESet& d) const {
  return ESet(ground(), element(join_at(require_element(c), require_element(d))));
}

void TableLattice::init(int m) {
  m_ = m;
  const auto cells = static_cast<std::size_t>(m) * m;
  labels_.assign(m, "");
  join_.assign(cells, 0);
  meet_.assign(cells, 0);
  leq_.assign(cells, 0);
  covers_.assign(cells, 0);
}

void TableLattice::fill_covers() {
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < m_; ++j) {
      if (i == j || !leq_at(i, j)) continue;
      bool between = false;
      for (int k = 0; k < m_ && !between; ++k) {
        between = k != i && k != j && leq_at(i, k) && leq_at(k, j);
      }
      covers_[at(i, j)] = !between;
    }
  }
}

TableLattice TableLattice::from_order(std::vector<std::string> labels,
                                      const std::vector<std::vector<bool>>& leq) {
  const int m = static_cast<int>(labels.size());
  if (m == 0) throw InputError("a lattice needs at least one element");
  if (static_cast<int>(leq.size()) != m) throw InputError("order matrix has the wrong size");
  for (const auto& row : leq) {
    if (static_cast<int>(row.size()) != m) throw InputError("order matrix has the wrong size");
  }
  for (int i = 0; i < m; ++i) {
    if (!leq[i][i]) throw InputError("order is not reflexive");
    for (int j = 0; j < m; ++j) {
      if (i != j && leq[i][j] && leq[j][i]) throw InputError("order is not antisymmetric");
      for (int k = 0; k < m; ++k) {
        if (leq[i][j] && leq[j][k] && !leq[i][k]) throw InputError("order is not transitive");
      }
    }
  }
  TableLattice t;
  t.init(m);
  t.labels_ = std::move(labels);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t.leq_[t.at(i, j)] = leq[i][j];

  auto extremal_bound = [&](int i, int j, bool upper) {
    std::vector<int> bounds;
    for (int k = 0; k < m; ++k) {
      if (upper ? (leq[i][k] && leq[j][k]) : (leq[k][i] && leq[k][j])) bounds.push_back(k);
    }
    for (int b : bounds) {
      const bool best = std::all_of(bounds.begin(), bounds.end(),
                                    [&](int o) { return upper ? leq[b][o] : leq[o][b]; });
      if (best) return b;
    }
    throw InputError("elements " + t.labels_[i] + " and " + t.labels_[j] + " have no " +
                     (upper ? "join" : "meet"));
  };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      t.join_[t.at(i, j)] = extremal_bound(i, j, true);
      t.meet_[t.at(i, j)] = extremal_bound(i, j, false);
    }
  }
  t.fill_covers();
  return t;
}

TableLattice TableLattice::from_hasse(std::vector<std::string> labels,
                                      const std::vector<std::pair<int, int>>& below) {
  const int m = static_cast<int>(labels.size());
  std::vector<std::vector<bool>> leq(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i) leq[i][i] = true;
  for (auto [lo, hi] : below) {
    if (lo < 0 || hi < 0 || lo >= m || hi >= m) throw InputError("Hasse edge out of range");
    leq[lo][hi] = true;
  }
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  return from_order(std::move(labels), leq);
}

namespace {

template <FiniteLattice L>
std::optional<AxiomCounterexample> axioms_parallel(const L& l) {
  const int m = l.size();
  auto J = [&](int a, int b) { return l.join_at(a, b); };
  auto M = [&](int a, int b) { return l.meet_at(a, b); };
  for (int axiom = 1; axiom <= 8; ++axiom) {
    auto r = detail::first_violation<AxiomCounterexample>(
        m, [&](long xl) -> std::optional<AxiomCounterexample> {
          const int x = static_cast<int>(xl);
          switch (axiom) {
            case 1:
              if (J(x, x) != x) return AxiomCounterexample{1, {x}};
              return std::nullopt;
            case 2:
              if (M(x, x) != x) return AxiomCounterexample{2, {x}};
              return std::nullopt;
            default:
              break;
          }
          for (int y = 0; y < m; ++y) {
            bool bad = false;
            switch (axiom) {
              case 3: bad = J(x, y) != J(y, x); break;
              case 4: bad = M(x, y) != M(y, x); break;
              case 5: bad = M(J(x, y), y) != y; break;
              case 6: bad = J(M(x, y), y) != y; break;
              case 7:
              case 8:
                for (int z = 0; z < m; ++z) {
                  const bool fails = axiom == 7 ? J(J(x, y), z) != J(x, J(y, z))
                                                : M(M(x, y), z) != M(x, M(y, z));
                  if (fails) return AxiomCounterexample{axiom, {x, y, z}};
                }
                break;
            }
            if (bad) return AxiomCounterexample{axiom, {x, y}};
          }
          return std::nullopt;
        });
    if (r) return r;
  }
  return std::nullopt;
}

template <FiniteLattice L>
std::optional<JsdCounterexample> jsd_parallel(const L& l) {
  const int m = l.size();
  return detail::first_violation<JsdCounterexample>(
      m, [&](long xl) -> std::optional<JsdCounterexample> {
        const int x = static_cast<int>(xl);
        for (int y = 0; y < m; ++y) {
          const int xy = l.join_at(x, y);
          for (int z = 0; z < m; ++z) {
            const int xz = l.join_at(x, z);
            if (xy != xz) continue;
            if (l.join_at(x, l.meet_at(y, z)) != l.meet_at(xy, xz)) {
              return JsdCounterexample{x, y, z};
            }
          }
        }
        return std::nullopt;
      });
}

template <FiniteLattice L>
std::optional<LsmCounterexample> lsm_parallel(const L& l) {
  const int m = l.size();
  return detail::first_violation<LsmCounterexample>(
      m, [&](long xl) -> std::optional<LsmCounterexample> {
        const int x = static_cast<int>(xl);
        for (int y = 0; y < m; ++y) {
          if (l.covers_at(x, l.join_at(x, y)) && !l.covers_at(l.meet_at(x, y), y)) {
            return LsmCounterexample{x, y};
          }
        }
        return std::nullopt;
      });
}

template <FiniteLattice L>
void require_injective_total(const L& small, const L& big, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != small.size()) {
    throw InputError("embedding map is not total on the smaller lattice");
  }
  std::set<int> image;
  for (int v : map) {
    if (v < 0 || v >= big.size()) throw InputError("embedding map points outside the larger lattice");
    if (!image.insert(v).second) throw InputError("embedding map is not injective");
  }
}

template <FiniteLattice L>
std::optional<EmbeddingCounterexample> embedding_parallel(const L& small, const L& big,
                                                          const std::vector<int>& map) {
  require_injective_total(small, big, map);
  const int m = small.size();
  return detail::first_violation<EmbeddingCounterexample>(
      m, [&](long cl) -> std::optional<EmbeddingCounterexample> {
        const int c = static_cast<int>(cl);
        for (int d = 0; d < m; ++d) {
          if (map[small.join_at(c, d)] != big.join_at(map[c], map[d])) {
            return EmbeddingCounterexample{"join", c, d};
          }
          if (map[small.meet_at(c, d)] != big.meet_at(map[c], map[d])) {
            return EmbeddingCounterexample{"meet", c, d};
          }
        }
        return std::nullopt;
      });
}

}  // namespace

std::optional<AxiomCounterexample> check_axioms_1_to_8(const ClosedSetLattice& l) { return axioms_parallel(l); }
std::optional<AxiomCounterexample> check_axioms_1_to_8(const TableLattice& l) { return axioms_parallel(l); }
std::optional<JsdCounterexample> check_jsd(const ClosedSetLattice& l) { return jsd_parallel(l); }
std::optional<JsdCounterexample> check_jsd(const TableLattice& l) { return jsd_parallel(l); }
std::optional<LsmCounterexample> check_lsm(const ClosedSetLattice& l) { return lsm_parallel(l); }
std::optional<LsmCounterexample> check_lsm(const TableLattice& l) { return lsm_parallel(l); }

std::optional<EmbeddingCounterexample> is_lattice_embedding(const ClosedSetLattice& small,
                                                            const ClosedSetLattice& big,
                                                            const std::vector<int>& map) {
  return embedding_parallel(small, big, map);
}

std::optional<EmbeddingCounterexample> is_lattice_embedding(const TableLattice& small,
                                                            const TableLattice& big,
                                                            const std::vector<int>& map) {
  return embedding_parallel(small, big, map);
}

Mask translate(Mask m, const GroundSet& from, const GroundSet& to) {
  Mask out = 0;
  for (int i : members_of(m)) {
    auto j = to.index_of(from.name(i));
    if (!j) throw InputError("element '" + from.name(i) + "' is missing from the target ground set");
    out |= bit(*j);
  }
  return out;
}

std::vector<int> inclusion_map(const ClosedSetLattice& small, const ClosedSetLattice& big) {
  std::vector<int> map;
  map.reserve(small.size());
  for (Mask c : small.elements()) {
    const Mask image = translate(c, *small.ground(), *big.ground());
    auto idx = big.index_of(image);
    if (!idx) {
      throw InputError("closed set " + small.ground()->format(c) +
                       " is not closed in the larger system");
    }
    map.push_back(*idx);
  }
  return map;
}

}  // namespace cgeom
