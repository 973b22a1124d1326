#pragma once

#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cgeom/core_sets.hpp"
#include "cgeom/geometry.hpp"

namespace cgeom {

/// Elements are addressed by their position in canonical order.
template <class L>
concept FiniteLattice = requires(const L& l, int i, int j) {
  { l.size() } -> std::convertible_to<int>;
  { l.join_at(i, j) } -> std::convertible_to<int>;
  { l.meet_at(i, j) } -> std::convertible_to<int>;
  { l.leq_at(i, j) } -> std::convertible_to<bool>;
  { l.covers_at(i, j) } -> std::convertible_to<bool>;
  { l.label(i) } -> std::convertible_to<std::string>;
};

/// The lattice of closed sets ordered by inclusion. Meet is intersection,
/// join is the closure of the union, both computed on demand.
class ClosedSetLattice {
 public:
  /// Throws InputError unless the family contains the empty set and the
  /// ground set and is intersection-closed.
  explicit ClosedSetLattice(ClosureSystem system);

  const ClosureSystem& system() const { return *system_; }
  const GroundPtr& ground() const { return system_->ground(); }
  int size() const { return system_->closed().size(); }
  Mask element(int i) const { return system_->closed()[i]; }
  const std::vector<Mask>& elements() const { return system_->closed().sets(); }
  std::optional<int> index_of(Mask m) const { return system_->closed().index_of(m); }
  int bottom() const { return 0; }
  int top() const { return size() - 1; }

  int meet_at(int i, int j) const;
  int join_at(int i, int j) const;
  bool leq_at(int i, int j) const { return is_subset(element(i), element(j)); }
  bool covers_at(int i, int j) const { return covers_[static_cast<std::size_t>(i) * size() + j] != 0; }
  std::string label(int i) const { return ground()->format(element(i)); }

  /// Operands must be closed; InputError otherwise.
  ESet meet(const ESet& c, const ESet& d) const;
  ESet join(const ESet& c, const ESet& d) const;

 private:
  int require_element(const ESet& s) const;

  std::shared_ptr<const ClosureSystem> system_;
  std::vector<std::uint8_t> covers_;
};

/// A lattice given by explicit tables, for structures that do not come from
/// a closure system (M3, N5 and friends) and for fast formula evaluation.
class TableLattice {
 public:
  /// `leq[i][j]` is i <= j. Throws InputError unless this is a partial order
  /// in which every pair has a least upper and a greatest lower bound.
  static TableLattice from_order(std::vector<std::string> labels,
                                 const std::vector<std::vector<bool>>& leq);

  /// Convenience: reflexive-transitive closure of the given strict relation pairs.
  static TableLattice from_hasse(std::vector<std::string> labels,
                                 const std::vector<std::pair<int, int>>& below);

  template <FiniteLattice L>
  static TableLattice from_lattice(const L& l) {
    const int m = l.size();
    TableLattice t;
    t.init(m);
    for (int i = 0; i < m; ++i) {
      t.labels_[i] = l.label(i);
      for (int j = 0; j < m; ++j) {
        t.join_[t.at(i, j)] = l.join_at(i, j);
        t.meet_[t.at(i, j)] = l.meet_at(i, j);
        t.leq_[t.at(i, j)] = l.leq_at(i, j);
        t.covers_[t.at(i, j)] = l.covers_at(i, j);
      }
    }
    return t;
  }

  int size() const { return m_; }
  int join_at(int i, int j) const { return join_[at(i, j)]; }
  int meet_at(int i, int j) const { return meet_[at(i, j)]; }
  bool leq_at(int i, int j) const { return leq_[at(i, j)] != 0; }
  bool covers_at(int i, int j) const { return covers_[at(i, j)] != 0; }
  std::string label(int i) const { return labels_[i]; }

 private:
  void init(int m);
  void fill_covers();
  std::size_t at(int i, int j) const { return static_cast<std::size_t>(i) * m_ + j; }

  int m_ = 0;
  std::vector<std::string> labels_;
  std::vector<int> join_, meet_;
  std::vector<std::uint8_t> leq_, covers_;
};

struct CoverRelation {
  std::vector<std::pair<int, int>> pairs;  // (lower, upper), lexicographic
};

template <FiniteLattice L>
CoverRelation covers(const L& l) {
  CoverRelation r;
  for (int i = 0; i < l.size(); ++i)
    for (int j = 0; j < l.size(); ++j)
      if (l.covers_at(i, j)) r.pairs.emplace_back(i, j);
  return r;
}

/// `elements` holds x, y[, z] for the failing instance of axiom `axiom` (1..8).
struct AxiomCounterexample {
  int axiom = 0;
  std::vector<int> elements;
};

struct JsdCounterexample {
  int x = 0, y = 0, z = 0;
};

struct LsmCounterexample {
  int x = 0, y = 0;
};

struct EmbeddingCounterexample {
  std::string operation;  // "join" or "meet"
  int c = 0, d = 0;
};

std::optional<AxiomCounterexample> check_axioms_1_to_8(const ClosedSetLattice& l);
std::optional<AxiomCounterexample> check_axioms_1_to_8(const TableLattice& l);
std::optional<JsdCounterexample> check_jsd(const ClosedSetLattice& l);
std::optional<JsdCounterexample> check_jsd(const TableLattice& l);
std::optional<LsmCounterexample> check_lsm(const ClosedSetLattice& l);
std::optional<LsmCounterexample> check_lsm(const TableLattice& l);

/// `map[i]` is the image of small's element i. Throws InputError when the
/// map is not total or not injective.
std::optional<EmbeddingCounterexample> is_lattice_embedding(const ClosedSetLattice& small,
                                                            const ClosedSetLattice& big,
                                                            const std::vector<int>& map);
std::optional<EmbeddingCounterexample> is_lattice_embedding(const TableLattice& small,
                                                            const TableLattice& big,
                                                            const std::vector<int>& map);

/// Re-expresses `m` over `to` by element name.
Mask translate(Mask m, const GroundSet& from, const GroundSet& to);

/// The C -> C map between closed-set lattices on nested ground sets.
/// Throws InputError if some closed set of `small` is not closed in `big`.
std::vector<int> inclusion_map(const ClosedSetLattice& small, const ClosedSetLattice& big);

namespace serial {

std::optional<AxiomCounterexample> check_axioms_1_to_8(const ClosedSetLattice& l);
std::optional<AxiomCounterexample> check_axioms_1_to_8(const TableLattice& l);
std::optional<JsdCounterexample> check_jsd(const ClosedSetLattice& l);
std::optional<JsdCounterexample> check_jsd(const TableLattice& l);
std::optional<LsmCounterexample> check_lsm(const ClosedSetLattice& l);
std::optional<LsmCounterexample> check_lsm(const TableLattice& l);
std::optional<EmbeddingCounterexample> is_lattice_embedding(const ClosedSetLattice& small,
                                                            const ClosedSetLattice& big,
                                                            const std::vector<int>& map);

}  // namespace serial

}  // namespace cgeom
