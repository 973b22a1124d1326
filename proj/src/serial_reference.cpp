// Single-threaded reference versions of the exhaustive checks. They visit
// tuples in the same canonical order as the parallel kernels and are kept
// deliberately plain so tests can compare the two.

#include <set>

#include "cgeom/geometry.hpp"
#include "cgeom/lattice.hpp"

namespace cgeom::serial {

ClosureAxiomReport check_closure_axioms(const ClosureSystem& system, std::uint64_t seed) {
  ClosureAxiomReport report;
  const int n = system.ground_size();
  report.exhaustive = n <= kExhaustiveClosureLimit;
  report.subsets_checked = 1;
  if (system.closure(0) != 0) {
    report.violation = ClosureAxiomViolation{"empty", 0, 0};
    return report;
  }
  const std::vector<Mask> subsets = closure_axiom_subsets(n, seed);
  report.subsets_checked = subsets.size();
  for (Mask a : subsets) {
    const Mask ca = system.closure(a);
    if ((a & ca) != a) {
      report.violation = ClosureAxiomViolation{"extensive", a, 0};
      return report;
    }
    if (system.closure(ca) != ca) {
      report.violation = ClosureAxiomViolation{"idempotent", a, 0};
      return report;
    }
    for (int x = 0; x < n; ++x) {
      const Mask b = a | bit(x);
      if (b == a) continue;
      if ((ca & system.closure(b)) != ca) {
        report.violation = ClosureAxiomViolation{"monotone", a, b};
        return report;
      }
    }
  }
  return report;
}

std::optional<AeOperatorCounterexample> check_ae_operator(const ClosureSystem& system) {
  const int n = system.ground_size();
  for (Mask k : system.closed()) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if ((k & bit(p)) || (k & bit(q))) continue;
        const bool q_in = (system.closure(k | bit(p)) & bit(q)) != 0;
        const bool p_in = (system.closure(k | bit(q)) & bit(p)) != 0;
        if (q_in && p_in) return AeOperatorCounterexample{k, p, q};
      }
    }
  }
  return std::nullopt;
}

std::optional<AeSeparationCounterexample> check_ae_separation(const ClosureSystem& system) {
  const int n = system.ground_size();
  for (Mask a : system.closed()) {
    for (int x = 0; x < n; ++x) {
      for (int y = x + 1; y < n; ++y) {
        if ((a & bit(x)) || (a & bit(y))) continue;
        bool separated = false;
        for (Mask b : system.closed()) {
          if ((a & b) != a) continue;
          const bool hx = (b & bit(x)) != 0;
          const bool hy = (b & bit(y)) != 0;
          if (hx != hy) {
            separated = true;
            break;
          }
        }
        if (!separated) return AeSeparationCounterexample{a, x, y};
      }
    }
  }
  return std::nullopt;
}

namespace {

template <class L>
std::optional<AxiomCounterexample> axioms(const L& l) {
  const int m = l.size();
  for (int x = 0; x < m; ++x)
    if (l.join_at(x, x) != x) return AxiomCounterexample{1, {x}};
  for (int x = 0; x < m; ++x)
    if (l.meet_at(x, x) != x) return AxiomCounterexample{2, {x}};
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (l.join_at(x, y) != l.join_at(y, x)) return AxiomCounterexample{3, {x, y}};
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (l.meet_at(x, y) != l.meet_at(y, x)) return AxiomCounterexample{4, {x, y}};
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (l.meet_at(l.join_at(x, y), y) != y) return AxiomCounterexample{5, {x, y}};
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (l.join_at(l.meet_at(x, y), y) != y) return AxiomCounterexample{6, {x, y}};
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z)
        if (l.join_at(l.join_at(x, y), z) != l.join_at(x, l.join_at(y, z)))
          return AxiomCounterexample{7, {x, y, z}};
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z)
        if (l.meet_at(l.meet_at(x, y), z) != l.meet_at(x, l.meet_at(y, z)))
          return AxiomCounterexample{8, {x, y, z}};
  return std::nullopt;
}

template <class L>
std::optional<JsdCounterexample> jsd(const L& l) {
  const int m = l.size();
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z) {
        const int xy = l.join_at(x, y);
        const int xz = l.join_at(x, z);
        if (xy == xz && l.join_at(x, l.meet_at(y, z)) != l.meet_at(xy, xz)) {
          return JsdCounterexample{x, y, z};
        }
      }
  return std::nullopt;
}

// Covering decided from the order alone rather than the cached cover table.
template <class L>
bool covered_by(const L& l, int lo, int hi) {
  if (lo == hi || !l.leq_at(lo, hi)) return false;
  for (int k = 0; k < l.size(); ++k) {
    if (k != lo && k != hi && l.leq_at(lo, k) && l.leq_at(k, hi)) return false;
  }
  return true;
}

template <class L>
std::optional<LsmCounterexample> lsm(const L& l) {
  const int m = l.size();
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (covered_by(l, x, l.join_at(x, y)) && !covered_by(l, l.meet_at(x, y), y)) {
        return LsmCounterexample{x, y};
      }
  return std::nullopt;
}

}  // namespace

std::optional<AxiomCounterexample> check_axioms_1_to_8(const ClosedSetLattice& l) { return axioms(l); }
std::optional<AxiomCounterexample> check_axioms_1_to_8(const TableLattice& l) { return axioms(l); }
std::optional<JsdCounterexample> check_jsd(const ClosedSetLattice& l) { return jsd(l); }
std::optional<JsdCounterexample> check_jsd(const TableLattice& l) { return jsd(l); }
std::optional<LsmCounterexample> check_lsm(const ClosedSetLattice& l) { return lsm(l); }
std::optional<LsmCounterexample> check_lsm(const TableLattice& l) { return lsm(l); }

std::optional<EmbeddingCounterexample> is_lattice_embedding(const ClosedSetLattice& small,
                                                            const ClosedSetLattice& big,
                                                            const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != small.size()) {
    throw InputError("embedding map is not total on the smaller lattice");
  }
  if (std::set<int>(map.begin(), map.end()).size() != map.size()) {
    throw InputError("embedding map is not injective");
  }
  for (int v : map) {
    if (v < 0 || v >= big.size()) throw InputError("embedding map points outside the larger lattice");
  }
  for (int c = 0; c < small.size(); ++c) {
    for (int d = 0; d < small.size(); ++d) {
      if (map[small.join_at(c, d)] != big.join_at(map[c], map[d])) {
        return EmbeddingCounterexample{"join", c, d};
      }
      if (map[small.meet_at(c, d)] != big.meet_at(map[c], map[d])) {
        return EmbeddingCounterexample{"meet", c, d};
      }
    }
  }
  return std::nullopt;
}

}  // namespace cgeom::serial
