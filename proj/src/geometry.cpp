#include "cgeom/geometry.hpp"

#include <algorithm>
#include <random>

#include "cgeom/detail/parallel.hpp"

namespace cgeom {

Chain::Chain(GroundPtr ground, std::vector<int> order)
    : ground_(std::move(ground)), order_(std::move(order)) {
  const int n = ground_->size();
  if (size() != n) {
    throw InputError("chain has " + std::to_string(size()) + " elements, ground set has " +
                     std::to_string(n));
  }
  Mask seen = 0;
  for (int e : order_) {
    if (e < 0 || e >= n) throw InputError("chain element out of range");
    if (seen & bit(e)) throw InputError("chain repeats element '" + ground_->name(e) + "'");
    seen |= bit(e);
  }
}

Chain Chain::from_names(GroundPtr ground, const std::vector<std::string>& names) {
  std::vector<int> order;
  order.reserve(names.size());
  for (const auto& n : names) {
    auto idx = ground->index_of(n);
    if (!idx) throw InputError("chain mentions undeclared element '" + n + "'");
    order.push_back(*idx);
  }
  return Chain(std::move(ground), std::move(order));
}

std::string Chain::str() const {
  std::string out;
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (i) out += " < ";
    out += ground_->name(order_[i]);
  }
  return out;
}

MultiChainPresentation::MultiChainPresentation(GroundPtr ground, std::vector<Chain> chains)
    : ground_(std::move(ground)), chains_(std::move(chains)) {
  if (chains_.empty()) throw InputError("a presentation needs at least one chain");
  for (const auto& c : chains_) require_same_ground(ground_, c.ground());
}

Mask ClosureSystem::closure(Mask m) const {
  Mask result = ground()->full();
  for (Mask c : closed_) {
    if (is_subset(m, c)) result &= c;
  }
  return result;
}

bool ClosureSystem::contains_empty_and_top() const {
  return closed_.contains(0) && closed_.contains(ground()->full());
}

bool ClosureSystem::is_intersection_closed() const {
  const auto& s = closed_.sets();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (!closed_.contains(s[i] & s[j])) return false;
    }
  }
  return true;
}

SetFamily downsets(const Chain& chain) {
  std::vector<Mask> sets{0};
  Mask prefix = 0;
  for (int e : chain.order()) {
    prefix |= bit(e);
    sets.push_back(prefix);
  }
  return SetFamily(chain.ground(), std::move(sets));
}

ClosureSystem generate(const MultiChainPresentation& presentation) {
  std::vector<Mask> all;
  for (const auto& c : presentation.chains()) {
    const SetFamily d = downsets(c);
    all.insert(all.end(), d.begin(), d.end());
  }
  return ClosureSystem(intersection_closure(SetFamily(presentation.ground(), std::move(all))));
}

ESet closure(const ClosureSystem& system, const ESet& set) {
  require_same_ground(system.ground(), set.ground());
  return ESet(system.ground(), system.closure(set.bits()));
}

std::vector<Mask> closure_axiom_subsets(int n, std::uint64_t seed) {
  std::vector<Mask> subsets;
  if (n <= kExhaustiveClosureLimit) {
    subsets.resize(std::size_t{1} << n);
    for (std::size_t m = 0; m < subsets.size(); ++m) subsets[m] = m;
    std::sort(subsets.begin(), subsets.end(), canonical_less);
  } else {
    std::mt19937_64 rng(seed);
    const Mask full = full_mask(n);
    subsets.reserve(kClosureSampleCount);
    for (std::uint64_t i = 0; i < kClosureSampleCount; ++i) subsets.push_back(rng() & full);
  }
  return subsets;
}

namespace {

std::optional<ClosureAxiomViolation> closure_violation_at(const ClosureSystem& s, Mask a) {
  const Mask ca = s.closure(a);
  if (!is_subset(a, ca)) return ClosureAxiomViolation{"extensive", a, 0};
  if (s.closure(ca) != ca) return ClosureAxiomViolation{"idempotent", a, 0};
  const int n = s.ground_size();
  for (int x = 0; x < n; ++x) {
    if (a & bit(x)) continue;
    if (!is_subset(ca, s.closure(a | bit(x)))) {
      return ClosureAxiomViolation{"monotone", a, a | bit(x)};
    }
  }
  return std::nullopt;
}

}  // namespace

ClosureAxiomReport check_closure_axioms(const ClosureSystem& system, std::uint64_t seed) {
  ClosureAxiomReport report;
  const int n = system.ground_size();
  report.exhaustive = n <= kExhaustiveClosureLimit;
  if (system.closure(0) != 0) {
    report.violation = ClosureAxiomViolation{"empty", 0, 0};
    report.subsets_checked = 1;
    return report;
  }
  const std::vector<Mask> subsets = closure_axiom_subsets(n, seed);
  report.subsets_checked = subsets.size();
  report.violation = detail::first_violation<ClosureAxiomViolation>(
      static_cast<long>(subsets.size()),
      [&](long i) { return closure_violation_at(system, subsets[i]); });
  return report;
}

std::optional<AeOperatorCounterexample> check_ae_operator(const ClosureSystem& system) {
  const auto& closed = system.closed().sets();
  const int n = system.ground_size();
  return detail::first_violation<AeOperatorCounterexample>(
      static_cast<long>(closed.size()),
      [&](long i) -> std::optional<AeOperatorCounterexample> {
        const Mask k = closed[i];
        std::vector<Mask> hull(n, 0);
        for (int p = 0; p < n; ++p) {
          if (!(k & bit(p))) hull[p] = system.closure(k | bit(p));
        }
        for (int p = 0; p < n; ++p) {
          if (k & bit(p)) continue;
          for (int q = p + 1; q < n; ++q) {
            if (k & bit(q)) continue;
            if ((hull[p] & bit(q)) && (hull[q] & bit(p))) {
              return AeOperatorCounterexample{k, p, q};
            }
          }
        }
        return std::nullopt;
      });
}

std::optional<AeSeparationCounterexample> check_ae_separation(const ClosureSystem& system) {
  const auto& closed = system.closed().sets();
  const int n = system.ground_size();
  return detail::first_violation<AeSeparationCounterexample>(
      static_cast<long>(closed.size()),
      [&](long i) -> std::optional<AeSeparationCounterexample> {
        const Mask a = closed[i];
        std::vector<Mask> above;
        for (Mask b : closed) {
          if (is_subset(a, b)) above.push_back(b);
        }
        for (int x = 0; x < n; ++x) {
          if (a & bit(x)) continue;
          for (int y = x + 1; y < n; ++y) {
            if (a & bit(y)) continue;
            const Mask pair = bit(x) | bit(y);
            const bool separated = std::any_of(above.begin(), above.end(), [&](Mask b) {
              const Mask hit = b & pair;
              return hit != 0 && hit != pair;
            });
            if (!separated) return AeSeparationCounterexample{a, x, y};
          }
        }
        return std::nullopt;
      });
}

}  // namespace cgeom
