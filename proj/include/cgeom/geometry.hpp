#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgeom/core_sets.hpp"

namespace cgeom {

/// A total order on the whole ground set, least element first.
class Chain {
 public:
  Chain(GroundPtr ground, std::vector<int> order);
  static Chain from_names(GroundPtr ground, const std::vector<std::string>& names);

  const GroundPtr& ground() const { return ground_; }
  const std::vector<int>& order() const { return order_; }
  int size() const { return static_cast<int>(order_.size()); }

  /// `a < b < c`
  std::string str() const;

  friend bool operator==(const Chain& a, const Chain& b) {
    return a.order_ == b.order_ && same_ground(a.ground_, b.ground_);
  }

 private:
  GroundPtr ground_;
  std::vector<int> order_;
};

class MultiChainPresentation {
 public:
  MultiChainPresentation(GroundPtr ground, std::vector<Chain> chains);

  const GroundPtr& ground() const { return ground_; }
  const std::vector<Chain>& chains() const { return chains_; }

 private:
  GroundPtr ground_;
  std::vector<Chain> chains_;
};

/// A family of closed sets and the closure operator it induces.
///
/// Construction does not enforce the closure-system invariants so that
/// negative controls can be represented; use `is_intersection_closed`,
/// `check_closure_axioms` and the anti-exchange checks to validate.
class ClosureSystem {
 public:
  explicit ClosureSystem(SetFamily closed) : closed_(std::move(closed)) {}

  const GroundPtr& ground() const { return closed_.ground(); }
  const SetFamily& closed() const { return closed_; }
  int ground_size() const { return ground()->size(); }

  bool is_closed(Mask m) const { return closed_.contains(m); }

  /// Intersection of every closed superset; the whole ground set when none exists.
  Mask closure(Mask m) const;

  bool contains_empty_and_top() const;
  bool is_intersection_closed() const;

 private:
  SetFamily closed_;
};

SetFamily downsets(const Chain& chain);

/// Closes the union of all chain downsets under intersection.
ClosureSystem generate(const MultiChainPresentation& presentation);

ESet closure(const ClosureSystem& system, const ESet& set);

struct ClosureAxiomViolation {
  std::string axiom;  // "empty", "extensive", "monotone", "idempotent"
  Mask subset = 0;
  Mask other = 0;     // the larger set for "monotone"
};

struct ClosureAxiomReport {
  bool exhaustive = true;
  std::uint64_t subsets_checked = 0;
  std::optional<ClosureAxiomViolation> violation;
  bool ok() const { return !violation.has_value(); }
};

inline constexpr int kExhaustiveClosureLimit = 16;
inline constexpr std::uint64_t kClosureSampleCount = 100000;
inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Exhaustive over all subsets for n <= 16, otherwise a fixed-seed sample.
ClosureAxiomReport check_closure_axioms(const ClosureSystem& system,
                                        std::uint64_t seed = kDefaultSeed);

/// K closed, p and q distinct and outside K, with each in the closure of K plus the other.
struct AeOperatorCounterexample {
  Mask k = 0;
  int p = 0;
  int q = 0;
};

/// A closed, x and y outside A, and no closed B above A holding exactly one of them.
struct AeSeparationCounterexample {
  Mask a = 0;
  int x = 0;
  int y = 0;
};

std::optional<AeOperatorCounterexample> check_ae_operator(const ClosureSystem& system);
std::optional<AeSeparationCounterexample> check_ae_separation(const ClosureSystem& system);

/// Subsets visited by check_closure_axioms, in visiting order.
std::vector<Mask> closure_axiom_subsets(int n, std::uint64_t seed);

namespace serial {

ClosureAxiomReport check_closure_axioms(const ClosureSystem& system,
                                        std::uint64_t seed = kDefaultSeed);
std::optional<AeOperatorCounterexample> check_ae_operator(const ClosureSystem& system);
std::optional<AeSeparationCounterexample> check_ae_separation(const ClosureSystem& system);

}  // namespace serial

}  // namespace cgeom
