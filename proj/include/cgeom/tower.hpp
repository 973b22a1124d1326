#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgeom/geometry.hpp"
#include "cgeom/lattice.hpp"

namespace cgeom {

/// How the extra chain of the next stage is formed from the first chain.
enum class ExtensionVariant {
  kPaperExample,  // new element, then the first chain in its original order
  kReversed,      // new element, then the first chain reversed
};

std::string to_string(ExtensionVariant v);
ExtensionVariant parse_variant(const std::string& text);

struct TowerStage {
  int index = 1;
  MultiChainPresentation presentation;
  ClosedSetLattice lattice;

  const ClosureSystem& system() const { return lattice.system(); }
  const GroundPtr& ground() const { return presentation.ground(); }
};

TowerStage make_stage(int index, MultiChainPresentation presentation);

/// A postcondition of the extension step that did not hold.
class TowerViolation : public Error {
 public:
  TowerViolation(int stage, std::string what)
      : Error("stage " + std::to_string(stage) + ": " + what), stage_(stage) {}
  int stage() const { return stage_; }

 private:
  int stage_;
};

/// First unused single letter a..z, then x1, x2, ...
std::string next_element_name(const GroundSet& ground);

/// Appends a fresh element to every chain and adds one chain headed by it.
/// Verifies strict growth of the closed family, that the new singleton is
/// closed, that C -> C is a lattice embedding, and anti-exchange, JSD and
/// LSM on the result; throws TowerViolation otherwise.
TowerStage extend(const TowerStage& stage, ExtensionVariant variant);

class Tower {
 public:
  Tower(MultiChainPresentation seed, ExtensionVariant variant);

  /// Builds and verifies stages until `count` exist, including functoriality
  /// of the composed inclusions.
  void extend_to(int count);

  int size() const { return static_cast<int>(stages_.size()); }
  ExtensionVariant variant() const { return variant_; }
  const TowerStage& stage(int index) const;  // 1-based
  const std::vector<TowerStage>& stages() const { return stages_; }

  /// The inclusion of stage i into stage j (i <= j), as element indices.
  std::vector<int> inclusion(int i, int j) const;

 private:
  ExtensionVariant variant_;
  std::vector<TowerStage> stages_;
  std::vector<std::vector<int>> step_maps_;  // step_maps_[i]: stage i+1 -> i+2
};

Tower build_tower(const MultiChainPresentation& seed, int count, ExtensionVariant variant);

/// An element of the union: a closed set together with a stage where it lives.
/// Ground indices are stable across stages, so the mask means the same set
/// at every later stage.
struct LimitElement {
  int stage = 1;
  Mask set = 0;
  friend bool operator==(const LimitElement&, const LimitElement&) = default;
};

class HorizonExceeded : public Error {
 public:
  explicit HorizonExceeded(int requested, int horizon)
      : Error("stage " + std::to_string(requested) + " is beyond the materialized horizon " +
              std::to_string(horizon)) {}
};

struct CoverStability {
  std::vector<int> stages;
  std::vector<bool> covered;
  std::optional<int> first_broken;  // first stage where a present cover is lost
};

/// Horizon-bounded view of the union of the tower.
class LimitGeometry {
 public:
  explicit LimitGeometry(Tower tower) : tower_(std::move(tower)) {}

  const Tower& tower() const { return tower_; }
  int horizon() const { return tower_.size(); }
  void extend_horizon(int count) { tower_.extend_to(count); }

  /// Least stage at which `set` is closed. Throws InputError if it is closed
  /// at no materialized stage.
  int least_stage(Mask set) const;
  LimitElement canonical(Mask set) const { return {least_stage(set), set}; }

  /// Throws InputError when `e.set` is not closed at `e.stage`.
  void validate(const LimitElement& e) const;

  LimitElement join(const LimitElement& a, const LimitElement& b) const;
  LimitElement meet(const LimitElement& a, const LimitElement& b) const;

  Mask join_at_stage(Mask a, Mask b, int stage) const;
  Mask meet_at_stage(Mask a, Mask b, int stage) const;

  /// True iff join(a, b) computed at every stage from max(stage) to the
  /// horizon is the same set.
  bool join_stable(const LimitElement& a, const LimitElement& b) const;
  bool meet_stable(const LimitElement& a, const LimitElement& b) const;

  bool cover_at_stage(Mask lower, Mask upper, int stage) const;
  CoverStability cover_stability(const LimitElement& lower, const LimitElement& upper,
                                 int horizon) const;

 private:
  void require_stage(int s) const;

  Tower tower_;
};

}  // namespace cgeom
