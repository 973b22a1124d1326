#include "cgeom/tower.hpp"

#include <algorithm>

namespace cgeom {

std::string to_string(ExtensionVariant v) {
  return v == ExtensionVariant::kPaperExample ? "paper-example" : "reversed";
}

ExtensionVariant parse_variant(const std::string& text) {
  if (text == "paper-example") return ExtensionVariant::kPaperExample;
  if (text == "reversed") return ExtensionVariant::kReversed;
  throw InputError("unknown variant '" + text + "' (expected paper-example or reversed)");
}

TowerStage make_stage(int index, MultiChainPresentation presentation) {
  ClosedSetLattice lattice(generate(presentation));
  return TowerStage{index, std::move(presentation), std::move(lattice)};
}

std::string next_element_name(const GroundSet& ground) {
  for (char c = 'a'; c <= 'z'; ++c) {
    const std::string name(1, c);
    if (!ground.index_of(name)) return name;
  }
  for (int i = 1;; ++i) {
    const std::string name = "x" + std::to_string(i);
    if (!ground.index_of(name)) return name;
  }
}

TowerStage extend(const TowerStage& stage, ExtensionVariant variant) {
  const GroundSet& old_ground = *stage.ground();
  const int fresh = old_ground.size();
  const int next_index = stage.index + 1;
  if (fresh >= kMaxGroundSize) {
    throw TowerViolation(next_index, "ground set would exceed 64 elements");
  }
  GroundPtr ground =
      std::make_shared<const GroundSet>(old_ground.with_element(next_element_name(old_ground)));

  std::vector<Chain> chains;
  for (const Chain& c : stage.presentation.chains()) {
    std::vector<int> order = c.order();
    order.push_back(fresh);
    chains.emplace_back(ground, std::move(order));
  }
  std::vector<int> head = stage.presentation.chains().front().order();
  if (variant == ExtensionVariant::kReversed) std::reverse(head.begin(), head.end());
  head.insert(head.begin(), fresh);
  chains.emplace_back(ground, std::move(head));

  TowerStage next = make_stage(next_index, MultiChainPresentation(ground, std::move(chains)));

  const auto& old_sets = stage.system().closed().sets();
  const bool included = std::all_of(old_sets.begin(), old_sets.end(),
                                    [&](Mask m) { return next.system().is_closed(m); });
  if (!included) throw TowerViolation(next_index, "closed family does not contain its predecessor");
  if (next.system().closed().size() <= stage.system().closed().size()) {
    throw TowerViolation(next_index, "closed family did not grow strictly");
  }
  if (!next.system().is_closed(bit(fresh))) {
    throw TowerViolation(next_index, "the new singleton is not closed");
  }
  if (auto cex = is_lattice_embedding(stage.lattice, next.lattice,
                                      inclusion_map(stage.lattice, next.lattice))) {
    throw TowerViolation(next_index, "inclusion does not preserve " + cex->operation + " of " +
                                         stage.lattice.label(cex->c) + " and " +
                                         stage.lattice.label(cex->d));
  }
  if (check_ae_operator(next.system())) throw TowerViolation(next_index, "anti-exchange fails");
  if (check_jsd(next.lattice)) throw TowerViolation(next_index, "JSD fails");
  if (check_lsm(next.lattice)) throw TowerViolation(next_index, "LSM fails");
  return next;
}

Tower::Tower(MultiChainPresentation seed, ExtensionVariant variant) : variant_(variant) {
  TowerStage first = make_stage(1, std::move(seed));
  if (check_ae_operator(first.system())) {
    throw TowerViolation(1, "seed does not generate a convex geometry");
  }
  stages_.push_back(std::move(first));
}

const TowerStage& Tower::stage(int index) const {
  if (index < 1 || index > size()) {
    throw InputError("no stage " + std::to_string(index) + " (tower has " +
                     std::to_string(size()) + ")");
  }
  return stages_[index - 1];
}

std::vector<int> Tower::inclusion(int i, int j) const {
  if (i > j) throw InputError("inclusion needs i <= j");
  std::vector<int> map(stage(i).lattice.size());
  for (std::size_t e = 0; e < map.size(); ++e) map[e] = static_cast<int>(e);
  stage(j);
  for (int s = i; s < j; ++s) {
    for (int& v : map) v = step_maps_[s - 1][v];
  }
  return map;
}

void Tower::extend_to(int count) {
  if (count < 1) throw InputError("a tower needs at least one stage");
  const int before = size();
  while (size() < count) {
    TowerStage next = extend(stages_.back(), variant_);
    step_maps_.push_back(inclusion_map(stages_.back().lattice, next.lattice));
    stages_.push_back(std::move(next));
  }
  // f_ik = f_jk o f_ij, checked against the direct name-based inclusion.
  for (int k = std::max(before + 1, 2); k <= size(); ++k) {
    for (int i = 1; i <= k; ++i) {
      const std::vector<int> direct = inclusion_map(stage(i).lattice, stage(k).lattice);
      for (int j = i; j <= k; ++j) {
        std::vector<int> composed = inclusion(i, j);
        const std::vector<int> jk = inclusion(j, k);
        for (int& v : composed) v = jk[v];
        if (composed != direct) {
          throw TowerViolation(k, "composed inclusions " + std::to_string(i) + "->" +
                                      std::to_string(j) + "->" + std::to_string(k) +
                                      " disagree with the direct inclusion");
        }
      }
    }
  }
}

Tower build_tower(const MultiChainPresentation& seed, int count, ExtensionVariant variant) {
  Tower tower(seed, variant);
  tower.extend_to(count);
  return tower;
}

void LimitGeometry::require_stage(int s) const {
  if (s < 1) throw InputError("stages are numbered from 1");
  if (s > horizon()) throw HorizonExceeded(s, horizon());
}

int LimitGeometry::least_stage(Mask set) const {
  for (int s = 1; s <= horizon(); ++s) {
    if (tower_.stage(s).system().is_closed(set)) return s;
  }
  throw InputError("set is not closed at any stage up to the horizon");
}

void LimitGeometry::validate(const LimitElement& e) const {
  require_stage(e.stage);
  const auto& st = tower_.stage(e.stage);
  if (!st.system().is_closed(e.set)) {
    throw InputError("set is not closed at stage " + std::to_string(e.stage));
  }
}

Mask LimitGeometry::join_at_stage(Mask a, Mask b, int stage) const {
  require_stage(stage);
  const auto& sys = tower_.stage(stage).system();
  if (!sys.is_closed(a) || !sys.is_closed(b)) {
    throw InputError("operand not closed at stage " + std::to_string(stage));
  }
  return sys.closure(a | b);
}

Mask LimitGeometry::meet_at_stage(Mask a, Mask b, int stage) const {
  require_stage(stage);
  const auto& sys = tower_.stage(stage).system();
  if (!sys.is_closed(a) || !sys.is_closed(b)) {
    throw InputError("operand not closed at stage " + std::to_string(stage));
  }
  return a & b;
}

LimitElement LimitGeometry::join(const LimitElement& a, const LimitElement& b) const {
  validate(a);
  validate(b);
  return canonical(join_at_stage(a.set, b.set, std::max(a.stage, b.stage)));
}

LimitElement LimitGeometry::meet(const LimitElement& a, const LimitElement& b) const {
  validate(a);
  validate(b);
  return canonical(meet_at_stage(a.set, b.set, std::max(a.stage, b.stage)));
}

bool LimitGeometry::join_stable(const LimitElement& a, const LimitElement& b) const {
  const LimitElement j = join(a, b);
  for (int s = std::max(a.stage, b.stage); s <= horizon(); ++s) {
    if (join_at_stage(a.set, b.set, s) != j.set) return false;
  }
  return true;
}

bool LimitGeometry::meet_stable(const LimitElement& a, const LimitElement& b) const {
  const LimitElement m = meet(a, b);
  for (int s = std::max(a.stage, b.stage); s <= horizon(); ++s) {
    if (meet_at_stage(a.set, b.set, s) != m.set) return false;
  }
  return true;
}

bool LimitGeometry::cover_at_stage(Mask lower, Mask upper, int stage) const {
  require_stage(stage);
  const ClosedSetLattice& l = tower_.stage(stage).lattice;
  auto lo = l.index_of(lower);
  auto hi = l.index_of(upper);
  if (!lo || !hi) throw InputError("operand not closed at stage " + std::to_string(stage));
  return l.covers_at(*lo, *hi);
}

CoverStability LimitGeometry::cover_stability(const LimitElement& lower, const LimitElement& upper,
                                              int until) const {
  validate(lower);
  validate(upper);
  require_stage(until);
  CoverStability out;
  bool seen = false;
  for (int s = std::max(lower.stage, upper.stage); s <= until; ++s) {
    const bool c = cover_at_stage(lower.set, upper.set, s);
    out.stages.push_back(s);
    out.covered.push_back(c);
    if (c) seen = true;
    if (seen && !c && !out.first_broken) out.first_broken = s;
  }
  return out;
}

}  // namespace cgeom
