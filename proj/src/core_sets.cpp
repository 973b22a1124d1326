#include "cgeom/core_sets.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace cgeom {

std::vector<int> members_of(Mask m) {
  std::vector<int> out;
  out.reserve(popcount(m));
  while (m != 0) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

GroundSet::GroundSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw InputError("ground set must be nonempty");
  if (names_.size() > kMaxGroundSize) {
    throw InputError("ground set has " + std::to_string(names_.size()) +
                     " elements; at most 64 are supported");
  }
  for (int i = 0; i < size(); ++i) {
    const std::string& n = names_[i];
    if (n.empty()) throw InputError("empty element name");
    for (char c : n) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',' || c == '{' ||
          c == '}' || c == '@') {
        throw InputError("element name '" + n + "' contains a reserved character");
      }
    }
    if (!index_.emplace(n, i).second) throw InputError("duplicate element name '" + n + "'");
  }
}

std::optional<int> GroundSet::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GroundSet GroundSet::with_element(std::string name) const {
  std::vector<std::string> names = names_;
  names.push_back(std::move(name));
  return GroundSet(std::move(names));
}

std::string GroundSet::format(Mask m) const {
  std::string out = "{";
  bool first = true;
  for (int i : members_of(m)) {
    if (!first) out += ',';
    out += names_.at(i);
    first = false;
  }
  out += '}';
  return out;
}

Mask GroundSet::parse(std::string_view text) const {
  std::string_view body = text;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  body = trim(body);
  if (!body.empty() && body.front() == '{') {
    if (body.back() != '}') throw InputError("unterminated set literal '" + std::string(text) + "'");
    body = trim(body.substr(1, body.size() - 2));
  }
  Mask m = 0;
  while (!body.empty()) {
    const auto comma = body.find(',');
    std::string_view tok = trim(body.substr(0, comma));
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    if (tok.empty()) throw InputError("empty name in set literal '" + std::string(text) + "'");
    auto idx = index_of(tok);
    if (!idx) throw InputError("unknown element '" + std::string(tok) + "'");
    m |= bit(*idx);
  }
  return m;
}

GroundPtr make_ground(std::vector<std::string> names) {
  return std::make_shared<const GroundSet>(std::move(names));
}

bool same_ground(const GroundPtr& a, const GroundPtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_ground(const GroundPtr& a, const GroundPtr& b) {
  if (!same_ground(a, b)) throw InputError("ground-set mismatch");
}

ESet::ESet(GroundPtr ground, Mask bits) : ground_(std::move(ground)), bits_(bits) {
  if (!ground_) throw InputError("ESet needs a ground set");
  if (!is_subset(bits_, ground_->full())) throw InputError("ESet member outside the ground set");
}

ESet ESet::from_names(GroundPtr ground, std::span<const std::string> names) {
  Mask m = 0;
  for (const auto& n : names) {
    auto idx = ground->index_of(n);
    if (!idx) throw InputError("unknown element '" + n + "'");
    m |= bit(*idx);
  }
  return ESet(std::move(ground), m);
}

ESet ESet::parse(GroundPtr ground, std::string_view text) {
  const Mask m = ground->parse(text);
  return ESet(std::move(ground), m);
}

SetFamily::SetFamily(GroundPtr ground, std::vector<Mask> sets)
    : ground_(std::move(ground)), sets_(std::move(sets)) {
  const Mask full = ground_->full();
  for (Mask m : sets_) {
    if (!is_subset(m, full)) throw InputError("family member outside the ground set");
  }
  std::sort(sets_.begin(), sets_.end(), canonical_less);
  sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
}

bool SetFamily::contains(Mask m) const { return index_of(m).has_value(); }

std::optional<int> SetFamily::index_of(Mask m) const {
  auto it = std::lower_bound(sets_.begin(), sets_.end(), m, canonical_less);
  if (it == sets_.end() || *it != m) return std::nullopt;
  return static_cast<int>(it - sets_.begin());
}

std::string SetFamily::str() const {
  std::ostringstream os;
  for (Mask m : sets_) os << ground_->format(m) << '\n';
  return os.str();
}

SetFamily intersection_closure(const SetFamily& family) {
  std::vector<Mask> members(family.begin(), family.end());
  std::unordered_set<Mask> seen(members.begin(), members.end());
  // Each newly found set only needs pairing with everything seen so far.
  std::vector<Mask> work = members;
  while (!work.empty()) {
    const Mask m = work.back();
    work.pop_back();
    const std::size_t count = members.size();
    for (std::size_t i = 0; i < count; ++i) {
      const Mask meet = m & members[i];
      if (seen.insert(meet).second) {
        members.push_back(meet);
        work.push_back(meet);
      }
    }
  }
  return SetFamily(family.ground(), std::move(members));
}

bool family_equal(const SetFamily& f, const SetFamily& g) {
  require_same_ground(f.ground(), g.ground());
  return f.sets() == g.sets();
}

}  // namespace cgeom
