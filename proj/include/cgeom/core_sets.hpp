#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cgeom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed caller input (bad names, bad files, mismatched ground sets).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Bit i set means ground element i is a member.
using Mask = std::uint64_t;

inline constexpr int kMaxGroundSize = 64;

inline int popcount(Mask m) { return std::popcount(m); }
inline bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline bool is_proper_subset(Mask a, Mask b) { return a != b && is_subset(a, b); }
inline Mask bit(int i) { return Mask{1} << i; }
inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : bit(n) - 1; }

/// Cardinality first, then lexicographic on ascending member indices.
inline bool canonical_less(Mask a, Mask b) {
  const int ca = popcount(a), cb = popcount(b);
  if (ca != cb) return ca < cb;
  if (a == b) return false;
  // The lowest differing index decides: whoever owns it has the smaller list.
  const Mask diff = a ^ b;
  return (a & (diff & -diff)) != 0;
}

std::vector<int> members_of(Mask m);

/// An ordered, immutable list of distinct element names.
class GroundSet {
 public:
  explicit GroundSet(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> index_of(std::string_view name) const;
  Mask full() const { return full_mask(size()); }

  /// A copy with `name` appended as the last element.
  GroundSet with_element(std::string name) const;

  /// Renders `{a,b}`; the empty set is `{}`.
  std::string format(Mask m) const;

  /// Inverse of format(); also accepts bare comma-separated names.
  Mask parse(std::string_view text) const;

  bool operator==(const GroundSet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

using GroundPtr = std::shared_ptr<const GroundSet>;

GroundPtr make_ground(std::vector<std::string> names);

bool same_ground(const GroundPtr& a, const GroundPtr& b);
void require_same_ground(const GroundPtr& a, const GroundPtr& b);

/// A subset of a ground set.
class ESet {
 public:
  ESet(GroundPtr ground, Mask bits);
  static ESet from_names(GroundPtr ground, std::span<const std::string> names);
  static ESet parse(GroundPtr ground, std::string_view text);

  const GroundPtr& ground() const { return ground_; }
  Mask bits() const { return bits_; }
  int size() const { return popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  bool contains(int element) const { return (bits_ & bit(element)) != 0; }
  std::vector<int> members() const { return members_of(bits_); }
  std::string str() const { return ground_->format(bits_); }

  friend bool operator==(const ESet& a, const ESet& b) {
    return a.bits_ == b.bits_ && same_ground(a.ground_, b.ground_);
  }

 private:
  GroundPtr ground_;
  Mask bits_;
};

/// A duplicate-free family of subsets kept in canonical order.
class SetFamily {
 public:
  explicit SetFamily(GroundPtr ground) : ground_(std::move(ground)) {}
  SetFamily(GroundPtr ground, std::vector<Mask> sets);

  const GroundPtr& ground() const { return ground_; }
  int size() const { return static_cast<int>(sets_.size()); }
  bool empty() const { return sets_.empty(); }
  const std::vector<Mask>& sets() const { return sets_; }
  auto begin() const { return sets_.begin(); }
  auto end() const { return sets_.end(); }
  Mask operator[](int i) const { return sets_[i]; }
  ESet at(int i) const { return ESet(ground_, sets_.at(i)); }

  bool contains(Mask m) const;
  std::optional<int> index_of(Mask m) const;

  /// One set per line in canonical order.
  std::string str() const;

 private:
  GroundPtr ground_;
  std::vector<Mask> sets_;
};

/// Smallest superfamily closed under binary intersection.
SetFamily intersection_closure(const SetFamily& family);

/// Extensional equality. Throws InputError on a ground-set mismatch.
bool family_equal(const SetFamily& f, const SetFamily& g);

}  // namespace cgeom
