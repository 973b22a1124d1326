#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cgeom/geometry.hpp"
#include "cgeom/lattice.hpp"

namespace cgeom {

/// A parsed input file. Presentation files carry chains; family files and
/// JSON exports list closed sets directly.
struct InputSpec {
  enum class Kind { kChains, kFamily, kJson };
  Kind kind;
  GroundPtr ground;
  std::optional<MultiChainPresentation> presentation;
  ClosureSystem system;
};

/// Text format:
///
///     # comment
///     elements: a b c
///     chain: a < b < c
///     chain: b < a < c
///
/// or, instead of chains, one or more `family: {} {a} {a,b} {a,b,c}` lines.
/// Input starting with `{` is read as a JSON export. Throws InputError
/// (with a line number for text input).
InputSpec parse_input(std::string_view text);
InputSpec load_input(const std::string& path);

/// {"elements":[...],"closed":[[...],...]} in canonical order.
std::string export_json(const ClosureSystem& system);
ClosureSystem import_json(std::string_view text);

/// Hasse diagram, bottom-up, one node per closed set.
std::string export_dot(const ClosedSetLattice& lattice);

}  // namespace cgeom
