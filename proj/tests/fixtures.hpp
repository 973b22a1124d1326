#pragma once

#include <string>
#include <vector>

#include "cgeom/geometry.hpp"
#include "cgeom/lattice.hpp"
#include "oracle.hpp"

namespace fixtures {

inline const std::vector<oracle::Names> kG1 = {{"a", "b", "c"}, {"b", "a", "c"}};
inline const std::vector<oracle::Names> kG2 = {
    {"a", "b", "c", "d"}, {"b", "a", "c", "d"}, {"d", "a", "b", "c"}};
inline const std::vector<oracle::Names> kG3 = {{"a", "b", "c", "d", "e"},
                                               {"b", "a", "c", "d", "e"},
                                               {"d", "a", "b", "c", "e"},
                                               {"e", "a", "b", "c", "d"}};

inline cgeom::MultiChainPresentation g1() { return oracle::presentation(kG1); }
inline cgeom::MultiChainPresentation g2() { return oracle::presentation(kG2); }
inline cgeom::MultiChainPresentation g3() { return oracle::presentation(kG3); }

inline cgeom::ClosureSystem system_of(const std::string& letters, const oracle::NFamily& f) {
  std::vector<std::string> names;
  for (char c : letters) names.emplace_back(1, c);
  auto g = cgeom::make_ground(names);
  return cgeom::ClosureSystem(oracle::from_names(g, f));
}

inline cgeom::ClosureSystem m3() { return system_of("abc", oracle::family({"", "a", "b", "c", "abc"})); }
inline cgeom::ClosureSystem n5() { return system_of("abc", oracle::family({"", "a", "ab", "c", "abc"})); }

/// Chain lattice with m elements as a table.
inline cgeom::TableLattice chain_lattice(int m) {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> below;
  for (int i = 0; i < m; ++i) {
    labels.push_back("c" + std::to_string(i));
    if (i > 0) below.emplace_back(i - 1, i);
  }
  return cgeom::TableLattice::from_hasse(labels, below);
}

}  // namespace fixtures
