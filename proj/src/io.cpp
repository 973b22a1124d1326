#include "cgeom/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cgeom {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail_at(int line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> parse_chain_names(std::string_view body, int line) {
  std::vector<std::string> names;
  std::string_view rest = body;
  while (true) {
    const auto lt = rest.find('<');
    const std::string_view tok = trim(rest.substr(0, lt));
    if (tok.empty()) fail_at(line, "empty element in chain");
    if (tok.find_first_of(" \t") != std::string_view::npos) {
      fail_at(line, "chain elements must be separated by '<'");
    }
    names.emplace_back(tok);
    if (lt == std::string_view::npos) break;
    rest = rest.substr(lt + 1);
  }
  return names;
}

std::vector<Mask> parse_family_sets(std::string_view body, const GroundSet& ground, int line) {
  std::vector<Mask> sets;
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] == ' ' || body[i] == '\t') {
      ++i;
      continue;
    }
    if (body[i] != '{') fail_at(line, "family sets must be written in braces, e.g. {a,b}");
    const auto close = body.find('}', i);
    if (close == std::string_view::npos) fail_at(line, "unterminated '{'");
    try {
      sets.push_back(ground.parse(body.substr(i, close - i + 1)));
    } catch (const InputError& e) {
      fail_at(line, e.what());
    }
    i = close + 1;
  }
  return sets;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

InputSpec parse_input(std::string_view text) {
  const std::string_view head = trim(text);
  if (!head.empty() && head.front() == '{') {
    ClosureSystem system = import_json(text);
    GroundPtr ground = system.ground();
    return InputSpec{InputSpec::Kind::kJson, std::move(ground), std::nullopt, std::move(system)};
  }

  GroundPtr ground;
  std::vector<Chain> chains;
  std::vector<Mask> family;
  bool saw_family = false;
  int line_no = 0;
  std::istringstream is{std::string(text)};
  std::string raw;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) fail_at(line_no, "expected 'elements:', 'chain:' or 'family:'");
    const std::string_view key = trim(line.substr(0, colon));
    const std::string_view body = trim(line.substr(colon + 1));
    if (key == "elements") {
      if (ground) fail_at(line_no, "duplicate 'elements:' line");
      try {
        ground = make_ground(split_ws(body));
      } catch (const InputError& e) {
        fail_at(line_no, e.what());
      }
    } else if (key == "chain") {
      if (!ground) fail_at(line_no, "'chain:' before 'elements:'");
      if (saw_family) fail_at(line_no, "a file holds either chains or a family, not both");
      try {
        chains.push_back(Chain::from_names(ground, parse_chain_names(body, line_no)));
      } catch (const InputError& e) {
        fail_at(line_no, e.what());
      }
    } else if (key == "family") {
      if (!ground) fail_at(line_no, "'family:' before 'elements:'");
      if (!chains.empty()) fail_at(line_no, "a file holds either chains or a family, not both");
      saw_family = true;
      auto sets = parse_family_sets(body, *ground, line_no);
      family.insert(family.end(), sets.begin(), sets.end());
    } else {
      fail_at(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!ground) throw InputError("missing 'elements:' line");
  if (saw_family) {
    if (family.empty()) throw InputError("empty family");
    ClosureSystem system{SetFamily(ground, std::move(family))};
    return InputSpec{InputSpec::Kind::kFamily, ground, std::nullopt, std::move(system)};
  }
  if (chains.empty()) throw InputError("no 'chain:' or 'family:' lines");
  MultiChainPresentation p(ground, std::move(chains));
  ClosureSystem system = generate(p);
  return InputSpec{InputSpec::Kind::kChains, ground, std::move(p), std::move(system)};
}

InputSpec load_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_input(buf.str());
}

std::string export_json(const ClosureSystem& system) {
  nlohmann::ordered_json j;
  j["elements"] = system.ground()->names();
  nlohmann::ordered_json closed = nlohmann::ordered_json::array();
  for (Mask m : system.closed()) {
    nlohmann::ordered_json set = nlohmann::ordered_json::array();
    for (int i : members_of(m)) set.push_back(system.ground()->name(i));
    closed.push_back(std::move(set));
  }
  j["closed"] = std::move(closed);
  return j.dump(2) + "\n";
}

ClosureSystem import_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("elements") || !j.contains("closed") ||
      !j["elements"].is_array() || !j["closed"].is_array()) {
    throw InputError("JSON input needs array fields 'elements' and 'closed'");
  }
  std::vector<std::string> names;
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) throw InputError("element names must be strings");
    names.push_back(e.get<std::string>());
  }
  GroundPtr ground = make_ground(std::move(names));
  std::vector<Mask> sets;
  for (const auto& s : j["closed"]) {
    if (!s.is_array()) throw InputError("each closed set must be an array of names");
    Mask m = 0;
    for (const auto& e : s) {
      if (!e.is_string()) throw InputError("element names must be strings");
      auto idx = ground->index_of(e.get<std::string>());
      if (!idx) throw InputError("unknown element '" + e.get<std::string>() + "'");
      m |= bit(*idx);
    }
    sets.push_back(m);
  }
  if (sets.empty()) throw InputError("empty family");
  return ClosureSystem(SetFamily(ground, std::move(sets)));
}

std::string export_dot(const ClosedSetLattice& lattice) {
  std::ostringstream os;
  os << "digraph hasse {\n  rankdir=BT;\n";
  for (int i = 0; i < lattice.size(); ++i) {
    os << "  n" << i << " [label=\"" << dot_escape(lattice.label(i)) << "\"];\n";
  }
  for (const auto& [lo, hi] : covers(lattice).pairs) {
    os << "  n" << lo << " -> n" << hi << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace cgeom
