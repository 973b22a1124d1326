#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cgeom/dimension.hpp"
#include "cgeom/geometry.hpp"
#include "cgeom/tower.hpp"

namespace cgeom::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

using Report = nlohmann::ordered_json;

struct Options {
  bool json = false;
  bool verbose = false;
  std::uint64_t seed = kDefaultSeed;
};

struct CommandResult {
  Report report;
  int exit_code = kExitPass;
  std::optional<std::string> raw;  // export output, printed verbatim
};

CommandResult cmd_build(const std::string& file, const Options& opt);
CommandResult cmd_check(const std::string& file, const std::string& which, const Options& opt);
CommandResult cmd_closure(const std::string& file, const std::string& set, const Options& opt);
CommandResult cmd_cdim(const std::string& file, const DimensionOptions& dim, const Options& opt);
CommandResult cmd_tower(const std::string& file, int stages, ExtensionVariant variant,
                        const DimensionOptions& dim, const Options& opt);
CommandResult cmd_limit(const std::string& file, int stages, ExtensionVariant variant,
                        const std::string& op, const std::string& a, const std::string& b,
                        const Options& opt);
CommandResult cmd_tv(const std::string& small_file, const std::string& big_file, const Options& opt);
CommandResult cmd_formula(const std::string& file, const std::optional<std::string>& text,
                          const std::vector<std::string>& assignments, bool rewrite_lsm,
                          const Options& opt);
CommandResult cmd_export(const std::string& file, const std::string& format, const Options& opt);

/// YAML-like text rendering of a report; same content as the JSON form.
std::string render_text(const Report& report);
std::string render(const CommandResult& result, const Options& opt);

/// Full command-line entry point. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cgeom::cli
