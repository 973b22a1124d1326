#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "cgeom/cli.hpp"

namespace cgeom::cli {

namespace {

void add_dimension_flags(CLI::App* cmd, DimensionOptions& dim, bool& no_prune) {
  cmd->add_flag("--no-prune", no_prune, "Plain search over k-subsets of compatible orderings");
  cmd->add_option("--max-orderings", dim.max_orderings, "Give up above this many compatible orderings")
      ->capture_default_str();
  cmd->add_option("--max-k", dim.max_k, "Largest number of chains tried")->capture_default_str();
}

void add_variant_flags(CLI::App* cmd, int& stages, std::string& variant, int default_stages) {
  stages = default_stages;
  cmd->add_option("--stages", stages, "Number of tower stages, counting the seed")->capture_default_str();
  cmd->add_option("--variant", variant, "Extension step")
      ->check(CLI::IsMember({"paper-example", "reversed"}))
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite convex geometries from multichain presentations", "cgeom"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_flag("--json", opt.json, "Print the report as JSON");
  app.add_flag("-v,--verbose", opt.verbose, "Include full families and formulas in reports");
  app.add_option("--seed", opt.seed, "Seed for sampled closure-axiom checks")->capture_default_str();

  std::string file, file2, which = "all", set, op, a, b, text, format = "json", output;
  std::string variant = "paper-example";
  std::vector<std::string> assigns;
  int stages = 3;
  bool no_prune = false, rewrite = false;
  DimensionOptions dim;

  auto* build = app.add_subcommand("build", "Generate the closed family and check the closure axioms and anti-exchange");
  build->add_option("file", file, "Presentation file")->required();

  auto* check = app.add_subcommand("check", "Check lattice axioms, JSD, LSM or anti-exchange");
  check->add_option("file", file, "Presentation or family file")->required();
  check->add_option("--which", which, "axioms, jsd, lsm, ae or all")
      ->check(CLI::IsMember({"axioms", "jsd", "lsm", "ae", "all"}))
      ->capture_default_str();

  auto* clo = app.add_subcommand("closure", "Closure of a set");
  clo->add_option("file", file, "Presentation or family file")->required();
  clo->add_option("set", set, "Set such as {a,b}")->required();

  auto* cdim = app.add_subcommand("cdim", "Convex dimension with a witness");
  cdim->add_option("file", file, "Presentation or family file")->required();
  add_dimension_flags(cdim, dim, no_prune);

  auto* tower = app.add_subcommand("tower", "Build and verify a tower of extensions");
  tower->add_option("file", file, "Seed presentation")->required();
  add_variant_flags(tower, stages, variant, 3);
  add_dimension_flags(tower, dim, no_prune);

  auto* limit = app.add_subcommand("limit", "Join, meet or cover queries in the union of a tower");
  limit->add_option("file", file, "Seed presentation")->required();
  limit->add_option("op", op, "join, meet or cover")
      ->required()
      ->check(CLI::IsMember({"join", "meet", "cover"}));
  limit->add_option("a", a, "Element as SET or SET@STAGE")->required();
  limit->add_option("b", b, "Element as SET or SET@STAGE")->required();
  add_variant_flags(limit, stages, variant, 10);

  auto* tv = app.add_subcommand("tv", "Embedding check and Tarski-Vaught test for small into big");
  tv->add_option("small", file, "Smaller geometry")->required();
  tv->add_option("big", file2, "Larger geometry")->required();

  auto* formula = app.add_subcommand("formula", "Parse, classify and evaluate a lattice formula");
  formula->add_option("file", file, "Presentation or family file")->required();
  formula->add_option("text", text, "Formula, e.g. 'forall x. x ^ x = x'");
  formula->add_option("--assign", assigns, "Free variable value, NAME=SET");
  formula->add_flag("--rewrite-lsm", rewrite, "Prenex the LSM sentence and compare it with the direct check");

  auto* exp = app.add_subcommand("export", "Export the closed family as JSON or the Hasse diagram as DOT");
  exp->add_option("file", file, "Presentation or family file")->required();
  exp->add_option("--format", format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}))
      ->capture_default_str();
  exp->add_option("-o,--output", output, "Write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitPass;
    }
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  dim.prune = !no_prune;

  try {
    CommandResult result;
    if (*build) {
      result = cmd_build(file, opt);
    } else if (*check) {
      result = cmd_check(file, which, opt);
    } else if (*clo) {
      result = cmd_closure(file, set, opt);
    } else if (*cdim) {
      result = cmd_cdim(file, dim, opt);
    } else if (*tower) {
      result = cmd_tower(file, stages, parse_variant(variant), dim, opt);
    } else if (*limit) {
      result = cmd_limit(file, stages, parse_variant(variant), op, a, b, opt);
    } else if (*tv) {
      result = cmd_tv(file, file2, opt);
    } else if (*formula) {
      std::optional<std::string> t;
      if (formula->count("text")) t = text;
      result = cmd_formula(file, t, assigns, rewrite, opt);
    } else {
      result = cmd_export(file, format, opt);
      if (!output.empty()) {
        std::ofstream f(output, std::ios::binary);
        if (!f) throw InputError("cannot write '" + output + "'");
        f << *result.raw;
        return result.exit_code;
      }
    }
    out << render(result, opt);
    return result.exit_code;
  } catch (const TowerViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace cgeom::cli
