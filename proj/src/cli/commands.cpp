#include <sstream>

#include "cgeom/cli.hpp"
#include "cgeom/eval.hpp"
#include "cgeom/io.hpp"
#include "cgeom/lattice.hpp"
#include "cgeom/sentences.hpp"
#include "cgeom/tarski_vaught.hpp"

namespace cgeom::cli {

namespace {

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

Report set_list(const GroundSet& g, const std::vector<Mask>& sets) {
  Report out = Report::array();
  for (Mask m : sets) out.push_back(g.format(m));
  return out;
}

Report header(const std::string& command, const std::string& file, const InputSpec& in) {
  Report r;
  r["command"] = command;
  r["file"] = file;
  r["input"] = in.kind == InputSpec::Kind::kChains ? "chains"
               : in.kind == InputSpec::Kind::kFamily ? "family"
                                                     : "json";
  r["elements"] = in.ground->names();
  return r;
}

Report closure_axioms_report(const ClosureSystem& s, const Options& opt, bool& ok) {
  const ClosureAxiomReport rep = check_closure_axioms(s, opt.seed);
  Report r;
  r["mode"] = rep.exhaustive ? "exhaustive" : "sampled";
  if (!rep.exhaustive) r["seed"] = opt.seed;
  r["subsets_checked"] = rep.subsets_checked;
  r["verdict"] = verdict(rep.ok());
  if (rep.violation) {
    const auto& g = *s.ground();
    Report c;
    c["axiom"] = rep.violation->axiom;
    c["subset"] = g.format(rep.violation->subset);
    if (rep.violation->axiom == "monotone") c["superset"] = g.format(rep.violation->other);
    c["closure"] = g.format(s.closure(rep.violation->subset));
    r["counterexample"] = std::move(c);
  }
  ok = ok && rep.ok();
  return r;
}

Report ae_report(const ClosureSystem& s, bool& ok) {
  const auto& g = *s.ground();
  Report r;
  const auto op = check_ae_operator(s);
  Report o;
  o["verdict"] = verdict(!op);
  if (op) {
    o["counterexample"] = {{"K", g.format(op->k)}, {"p", g.name(op->p)}, {"q", g.name(op->q)}};
  }
  r["operator_form"] = std::move(o);
  const auto sep = check_ae_separation(s);
  Report p;
  p["verdict"] = verdict(!sep);
  if (sep) {
    p["counterexample"] = {{"A", g.format(sep->a)}, {"x", g.name(sep->x)}, {"y", g.name(sep->y)}};
  }
  r["separation_form"] = std::move(p);
  ok = ok && !op && !sep;
  return r;
}

Report labels(const ClosedSetLattice& l, const std::vector<int>& elems,
              std::initializer_list<const char*> names) {
  Report r;
  auto it = names.begin();
  for (int e : elems) r[*it++] = l.label(e);
  return r;
}

Report lattice_checks(const ClosedSetLattice& l, const std::string& which, bool& ok) {
  Report r;
  if (which == "axioms" || which == "all") {
    const auto a = check_axioms_1_to_8(l);
    Report x;
    x["verdict"] = verdict(!a);
    if (a) {
      x["axiom"] = a->axiom;
      x["counterexample"] = labels(l, a->elements, {"x", "y", "z"});
    }
    r["lattice_axioms_1_to_8"] = std::move(x);
    ok = ok && !a;
  }
  if (which == "jsd" || which == "all") {
    const auto j = check_jsd(l);
    Report x;
    x["verdict"] = verdict(!j);
    if (j) x["counterexample"] = labels(l, {j->x, j->y, j->z}, {"x", "y", "z"});
    r["jsd"] = std::move(x);
    ok = ok && !j;
  }
  if (which == "lsm" || which == "all") {
    const auto s = check_lsm(l);
    Report x;
    x["verdict"] = verdict(!s);
    if (s) x["counterexample"] = labels(l, {s->x, s->y}, {"x", "y"});
    r["lsm"] = std::move(x);
    ok = ok && !s;
  }
  return r;
}

std::optional<std::string> lattice_problem(const ClosureSystem& s) {
  if (!s.contains_empty_and_top()) return "the empty set or the ground set is not closed";
  if (!s.is_intersection_closed()) return "the family is not intersection-closed";
  return std::nullopt;
}

Report dimension_report(const ClosureSystem& s, const DimensionOptions& dim, bool& found) {
  Report r;
  const DimensionResult res = convex_dimension(s, dim);
  r["compatible_orderings"] = res.orderings;
  if (dim.prune) r["antichain_lower_bound"] = res.lower_bound;
  found = res.found();
  if (res.found()) {
    r["cdim"] = res.witness->k;
    Report chains = Report::array();
    for (const auto& c : res.witness->chains) chains.push_back(c.str());
    r["witness"] = std::move(chains);
  } else {
    r["cdim"] = "bound exceeded";
    r["reason"] = res.bound_exceeded;
  }
  return r;
}

LimitElement parse_limit_element(const LimitGeometry& lim, const std::string& spec) {
  const auto at = spec.rfind('@');
  const GroundSet& top = *lim.tower().stage(lim.horizon()).ground();
  const Mask set = top.parse(spec.substr(0, at));
  if (at == std::string::npos) return lim.canonical(set);
  int stage = 0;
  try {
    stage = std::stoi(spec.substr(at + 1));
  } catch (const std::exception&) {
    throw InputError("bad stage in '" + spec + "'");
  }
  LimitElement e{stage, set};
  lim.validate(e);
  return e;
}

}  // namespace

CommandResult cmd_build(const std::string& file, const Options& opt) {
  const InputSpec in = load_input(file);
  const ClosureSystem& s = in.system;
  CommandResult res;
  Report& r = res.report;
  r = header("build", file, in);
  if (in.presentation) {
    Report chains = Report::array();
    for (const auto& c : in.presentation->chains()) chains.push_back(c.str());
    r["chains"] = std::move(chains);
  }
  r["closed_count"] = s.closed().size();
  r["closed"] = set_list(*s.ground(), s.closed().sets());
  bool ok = true;
  Report checks;
  checks["contains_empty_and_top"] = verdict(s.contains_empty_and_top());
  checks["intersection_closed"] = verdict(s.is_intersection_closed());
  ok = s.contains_empty_and_top() && s.is_intersection_closed();
  checks["closure_axioms"] = closure_axioms_report(s, opt, ok);
  checks["anti_exchange"] = ae_report(s, ok);
  r["checks"] = std::move(checks);
  r["verdict"] = verdict(ok);
  res.exit_code = ok ? kExitPass : kExitCheckFailed;
  return res;
}

CommandResult cmd_check(const std::string& file, const std::string& which, const Options& opt) {
  if (which != "axioms" && which != "jsd" && which != "lsm" && which != "ae" && which != "all") {
    throw InputError("--which must be one of axioms, jsd, lsm, ae, all");
  }
  const InputSpec in = load_input(file);
  const ClosureSystem& s = in.system;
  CommandResult res;
  Report& r = res.report;
  r = header("check", file, in);
  r["which"] = which;
  bool ok = true;
  if (which == "axioms" || which == "all") r["closure_axioms"] = closure_axioms_report(s, opt, ok);
  if (which == "ae" || which == "all") r["anti_exchange"] = ae_report(s, ok);
  if (which != "ae") {
    if (auto problem = lattice_problem(s)) {
      r["lattice"] = "fail: " + *problem;
      ok = false;
    } else {
      const ClosedSetLattice l(s);
      r["lattice_size"] = l.size();
      const Report checks = lattice_checks(l, which, ok);
      for (const auto& [k, v] : checks.items()) r[k] = v;
    }
  }
  r["verdict"] = verdict(ok);
  res.exit_code = ok ? kExitPass : kExitCheckFailed;
  return res;
}

CommandResult cmd_closure(const std::string& file, const std::string& set, const Options&) {
  const InputSpec in = load_input(file);
  const ESet a = ESet::parse(in.ground, set);
  CommandResult res;
  Report& r = res.report;
  r = header("closure", file, in);
  r["set"] = a.str();
  const ESet c = closure(in.system, a);
  r["closure"] = c.str();
  r["closed"] = a == c;
  return res;
}

CommandResult cmd_cdim(const std::string& file, const DimensionOptions& dim, const Options&) {
  const InputSpec in = load_input(file);
  CommandResult res;
  Report& r = res.report;
  r = header("cdim", file, in);
  r["pruning"] = dim.prune;
  bool found = false;
  const Report d = dimension_report(in.system, dim, found);
  for (const auto& [k, v] : d.items()) r[k] = v;
  res.exit_code = found ? kExitPass : kExitCheckFailed;
  return res;
}

CommandResult cmd_tower(const std::string& file, int stages, ExtensionVariant variant,
                        const DimensionOptions& dim, const Options& opt) {
  const InputSpec in = load_input(file);
  if (!in.presentation) throw InputError("tower needs a chain presentation, not a family");
  if (stages < 1) throw InputError("--stages must be at least 1");
  CommandResult res;
  Report& r = res.report;
  r = header("tower", file, in);
  r["variant"] = to_string(variant);
  r["stages_requested"] = stages;
  Tower tower(*in.presentation, variant);
  bool ok = true;
  try {
    tower.extend_to(stages);
  } catch (const TowerViolation& e) {
    r["violation"] = e.what();
    ok = false;
  }
  Report list = Report::array();
  int previous_cdim = -1;
  for (const TowerStage& st : tower.stages()) {
    Report s;
    s["stage"] = st.index;
    s["elements"] = st.ground()->size();
    if (st.index > 1) s["new_element"] = st.ground()->name(st.ground()->size() - 1);
    Report chains = Report::array();
    for (const auto& c : st.presentation.chains()) chains.push_back(c.str());
    s["chains"] = std::move(chains);
    s["closed_count"] = st.lattice.size();
    if (opt.verbose || st.index <= 3) s["closed"] = set_list(*st.ground(), st.lattice.elements());
    const bool jsd = !check_jsd(st.lattice);
    const bool lsm = !check_lsm(st.lattice);
    s["jsd"] = verdict(jsd);
    s["lsm"] = verdict(lsm);
    ok = ok && jsd && lsm;
    if (st.index > 1) {
      const auto& prev = tower.stage(st.index - 1);
      s["strict_growth"] = verdict(prev.lattice.size() < st.lattice.size());
      s["embedding_from_previous"] =
          verdict(!is_lattice_embedding(prev.lattice, st.lattice, tower.inclusion(st.index - 1, st.index)));
    }
    const DimensionResult d = convex_dimension(st.system(), dim);
    if (d.found()) {
      s["cdim"] = d.witness->k;
      if (previous_cdim >= 0) s["cdim_delta"] = d.witness->k - previous_cdim;
      previous_cdim = d.witness->k;
    } else {
      s["cdim"] = "bound exceeded";
      previous_cdim = -1;
    }
    list.push_back(std::move(s));
  }
  r["stages"] = std::move(list);
  r["verdict"] = verdict(ok);
  res.exit_code = ok ? kExitPass : kExitCheckFailed;
  return res;
}

CommandResult cmd_limit(const std::string& file, int stages, ExtensionVariant variant,
                        const std::string& op, const std::string& a, const std::string& b,
                        const Options&) {
  if (op != "join" && op != "meet" && op != "cover") {
    throw InputError("limit query must be join, meet or cover");
  }
  const InputSpec in = load_input(file);
  if (!in.presentation) throw InputError("limit needs a chain presentation, not a family");
  if (stages < 1) throw InputError("--stages must be at least 1");
  LimitGeometry lim(build_tower(*in.presentation, stages, variant));
  const GroundSet& g = *lim.tower().stage(lim.horizon()).ground();
  const LimitElement x = parse_limit_element(lim, a);
  const LimitElement y = parse_limit_element(lim, b);
  auto elem = [&](const LimitElement& e) {
    return Report{{"set", g.format(e.set)}, {"stage", e.stage}};
  };
  CommandResult res;
  Report& r = res.report;
  r = header("limit", file, in);
  r["variant"] = to_string(variant);
  r["horizon"] = lim.horizon();
  r["query"] = op;
  r["a"] = elem(x);
  r["b"] = elem(y);
  bool ok = true;
  if (op == "cover") {
    const CoverStability cs = lim.cover_stability(x, y, lim.horizon());
    Report profile = Report::array();
    for (std::size_t i = 0; i < cs.stages.size(); ++i) {
      profile.push_back({{"stage", cs.stages[i]}, {"covered", static_cast<bool>(cs.covered[i])}});
    }
    r["profile"] = std::move(profile);
    r["first_broken"] = cs.first_broken ? Report(*cs.first_broken) : Report("none");
    ok = !cs.first_broken;
  } else {
    const bool is_join = op == "join";
    const LimitElement out = is_join ? lim.join(x, y) : lim.meet(x, y);
    r["result"] = elem(out);
    Report per_stage = Report::array();
    for (int s = std::max(x.stage, y.stage); s <= lim.horizon(); ++s) {
      const Mask m = is_join ? lim.join_at_stage(x.set, y.set, s) : lim.meet_at_stage(x.set, y.set, s);
      per_stage.push_back({{"stage", s}, {"set", g.format(m)}});
    }
    r["per_stage"] = std::move(per_stage);
    ok = is_join ? lim.join_stable(x, y) : lim.meet_stable(x, y);
    r["stable"] = ok;
  }
  res.exit_code = ok ? kExitPass : kExitCheckFailed;
  return res;
}

CommandResult cmd_tv(const std::string& small_file, const std::string& big_file, const Options& opt) {
  const InputSpec small_in = load_input(small_file);
  const InputSpec big_in = load_input(big_file);
  if (auto p = lattice_problem(small_in.system)) throw InputError(small_file + ": " + *p);
  if (auto p = lattice_problem(big_in.system)) throw InputError(big_file + ": " + *p);
  const ClosedSetLattice small(small_in.system);
  const ClosedSetLattice big(big_in.system);
  CommandResult res;
  Report& r = res.report;
  r["command"] = "tv";
  r["small"] = small_file;
  r["big"] = big_file;
  const std::vector<int> map = inclusion_map(small, big);
  if (auto cex = is_lattice_embedding(small, big, map)) {
    r["embedding"] = "fail: " + cex->operation + " of " + small.label(cex->c) + " and " +
                     small.label(cex->d) + " is not preserved";
    res.exit_code = kExitCheckFailed;
    return res;
  }
  r["embedding"] = "pass";
  const TvReport tv = tarski_vaught_check(small, big, map);
  r["formulas_checked"] = tv.formulas_checked;
  if (tv.passed()) {
    r["result"] = "pass";
    r["note"] = "no violation in the checked formula family; not a proof of elementarity";
  } else {
    r["result"] = "witness_failure";
    r["formula"] = tv.failure->name;
    r["witness"] = big.label(tv.failure->big_witness);
    r["witness_in_image"] = false;
    if (opt.verbose) r["formula_text"] = print_formula(tv.failure->formula);
    res.exit_code = kExitCheckFailed;
  }
  return res;
}

CommandResult cmd_formula(const std::string& file, const std::optional<std::string>& text,
                          const std::vector<std::string>& assignments, bool rewrite,
                          const Options&) {
  const InputSpec in = load_input(file);
  if (auto p = lattice_problem(in.system)) throw InputError(file + ": " + *p);
  const ClosedSetLattice l(in.system);
  const TableLattice table = TableLattice::from_lattice(l);
  CommandResult res;
  Report& r = res.report;
  r = header("formula", file, in);
  if (rewrite) {
    const LsmRewrite lsm = rewrite_lsm();
    r["mode"] = "rewrite-lsm";
    r["expanded"] = print_formula(lsm.expanded);
    r["prenex"] = print_formula(lsm.prenex);
    r["prefix"] = lsm.prefix.word;
    r["class"] = lsm.prefix.name();
    const bool by_formula = eval(lsm.prenex, table);
    const bool by_checker = !check_lsm(l);
    r["formula_value"] = by_formula;
    r["checker_value"] = by_checker;
    r["agree"] = by_formula == by_checker;
    res.exit_code = by_formula == by_checker ? kExitPass : kExitCheckFailed;
    return res;
  }
  if (!text) throw InputError("formula text required (or --rewrite-lsm)");
  const Formula f = parse_formula(*text);
  Assignment assignment;
  for (const auto& spec : assignments) {
    const auto eqpos = spec.find('=');
    if (eqpos == std::string::npos) throw InputError("--assign expects NAME=SET");
    const Mask m = in.ground->parse(spec.substr(eqpos + 1));
    auto idx = l.index_of(m);
    if (!idx) throw InputError("assigned set " + in.ground->format(m) + " is not closed");
    assignment[spec.substr(0, eqpos)] = *idx;
  }
  for (const auto& v : free_variables(f)) {
    if (!assignment.count(v)) {
      throw InputError("open formula needs an assignment for free variable '" + v + "' (use --assign)");
    }
  }
  r["formula"] = print_formula(f);
  const Formula p = prenex(f);
  r["prenex"] = print_formula(p);
  const PrefixClass c = classify_prefix(f);
  r["prefix"] = c.word;
  r["class"] = c.name();
  const bool value = eval(f, table, assignment);
  r["value"] = value;
  res.exit_code = value ? kExitPass : kExitCheckFailed;
  return res;
}

CommandResult cmd_export(const std::string& file, const std::string& format, const Options&) {
  const InputSpec in = load_input(file);
  CommandResult res;
  res.report["command"] = "export";
  res.report["format"] = format;
  if (format == "json") {
    res.raw = export_json(in.system);
  } else if (format == "dot") {
    if (auto p = lattice_problem(in.system)) throw InputError(file + ": " + *p);
    res.raw = export_dot(ClosedSetLattice(in.system));
  } else {
    throw InputError("--format must be json or dot");
  }
  return res;
}

namespace {

bool scalar(const Report& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_text(const Report& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_into(const Report& v, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (const auto& [key, val] : v.items()) {
      if (scalar(val)) {
        os << pad << key << ": " << scalar_text(val) << '\n';
      } else if (val.empty()) {
        os << pad << key << ": " << (val.is_array() ? "[]" : "{}") << '\n';
      } else {
        os << pad << key << ":\n";
        render_into(val, indent + 2, os);
      }
    }
  } else if (v.is_array()) {
    for (const auto& item : v) {
      if (scalar(item)) {
        os << pad << "- " << scalar_text(item) << '\n';
      } else {
        os << pad << "-\n";
        render_into(item, indent + 2, os);
      }
    }
  } else {
    os << pad << scalar_text(v) << '\n';
  }
}

}  // namespace

std::string render_text(const Report& report) {
  std::ostringstream os;
  render_into(report, 0, os);
  return os.str();
}

std::string render(const CommandResult& result, const Options& opt) {
  if (result.raw) return *result.raw;
  if (opt.json) return result.report.dump(2) + "\n";
  return render_text(result.report);
}

}  // namespace cgeom::cli
