#include "cgeom/tarski_vaught.hpp"

#include <set>

namespace cgeom {

std::string element_variable(int i) { return "v" + std::to_string(i); }

Formula diagram(const TableLattice& l) {
  const int m = l.size();
  std::vector<Formula> atoms;
  atoms.reserve(static_cast<std::size_t>(2) * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      atoms.push_back(eq(join(var(element_variable(i)), var(element_variable(j))),
                         var(element_variable(l.join_at(i, j)))));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      atoms.push_back(eq(meet(var(element_variable(i)), var(element_variable(j))),
                         var(element_variable(l.meet_at(i, j)))));
  return conj(std::move(atoms));
}

Formula strictly_above(const Term& x, const Term& y) {
  return conj({eq(join(x, y), x), neg(eq(x, y))});
}

Formula tv_phi(const TableLattice& l, const std::string& witness) {
  std::vector<Formula> above;
  for (int g = 0; g < l.size(); ++g) above.push_back(strictly_above(var(witness), var(element_variable(g))));
  return conj({diagram(l), conj(std::move(above))});
}

Formula tv_psi(const TableLattice& l, const std::string& witness) {
  return exists(witness, tv_phi(l, witness));
}

namespace {

struct Instance {
  std::string name;
  Formula psi;
  Formula phi;
  std::vector<std::string> free;  // element variables used
};

// Evaluates `exists x. phi` in big, then looks for a witness inside the image.
std::optional<TvFailure> run_instance(const Instance& inst, const TableLattice& big,
                                      const std::vector<int>& map) {
  Assignment assignment;
  std::vector<std::string> order;
  std::vector<int> values;
  for (const auto& v : inst.free) {
    const int g = std::stoi(v.substr(1));
    assignment[v] = map[g];
    order.push_back(v);
    values.push_back(map[g]);
  }
  if (!eval(inst.psi, big, assignment)) return std::nullopt;

  order.push_back("x");
  values.push_back(0);
  const CompiledFormula phi(inst.phi, order);
  const std::set<int> image(map.begin(), map.end());
  int big_witness = -1;
  for (int candidate = 0; candidate < big.size(); ++candidate) {
    values.back() = candidate;
    if (!phi.eval(big, values, {.memoize = false, .parallel = false})) continue;
    if (image.count(candidate)) return std::nullopt;
    if (big_witness < 0) big_witness = candidate;
  }
  return TvFailure{inst.name, inst.psi, assignment, big_witness};
}

}  // namespace

TvReport tarski_vaught_check(const TableLattice& small, const TableLattice& big,
                             const std::vector<int>& map) {
  if (is_lattice_embedding(small, big, map)) {
    throw InputError("map is not a lattice embedding");
  }
  TvReport report;
  std::vector<std::string> all;
  for (int g = 0; g < small.size(); ++g) all.push_back(element_variable(g));

  std::vector<Instance> instances;
  instances.push_back({"psi", tv_psi(small), tv_phi(small), all});
  for (int g = 0; g < small.size(); ++g) {
    Formula phi = strictly_above(var("x"), var(element_variable(g)));
    instances.push_back({"exists x. x > " + element_variable(g), exists("x", phi), phi,
                         {element_variable(g)}});
  }
  for (const auto& inst : instances) {
    ++report.formulas_checked;
    if (auto failure = run_instance(inst, big, map)) {
      report.failure = std::move(failure);
      return report;
    }
  }
  return report;
}

TvReport tarski_vaught_check(const ClosedSetLattice& small, const ClosedSetLattice& big,
                             const std::vector<int>& map) {
  return tarski_vaught_check(TableLattice::from_lattice(small), TableLattice::from_lattice(big), map);
}

}  // namespace cgeom
