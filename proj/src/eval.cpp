#include "cgeom/eval.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <unordered_map>

#include "cgeom/detail/parallel.hpp"

namespace cgeom {

struct CompiledFormula::Program {
  struct CTerm {
    TermNode::Kind kind;
    int slot = -1;
    int lhs = -1, rhs = -1;
  };
  struct CNode {
    FormulaKind kind;
    int lhs = -1, rhs = -1;  // terms, kEq only
    std::vector<int> kids;
    int slot = -1;            // quantifiers
    std::vector<int> free;    // quantifiers: slots read by the body, minus its own
  };

  std::vector<std::string> free_order;
  std::vector<CTerm> terms;
  std::vector<CNode> nodes;
  int root = -1;
  int slots = 0;

  int compile_term(const Term& t, const std::vector<std::pair<std::string, int>>& scope,
                   std::set<int>& used) {
    CTerm c{t->kind};
    if (t->kind == TermNode::Kind::kVar) {
      auto it = std::find_if(scope.rbegin(), scope.rend(),
                             [&](const auto& e) { return e.first == t->name; });
      if (it == scope.rend()) throw InputError("unbound variable '" + t->name + "'");
      c.slot = it->second;
      used.insert(c.slot);
    } else {
      c.lhs = compile_term(t->lhs, scope, used);
      c.rhs = compile_term(t->rhs, scope, used);
    }
    terms.push_back(c);
    return static_cast<int>(terms.size()) - 1;
  }

  int compile(const Formula& f, std::vector<std::pair<std::string, int>>& scope, std::set<int>& used) {
    CNode n;
    n.kind = f->kind;
    switch (f->kind) {
      case FormulaKind::kEq:
        n.lhs = compile_term(f->lhs, scope, used);
        n.rhs = compile_term(f->rhs, scope, used);
        break;
      case FormulaKind::kForall:
      case FormulaKind::kExists: {
        n.slot = slots++;
        scope.emplace_back(f->var, n.slot);
        std::set<int> inner;
        n.kids.push_back(compile(f->children[0], scope, inner));
        scope.pop_back();
        inner.erase(n.slot);
        n.free.assign(inner.begin(), inner.end());
        used.insert(inner.begin(), inner.end());
        break;
      }
      default:
        for (const auto& c : f->children) n.kids.push_back(compile(c, scope, used));
        break;
    }
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }
};

namespace {

using Program = CompiledFormula::Program;

constexpr std::size_t kMemoLimit = std::size_t{1} << 22;

class Evaluator {
 public:
  Evaluator(const Program& p, const TableLattice& l, std::vector<int> env, bool memoize)
      : p_(p), l_(l), env_(std::move(env)), memoize_(memoize) {}

  std::vector<int>& env() { return env_; }

  int term(int i) const {
    const auto& t = p_.terms[i];
    switch (t.kind) {
      case TermNode::Kind::kVar: return env_[t.slot];
      case TermNode::Kind::kJoin: return l_.join_at(term(t.lhs), term(t.rhs));
      case TermNode::Kind::kMeet: return l_.meet_at(term(t.lhs), term(t.rhs));
    }
    return 0;
  }

  bool node(int i) {
    const auto& n = p_.nodes[i];
    switch (n.kind) {
      case FormulaKind::kEq: return term(n.lhs) == term(n.rhs);
      case FormulaKind::kNot: return !node(n.kids[0]);
      case FormulaKind::kAnd:
        for (int k : n.kids)
          if (!node(k)) return false;
        return true;
      case FormulaKind::kOr:
        for (int k : n.kids)
          if (node(k)) return true;
        return false;
      case FormulaKind::kImplies: return !node(n.kids[0]) || node(n.kids[1]);
      case FormulaKind::kForall:
      case FormulaKind::kExists: return quantifier(i);
    }
    return false;
  }

  bool range(int slot, int child, bool universal) {
    const int m = l_.size();
    for (int v = 0; v < m; ++v) {
      env_[slot] = v;
      if (node(child) != universal) return !universal;
    }
    return universal;
  }

 private:
  bool quantifier(int i) {
    const auto& n = p_.nodes[i];
    const bool universal = n.kind == FormulaKind::kForall;
    std::int8_t* cell = memo_cell(i);
    if (cell && *cell >= 0) return *cell != 0;
    const int saved = env_[n.slot];
    const bool r = range(n.slot, n.kids[0], universal);
    env_[n.slot] = saved;
    if (cell) *cell = r ? 1 : 0;
    return r;
  }

  std::int8_t* memo_cell(int i) {
    if (!memoize_) return nullptr;
    const auto& n = p_.nodes[i];
    const std::size_t m = static_cast<std::size_t>(l_.size());
    std::size_t cells = 1;
    for (std::size_t k = 0; k < n.free.size(); ++k) {
      if (cells > kMemoLimit / m) return nullptr;
      cells *= m;
    }
    auto& table = memo_[i];
    if (table.empty()) table.assign(cells, -1);
    std::size_t key = 0;
    for (int s : n.free) key = key * m + static_cast<std::size_t>(env_[s]);
    return &table[key];
  }

  const Program& p_;
  const TableLattice& l_;
  std::vector<int> env_;
  bool memoize_;
  std::unordered_map<int, std::vector<std::int8_t>> memo_;
};

}  // namespace

CompiledFormula::CompiledFormula(const Formula& f, std::vector<std::string> free_order)
    : program_(std::make_unique<Program>()) {
  program_->free_order = std::move(free_order);
  std::vector<std::pair<std::string, int>> scope;
  for (const auto& name : program_->free_order) scope.emplace_back(name, program_->slots++);
  std::set<int> used;
  program_->root = program_->compile(f, scope, used);
}

CompiledFormula::~CompiledFormula() = default;
CompiledFormula::CompiledFormula(CompiledFormula&&) noexcept = default;
CompiledFormula& CompiledFormula::operator=(CompiledFormula&&) noexcept = default;

const std::vector<std::string>& CompiledFormula::free_order() const { return program_->free_order; }

bool CompiledFormula::eval(const TableLattice& l, const std::vector<int>& values,
                           const EvalOptions& options) const {
  const Program& p = *program_;
  if (values.size() != p.free_order.size()) throw InputError("wrong number of variable values");
  std::vector<int> env(static_cast<std::size_t>(p.slots), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0 || values[i] >= l.size()) throw InputError("assigned element out of range");
    env[i] = values[i];
  }
  const auto& root = p.nodes[p.root];
  const bool quantified = root.kind == FormulaKind::kForall || root.kind == FormulaKind::kExists;
  if (!options.parallel || !quantified || l.size() < 8 || detail::max_threads() < 2) {
    Evaluator ev(p, l, std::move(env), options.memoize);
    return ev.node(p.root);
  }
  const bool universal = root.kind == FormulaKind::kForall;
  std::atomic<bool> decided{false};
  const int m = l.size();
#pragma omp parallel
  {
    Evaluator ev(p, l, env, options.memoize);
#pragma omp for schedule(dynamic, 1)
    for (int v = 0; v < m; ++v) {
      if (decided.load(std::memory_order_relaxed)) continue;
      ev.env()[root.slot] = v;
      if (ev.node(root.kids[0]) != universal) decided.store(true, std::memory_order_relaxed);
    }
  }
  return universal ? !decided.load() : decided.load();
}

bool eval(const Formula& f, const TableLattice& l, const Assignment& assignment,
          const EvalOptions& options) {
  std::vector<std::string> names;
  std::vector<int> values;
  for (const auto& name : free_variables(f)) {
    auto it = assignment.find(name);
    if (it == assignment.end()) throw InputError("unbound variable '" + name + "'");
    names.push_back(name);
    values.push_back(it->second);
  }
  return CompiledFormula(f, std::move(names)).eval(l, values, options);
}

bool eval(const Formula& f, const ClosedSetLattice& l, const Assignment& assignment,
          const EvalOptions& options) {
  return eval(f, TableLattice::from_lattice(l), assignment, options);
}

}  // namespace cgeom
