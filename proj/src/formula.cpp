#include "cgeom/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

namespace cgeom {

namespace {

const char* kForallSym = "∀";
const char* kExistsSym = "∃";

Formula make(FormulaKind kind, std::vector<Formula> children, std::string v = {}) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = kind;
  n->children = std::move(children);
  n->var = std::move(v);
  return n;
}

bool is_quantifier(FormulaKind k) { return k == FormulaKind::kForall || k == FormulaKind::kExists; }

}  // namespace

Term var(std::string name) {
  return std::make_shared<TermNode>(TermNode{TermNode::Kind::kVar, std::move(name), nullptr, nullptr});
}
Term join(Term a, Term b) {
  return std::make_shared<TermNode>(TermNode{TermNode::Kind::kJoin, {}, std::move(a), std::move(b)});
}
Term meet(Term a, Term b) {
  return std::make_shared<TermNode>(TermNode{TermNode::Kind::kMeet, {}, std::move(a), std::move(b)});
}

Formula eq(Term a, Term b) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FormulaKind::kEq;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}
Formula neg(Formula f) { return make(FormulaKind::kNot, {std::move(f)}); }
Formula conj(std::vector<Formula> parts) {
  if (parts.empty()) throw InputError("empty conjunction");
  if (parts.size() == 1) return parts.front();
  return make(FormulaKind::kAnd, std::move(parts));
}
Formula disj(std::vector<Formula> parts) {
  if (parts.empty()) throw InputError("empty disjunction");
  if (parts.size() == 1) return parts.front();
  return make(FormulaKind::kOr, std::move(parts));
}
Formula implies(Formula a, Formula b) { return make(FormulaKind::kImplies, {std::move(a), std::move(b)}); }
Formula forall(std::string v, Formula body) { return make(FormulaKind::kForall, {std::move(body)}, std::move(v)); }
Formula exists(std::string v, Formula body) { return make(FormulaKind::kExists, {std::move(body)}, std::move(v)); }

bool same_term(const Term& a, const Term& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  if (a->kind == TermNode::Kind::kVar) return a->name == b->name;
  return same_term(a->lhs, b->lhs) && same_term(a->rhs, b->rhs);
}

bool same_formula(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind || a->var != b->var) return false;
  if (a->kind == FormulaKind::kEq) return same_term(a->lhs, b->lhs) && same_term(a->rhs, b->rhs);
  if (a->children.size() != b->children.size()) return false;
  for (std::size_t i = 0; i < a->children.size(); ++i) {
    if (!same_formula(a->children[i], b->children[i])) return false;
  }
  return true;
}

namespace {

void term_vars(const Term& t, const std::set<std::string>& bound, std::vector<std::string>& out,
               std::set<std::string>& seen) {
  if (t->kind == TermNode::Kind::kVar) {
    if (!bound.count(t->name) && seen.insert(t->name).second) out.push_back(t->name);
    return;
  }
  term_vars(t->lhs, bound, out, seen);
  term_vars(t->rhs, bound, out, seen);
}

void formula_vars(const Formula& f, std::set<std::string>& bound, std::vector<std::string>& out,
                  std::set<std::string>& seen) {
  if (f->kind == FormulaKind::kEq) {
    term_vars(f->lhs, bound, out, seen);
    term_vars(f->rhs, bound, out, seen);
    return;
  }
  if (is_quantifier(f->kind)) {
    const bool fresh = bound.insert(f->var).second;
    formula_vars(f->children[0], bound, out, seen);
    if (fresh) bound.erase(f->var);
    return;
  }
  for (const auto& c : f->children) formula_vars(c, bound, out, seen);
}

}  // namespace

std::vector<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, seen;
  std::vector<std::string> out;
  formula_vars(f, bound, out, seen);
  return out;
}

// ---------------------------------------------------------------- printing

namespace {

std::string print_subterm(const Term& t) {
  if (t->kind == TermNode::Kind::kVar) return t->name;
  return "(" + print_term(t) + ")";
}

// Binding strength; a child weaker than its slot requires gets parentheses.
int strength(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::kForall:
    case FormulaKind::kExists: return 0;
    case FormulaKind::kImplies: return 1;
    case FormulaKind::kOr: return 2;
    case FormulaKind::kAnd: return 3;
    case FormulaKind::kNot: return 4;
    case FormulaKind::kEq: return 5;
  }
  return 5;
}

void print_into(const Formula& f, int required, std::string& out) {
  const bool parens = strength(f) < required;
  if (parens) out += '(';
  switch (f->kind) {
    case FormulaKind::kEq:
      out += print_term(f->lhs);
      out += " = ";
      out += print_term(f->rhs);
      break;
    case FormulaKind::kNot:
      out += '!';
      print_into(f->children[0], 4, out);
      break;
    case FormulaKind::kAnd:
    case FormulaKind::kOr: {
      const char* sep = f->kind == FormulaKind::kAnd ? " & " : " | ";
      const int child = f->kind == FormulaKind::kAnd ? 4 : 3;
      for (std::size_t i = 0; i < f->children.size(); ++i) {
        if (i) out += sep;
        print_into(f->children[i], child, out);
      }
      break;
    }
    case FormulaKind::kImplies:
      print_into(f->children[0], 2, out);
      out += " -> ";
      print_into(f->children[1], 1, out);
      break;
    case FormulaKind::kForall:
    case FormulaKind::kExists:
      out += f->kind == FormulaKind::kForall ? "forall " : "exists ";
      out += f->var;
      out += ". ";
      print_into(f->children[0], 0, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_term(const Term& t) {
  switch (t->kind) {
    case TermNode::Kind::kVar: return t->name;
    case TermNode::Kind::kJoin: return print_subterm(t->lhs) + " v " + print_subterm(t->rhs);
    case TermNode::Kind::kMeet: return print_subterm(t->lhs) + " ^ " + print_subterm(t->rhs);
  }
  return {};
}

std::string print_formula(const Formula& f) {
  std::string out;
  print_into(f, 0, out);
  return out;
}

// ----------------------------------------------------------------- parsing

namespace {

enum class Tok { kIdent, kForall, kExists, kJoin, kMeet, kEq, kAnd, kOr, kArrow, kNot, kLParen, kRParen, kDot, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string word(s.substr(i, j - i));
      Tok k = Tok::kIdent;
      if (word == "forall") k = Tok::kForall;
      else if (word == "exists") k = Tok::kExists;
      else if (word == "v") k = Tok::kJoin;
      out.push_back({k, std::move(word), i});
      i = j;
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::kArrow, "->", i});
      i += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case '^': k = Tok::kMeet; break;
      case '=': k = Tok::kEq; break;
      case '&': k = Tok::kAnd; break;
      case '|': k = Tok::kOr; break;
      case '!': k = Tok::kNot; break;
      case '(': k = Tok::kLParen; break;
      case ')': k = Tok::kRParen; break;
      case '.': k = Tok::kDot; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::kEnd, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    Formula f = implication();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what.empty() ? "syntax error" : what, peek().pos);
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::kArrow)) return implies(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (accept(Tok::kOr)) parts.push_back(conjunction());
    return disj(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (accept(Tok::kAnd)) parts.push_back(unary());
    return conj(std::move(parts));
  }

  Formula unary() {
    if (accept(Tok::kNot)) return neg(unary());
    if (peek().kind == Tok::kForall || peek().kind == Tok::kExists) {
      const bool universal = peek().kind == Tok::kForall;
      ++pos_;
      if (peek().kind != Tok::kIdent) fail("expected a variable after quantifier");
      std::string v = peek().text;
      ++pos_;
      expect(Tok::kDot, "'.' after quantified variable");
      Formula body = implication();
      return universal ? forall(std::move(v), std::move(body)) : exists(std::move(v), std::move(body));
    }
    return primary();
  }

  Formula primary() {
    if (peek().kind == Tok::kLParen) {
      // Either a parenthesised formula or an equation starting with a
      // parenthesised term; try the equation first and fall back.
      const std::size_t save = pos_;
      try {
        return equation();
      } catch (const ParseError&) {
        pos_ = save;
      }
      expect(Tok::kLParen, "'('");
      Formula f = implication();
      expect(Tok::kRParen, "')'");
      return f;
    }
    return equation();
  }

  Formula equation() {
    Term lhs = term();
    expect(Tok::kEq, "'='");
    return eq(std::move(lhs), term());
  }

  Term term() {
    Term t = meet_term();
    while (accept(Tok::kJoin)) t = join(std::move(t), meet_term());
    return t;
  }

  Term meet_term() {
    Term t = atom_term();
    while (accept(Tok::kMeet)) t = meet(std::move(t), atom_term());
    return t;
  }

  Term atom_term() {
    if (accept(Tok::kLParen)) {
      Term t = term();
      expect(Tok::kRParen, "')'");
      return t;
    }
    if (peek().kind != Tok::kIdent) fail("expected a variable or '('");
    Term t = var(peek().text);
    ++pos_;
    return t;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(tokenize(text)).parse_all(); }

// ------------------------------------------------------------------ prenex

namespace {

struct Quant {
  bool universal;
  std::string var;
};

using Prefix = std::vector<Quant>;

class Prenexer {
 public:
  explicit Prenexer(const Formula& f) {
    for (auto& v : free_variables(f)) used_.insert(v);
  }

  std::pair<Prefix, Formula> run(const Formula& f, const std::map<std::string, std::string>& names) {
    switch (f->kind) {
      case FormulaKind::kEq:
        return {{}, eq(rename(f->lhs, names), rename(f->rhs, names))};
      case FormulaKind::kNot: {
        auto [p, m] = run(f->children[0], names);
        return {dual(std::move(p)), neg(std::move(m))};
      }
      case FormulaKind::kAnd:
      case FormulaKind::kOr: {
        std::vector<Prefix> prefixes;
        std::vector<Formula> matrices;
        for (const auto& c : f->children) {
          auto [p, m] = run(c, names);
          prefixes.push_back(std::move(p));
          matrices.push_back(std::move(m));
        }
        Formula m = f->kind == FormulaKind::kAnd ? conj(std::move(matrices)) : disj(std::move(matrices));
        return {merge(prefixes), std::move(m)};
      }
      case FormulaKind::kImplies: {
        auto [pa, ma] = run(f->children[0], names);
        auto [pb, mb] = run(f->children[1], names);
        std::vector<Prefix> prefixes{dual(std::move(pa)), std::move(pb)};
        return {merge(prefixes), implies(std::move(ma), std::move(mb))};
      }
      case FormulaKind::kForall:
      case FormulaKind::kExists: {
        const std::string fresh = fresh_name(f->var);
        auto inner = names;
        inner[f->var] = fresh;
        auto [p, m] = run(f->children[0], inner);
        p.insert(p.begin(), Quant{f->kind == FormulaKind::kForall, fresh});
        return {std::move(p), std::move(m)};
      }
    }
    throw Error("unreachable");
  }

 private:
  static Term rename(const Term& t, const std::map<std::string, std::string>& names) {
    if (t->kind == TermNode::Kind::kVar) {
      auto it = names.find(t->name);
      return it == names.end() ? t : var(it->second);
    }
    Term l = rename(t->lhs, names), r = rename(t->rhs, names);
    return t->kind == TermNode::Kind::kJoin ? join(std::move(l), std::move(r))
                                            : meet(std::move(l), std::move(r));
  }

  static Prefix dual(Prefix p) {
    for (auto& q : p) q.universal = !q.universal;
    return p;
  }

  // Interleaves independent prefixes block by block, universal blocks first.
  static Prefix merge(const std::vector<Prefix>& parts) {
    Prefix out;
    std::vector<std::size_t> at(parts.size(), 0);
    while (true) {
      bool any = false, any_universal = false;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (at[i] < parts[i].size()) {
          any = true;
          any_universal = any_universal || parts[i][at[i]].universal;
        }
      }
      if (!any) return out;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        while (at[i] < parts[i].size() && parts[i][at[i]].universal == any_universal) {
          out.push_back(parts[i][at[i]++]);
        }
      }
    }
  }

  std::string fresh_name(const std::string& base) {
    if (used_.insert(base).second) return base;
    for (int i = 1;; ++i) {
      std::string candidate = base + "_" + std::to_string(i);
      if (used_.insert(candidate).second) return candidate;
    }
  }

  std::set<std::string> used_;
};

}  // namespace

Formula prenex(const Formula& f) {
  Prenexer p(f);
  auto [prefix, matrix] = p.run(f, {});
  Formula out = std::move(matrix);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    out = it->universal ? forall(it->var, std::move(out)) : exists(it->var, std::move(out));
  }
  return out;
}

std::string prefix_word(const Formula& f) {
  std::string word;
  const FormulaNode* n = f.get();
  while (is_quantifier(n->kind)) {
    word += n->kind == FormulaKind::kForall ? kForallSym : kExistsSym;
    n = n->children[0].get();
  }
  return word;
}

std::string PrefixClass::name() const {
  switch (kind) {
    case Kind::kQuantifierFree: return "QuantifierFree";
    case Kind::kUniversal: return "Universal";
    case Kind::kForallExists: return "ForallExists";
    case Kind::kOther: return "Other(" + word + ")";
  }
  return {};
}

PrefixClass classify_prefix(const Formula& f) {
  const Formula p = prenex(f);
  PrefixClass c{PrefixClass::Kind::kOther, prefix_word(p)};
  std::vector<bool> quants;
  for (const FormulaNode* n = p.get(); is_quantifier(n->kind); n = n->children[0].get()) {
    quants.push_back(n->kind == FormulaKind::kForall);
  }
  if (quants.empty()) {
    c.kind = PrefixClass::Kind::kQuantifierFree;
    return c;
  }
  const auto first_exists = std::find(quants.begin(), quants.end(), false);
  if (first_exists == quants.end()) {
    c.kind = PrefixClass::Kind::kUniversal;
  } else if (std::find(first_exists, quants.end(), true) == quants.end()) {
    c.kind = PrefixClass::Kind::kForallExists;
  }
  return c;
}

}  // namespace cgeom
