#include "gam/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace gam::pddl {

namespace {

std::string where_text(SourceLocation at) {
  return std::to_string(at.line) + ":" + std::to_string(at.column);
}

}  // namespace

SyntaxError::SyntaxError(SourceLocation where, std::string expected)
    : PddlError("syntax error at " + where_text(where) + ": expected " + expected),
      where_(where),
      expected_(std::move(expected)) {}

UnsupportedFeature::UnsupportedFeature(SourceLocation where, std::string construct)
    : PddlError("unsupported construct at " + where_text(where) + ": " + construct),
      construct_(std::move(construct)) {}

GroundingError::GroundingError(Kind kind, std::string message)
    : PddlError(std::move(message)), kind_(kind) {}

bool DomainFile::adl_mode() const {
  return std::any_of(requirements.begin(), requirements.end(), [](const std::string& r) {
    return r == ":negative-preconditions" || r == ":conditional-effects";
  });
}

namespace {

// ---------------------------------------------------------------- reader

struct SExpr {
  bool is_list = false;
  std::string symbol;
  std::vector<SExpr> items;
  SourceLocation loc;

  bool is(std::string_view s) const { return !is_list && symbol == s; }
  bool head_is(std::string_view s) const {
    return is_list && !items.empty() && items.front().is(s);
  }
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read_toplevel() {
    skip();
    if (eof()) throw SyntaxError(here(), "'('");
    SExpr e = read();
    skip();
    if (!eof()) throw SyntaxError(here(), "end of input");
    return e;
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  SourceLocation here() const { return {line_, col_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (!eof()) {
      char c = text_[pos_];
      if (c == ';') {
        while (!eof() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip();
    if (eof()) throw SyntaxError(here(), "expression");
    SExpr e;
    e.loc = here();
    char c = text_[pos_];
    if (c == ')') throw SyntaxError(here(), "expression");
    if (c == '(') {
      e.is_list = true;
      advance();
      for (;;) {
        skip();
        if (eof()) throw SyntaxError(here(), "')'");
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    while (!eof()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      e.symbol.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(d))));
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

// ---------------------------------------------------------------- parser

const std::set<std::string>& supported_requirements() {
  static const std::set<std::string> reqs = {":strips", ":typing", ":negative-preconditions",
                                             ":conditional-effects"};
  return reqs;
}

const std::set<std::string>& unsupported_heads() {
  static const std::set<std::string> heads = {"or",       "imply",    "exists", "forall",
                                              "either",   "increase", "decrease", "assign",
                                              "scale-up", "scale-down", "preference"};
  return heads;
}

void expect_list(const SExpr& e, const char* what) {
  if (!e.is_list) throw SyntaxError(e.loc, what);
}

const std::string& expect_symbol(const SExpr& e, const char* what) {
  if (e.is_list || e.symbol.empty()) throw SyntaxError(e.loc, what);
  return e.symbol;
}

bool is_variable(std::string_view s) { return !s.empty() && s.front() == '?'; }

std::vector<TypedName> parse_typed_list(const std::vector<SExpr>& items, std::size_t from,
                                        bool variables) {
  std::vector<TypedName> out;
  std::size_t pending = 0;
  for (std::size_t i = from; i < items.size(); ++i) {
    const auto& it = items[i];
    if (it.is_list) {
      if (it.head_is("either")) throw UnsupportedFeature(it.loc, "either types");
      throw SyntaxError(it.loc, "name");
    }
    if (it.symbol == "-") {
      if (i + 1 >= items.size()) throw SyntaxError(it.loc, "type name after '-'");
      const auto& t = items[i + 1];
      if (t.head_is("either")) throw UnsupportedFeature(t.loc, "either types");
      const auto& type = expect_symbol(t, "type name");
      if (pending == 0) throw SyntaxError(it.loc, "name before '-'");
      for (std::size_t k = out.size() - pending; k < out.size(); ++k) out[k].type = type;
      pending = 0;
      ++i;
      continue;
    }
    if (variables != is_variable(it.symbol)) {
      throw SyntaxError(it.loc, variables ? "variable" : "object name");
    }
    out.push_back({it.symbol, "object"});
    ++pending;
  }
  return out;
}

void reject_unsupported_head(const SExpr& e) {
  if (!e.is_list || e.items.empty() || e.items.front().is_list) return;
  const auto& h = e.items.front().symbol;
  if (h == "=") throw UnsupportedFeature(e.loc, "equality");
  if (unsupported_heads().count(h)) throw UnsupportedFeature(e.loc, h);
}

Literal parse_atom(const SExpr& e, bool allow_variables) {
  expect_list(e, "atom");
  reject_unsupported_head(e);
  if (e.items.empty()) throw SyntaxError(e.loc, "predicate name");
  Literal lit;
  lit.predicate = expect_symbol(e.items.front(), "predicate name");
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const auto& a = expect_symbol(e.items[i], "term");
    if (!allow_variables && is_variable(a)) throw SyntaxError(e.items[i].loc, "object name");
    lit.args.push_back(a);
  }
  return lit;
}

struct ModeUse {
  std::optional<SourceLocation> negation;
  std::optional<SourceLocation> when;
};

// Flattens a conjunction of literals. Negation is recorded, not yet judged.
void parse_condition(const SExpr& e, std::vector<Literal>& out, ModeUse& use, bool allow_negation) {
  expect_list(e, "condition");
  reject_unsupported_head(e);
  if (e.head_is("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) parse_condition(e.items[i], out, use, allow_negation);
    return;
  }
  if (e.head_is("not")) {
    if (e.items.size() != 2) throw SyntaxError(e.loc, "(not <atom>)");
    if (!allow_negation) throw UnsupportedFeature(e.loc, "negative goal");
    if (!use.negation) use.negation = e.loc;
    auto lit = parse_atom(e.items[1], true);
    lit.negated = true;
    out.push_back(std::move(lit));
    return;
  }
  if (e.head_is("when")) throw SyntaxError(e.loc, "condition");
  out.push_back(parse_atom(e, true));
}

void parse_effect(const SExpr& e, Operator& op, ModeUse& use) {
  expect_list(e, "effect");
  reject_unsupported_head(e);
  if (e.head_is("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) parse_effect(e.items[i], op, use);
    return;
  }
  if (e.head_is("when")) {
    if (e.items.size() != 3) throw SyntaxError(e.loc, "(when <condition> <effect>)");
    if (!use.when) use.when = e.loc;
    WhenEffect w;
    parse_condition(e.items[1], w.condition, use, true);
    Operator inner;
    parse_effect(e.items[2], inner, use);
    if (!inner.conditional.empty()) throw UnsupportedFeature(e.items[2].loc, "nested when");
    w.effects = std::move(inner.effects);
    op.conditional.push_back(std::move(w));
    return;
  }
  if (e.head_is("not")) {
    if (e.items.size() != 2) throw SyntaxError(e.loc, "(not <atom>)");
    auto lit = parse_atom(e.items[1], true);
    lit.negated = true;
    op.effects.push_back(std::move(lit));
    return;
  }
  op.effects.push_back(parse_atom(e, true));
}

void check_variables(const Operator& op, const std::vector<Literal>& lits, SourceLocation at) {
  for (const auto& l : lits) {
    for (const auto& a : l.args) {
      if (!is_variable(a)) continue;
      bool declared = std::any_of(op.parameters.begin(), op.parameters.end(),
                                  [&](const TypedName& p) { return p.name == a; });
      if (!declared) throw SyntaxError(at, "declared parameter instead of " + a);
    }
  }
}

Operator parse_action(const SExpr& e, ModeUse& use) {
  Operator op;
  if (e.items.size() < 2) throw SyntaxError(e.loc, "action name");
  op.name = expect_symbol(e.items[1], "action name");
  for (std::size_t i = 2; i < e.items.size(); i += 2) {
    const auto& key = e.items[i];
    if (key.is_list) throw SyntaxError(key.loc, "action keyword");
    if (i + 1 >= e.items.size()) throw SyntaxError(key.loc, "value after " + key.symbol);
    const auto& val = e.items[i + 1];
    if (key.symbol == ":parameters") {
      expect_list(val, "parameter list");
      op.parameters = parse_typed_list(val.items, 0, true);
    } else if (key.symbol == ":precondition") {
      expect_list(val, "precondition");
      if (!val.items.empty()) parse_condition(val, op.precondition, use, true);
    } else if (key.symbol == ":effect") {
      expect_list(val, "effect");
      if (!val.items.empty()) parse_effect(val, op, use);
    } else {
      throw UnsupportedFeature(key.loc, key.symbol);
    }
  }
  check_variables(op, op.precondition, e.loc);
  check_variables(op, op.effects, e.loc);
  for (const auto& w : op.conditional) {
    check_variables(op, w.condition, e.loc);
    check_variables(op, w.effects, e.loc);
  }
  return op;
}

std::vector<std::string> parse_requirements(const SExpr& e) {
  std::vector<std::string> reqs;
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const auto& r = expect_symbol(e.items[i], "requirement flag");
    if (!supported_requirements().count(r)) throw UnsupportedFeature(e.items[i].loc, r);
    reqs.push_back(r);
  }
  return reqs;
}

const SExpr& expect_define(const SExpr& root, const char* kind, std::string& name) {
  expect_list(root, "(define ...)");
  if (!root.head_is("define")) throw SyntaxError(root.loc, "define");
  if (root.items.size() < 2) throw SyntaxError(root.loc, std::string("(") + kind + " <name>)");
  const auto& header = root.items[1];
  if (!header.head_is(kind) || header.items.size() != 2) {
    throw SyntaxError(header.loc, std::string("(") + kind + " <name>)");
  }
  name = expect_symbol(header.items[1], "name");
  return root;
}

}  // namespace

DomainFile parse_domain(std::string_view text) {
  SExpr root = Reader(text).read_toplevel();
  DomainFile d;
  expect_define(root, "domain", d.name);
  ModeUse use;
  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const auto& sec = root.items[i];
    expect_list(sec, "domain section");
    if (sec.items.empty() || sec.items.front().is_list) throw SyntaxError(sec.loc, "section keyword");
    const auto& key = sec.items.front().symbol;
    if (key == ":requirements") {
      auto reqs = parse_requirements(sec);
      d.requirements.insert(d.requirements.end(), reqs.begin(), reqs.end());
    } else if (key == ":types") {
      auto types = parse_typed_list(sec.items, 1, false);
      d.types.insert(d.types.end(), types.begin(), types.end());
    } else if (key == ":constants") {
      auto cs = parse_typed_list(sec.items, 1, false);
      d.constants.insert(d.constants.end(), cs.begin(), cs.end());
    } else if (key == ":predicates") {
      for (std::size_t k = 1; k < sec.items.size(); ++k) {
        const auto& p = sec.items[k];
        expect_list(p, "predicate declaration");
        if (p.items.empty()) throw SyntaxError(p.loc, "predicate name");
        PredicateDecl decl;
        decl.name = expect_symbol(p.items.front(), "predicate name");
        decl.parameters = parse_typed_list(p.items, 1, true);
        d.predicates.push_back(std::move(decl));
      }
    } else if (key == ":action") {
      d.operators.push_back(parse_action(sec, use));
    } else {
      throw UnsupportedFeature(sec.loc, key);
    }
  }
  auto has = [&](const char* r) {
    return std::find(d.requirements.begin(), d.requirements.end(), r) != d.requirements.end();
  };
  if (use.negation && !d.adl_mode()) {
    throw UnsupportedFeature(*use.negation, "negative precondition without :negative-preconditions");
  }
  if (use.when && !has(":conditional-effects")) {
    throw UnsupportedFeature(*use.when, "when without :conditional-effects");
  }
  return d;
}

ProblemFile parse_problem(std::string_view text) {
  SExpr root = Reader(text).read_toplevel();
  ProblemFile p;
  expect_define(root, "problem", p.name);
  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const auto& sec = root.items[i];
    expect_list(sec, "problem section");
    if (sec.items.empty() || sec.items.front().is_list) throw SyntaxError(sec.loc, "section keyword");
    const auto& key = sec.items.front().symbol;
    if (key == ":domain") {
      if (sec.items.size() != 2) throw SyntaxError(sec.loc, "(:domain <name>)");
      p.domain = expect_symbol(sec.items[1], "domain name");
    } else if (key == ":requirements") {
      parse_requirements(sec);
    } else if (key == ":objects") {
      auto objs = parse_typed_list(sec.items, 1, false);
      p.objects.insert(p.objects.end(), objs.begin(), objs.end());
    } else if (key == ":init") {
      for (std::size_t k = 1; k < sec.items.size(); ++k) {
        const auto& a = sec.items[k];
        if (a.head_is("not")) throw UnsupportedFeature(a.loc, "negative initial literal");
        p.init.push_back(parse_atom(a, false));
      }
    } else if (key == ":goal") {
      if (sec.items.size() != 2) throw SyntaxError(sec.loc, "(:goal <condition>)");
      ModeUse use;
      parse_condition(sec.items[1], p.goal, use, false);
      for (const auto& g : p.goal) {
        for (const auto& a : g.args) {
          if (is_variable(a)) throw SyntaxError(sec.items[1].loc, "ground goal atom");
        }
      }
    } else {
      throw UnsupportedFeature(sec.loc, key);
    }
  }
  return p;
}

std::pair<DomainFile, ProblemFile> parse(std::string_view domain_text, std::string_view problem_text) {
  return {parse_domain(domain_text), parse_problem(problem_text)};
}

// ---------------------------------------------------------------- printer

namespace {

void print_typed(std::ostream& os, const std::vector<TypedName>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) os << ' ';
    os << names[i].name;
    bool last_of_type = i + 1 == names.size() || names[i + 1].type != names[i].type;
    if (last_of_type) os << " - " << names[i].type;
  }
}

void print_atom(std::ostream& os, const Literal& l) {
  if (l.negated) os << "(not ";
  os << '(' << l.predicate;
  for (const auto& a : l.args) os << ' ' << a;
  os << ')';
  if (l.negated) os << ')';
}

void print_conj(std::ostream& os, const std::vector<Literal>& lits) {
  os << "(and";
  for (const auto& l : lits) {
    os << ' ';
    print_atom(os, l);
  }
  os << ')';
}

}  // namespace

std::string to_pddl(const DomainFile& d) {
  std::ostringstream os;
  os << "(define (domain " << d.name << ")\n";
  if (!d.requirements.empty()) {
    os << "  (:requirements";
    for (const auto& r : d.requirements) os << ' ' << r;
    os << ")\n";
  }
  if (!d.types.empty()) {
    os << "  (:types ";
    print_typed(os, d.types);
    os << ")\n";
  }
  if (!d.constants.empty()) {
    os << "  (:constants ";
    print_typed(os, d.constants);
    os << ")\n";
  }
  os << "  (:predicates";
  for (const auto& p : d.predicates) {
    os << "\n    (" << p.name;
    if (!p.parameters.empty()) os << ' ';
    print_typed(os, p.parameters);
    os << ')';
  }
  os << ")\n";
  for (const auto& op : d.operators) {
    os << "  (:action " << op.name << "\n    :parameters (";
    print_typed(os, op.parameters);
    os << ")\n    :precondition ";
    print_conj(os, op.precondition);
    os << "\n    :effect (and";
    for (const auto& l : op.effects) {
      os << ' ';
      print_atom(os, l);
    }
    for (const auto& w : op.conditional) {
      os << "\n      (when ";
      print_conj(os, w.condition);
      os << ' ';
      print_conj(os, w.effects);
      os << ')';
    }
    os << "))\n";
  }
  os << ")\n";
  return os.str();
}

std::string to_pddl(const ProblemFile& p) {
  std::ostringstream os;
  os << "(define (problem " << p.name << ")\n";
  os << "  (:domain " << p.domain << ")\n";
  os << "  (:objects ";
  print_typed(os, p.objects);
  os << ")\n  (:init";
  for (const auto& l : p.init) {
    os << "\n    ";
    print_atom(os, l);
  }
  os << ")\n  (:goal ";
  print_conj(os, p.goal);
  os << "))\n";
  return os.str();
}

// ---------------------------------------------------------------- grounding

namespace {

std::string atom_name(const std::string& pred, const std::vector<std::string>& args) {
  if (args.empty()) return pred;
  std::string s = pred + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ',';
    s += args[i];
  }
  return s + ")";
}

class TypeTable {
 public:
  explicit TypeTable(const DomainFile& d) {
    parent_["object"] = "";
    for (const auto& t : d.types) parent_[t.name] = t.name == "object" ? "" : t.type;
    for (const auto& [t, p] : parent_) {
      if (!p.empty() && !parent_.count(p)) {
        throw GroundingError(GroundingError::Kind::kTypeMismatch, "unknown parent type '" + p + "'");
      }
    }
  }

  bool known(const std::string& t) const { return parent_.count(t) > 0; }

  bool is_subtype(std::string t, const std::string& of) const {
    for (std::size_t guard = 0; guard <= parent_.size(); ++guard) {
      if (t == of) return true;
      auto it = parent_.find(t);
      if (it == parent_.end() || it->second.empty()) return false;
      t = it->second;
    }
    throw GroundingError(GroundingError::Kind::kTypeMismatch, "cyclic type hierarchy");
  }

  void require(const std::string& t) const {
    if (!known(t)) throw GroundingError(GroundingError::Kind::kTypeMismatch, "unknown type '" + t + "'");
  }

 private:
  std::map<std::string, std::string> parent_;
};

struct GroundEffect {
  std::vector<std::string> cond;
  std::vector<std::string> neg_cond;
  std::vector<std::string> add;
  std::vector<std::string> del;
};

struct GroundActionText {
  std::string name;
  std::vector<GroundEffect> effects;  // [0] holds the precondition
};

class Grounder {
 public:
  Grounder(const DomainFile& d, const ProblemFile& p) : d_(d), p_(p), types_(d) {
    for (const auto& c : d.constants) add_object(c);
    for (const auto& o : p.objects) add_object(o);
    for (const auto& pred : d.predicates) {
      for (const auto& param : pred.parameters) types_.require(param.type);
      predicates_[pred.name] = &pred;
    }
    for (const auto& op : d.operators) {
      for (const auto& l : op.effects) fluent_.insert(l.predicate);
      for (const auto& w : op.conditional) {
        for (const auto& l : w.effects) fluent_.insert(l.predicate);
      }
    }
  }

  PlanningProblem run(GroundingStats* stats) {
    std::vector<std::string> init_names;
    for (const auto& l : p_.init) {
      check_ground(l, "init");
      auto n = atom_name(l.predicate, l.args);
      if (!fluent_.count(l.predicate)) {
        static_true_.insert(n);
      } else {
        init_names.push_back(n);
        init_set_.insert(n);
      }
    }
    std::vector<std::string> goal_names;
    for (const auto& l : p_.goal) {
      check_ground(l, "goal");
      goal_names.push_back(atom_name(l.predicate, l.args));
    }

    std::vector<GroundActionText> actions;
    GroundingStats local;
    for (const auto& op : d_.operators) ground_operator(op, actions, local);
    if (stats) *stats = local;

    // Complement atoms for every fluent that occurs negatively.
    std::set<std::string> negated;
    for (const auto& a : actions) {
      for (const auto& e : a.effects) negated.insert(e.neg_cond.begin(), e.neg_cond.end());
    }
    auto complement = [](const std::string& n) { return "not-" + n; };

    PlanningProblem prob;
    for (const auto& n : init_names) prob.atoms.intern(n);
    std::vector<std::vector<ConditionalEffect>> effect_ids;
    effect_ids.reserve(actions.size());
    for (auto& a : actions) {
      std::vector<ConditionalEffect> effs;
      for (auto& e : a.effects) {
        for (const auto& q : e.neg_cond) e.cond.push_back(complement(q));
        std::vector<std::string> add = e.add;
        std::vector<std::string> del = e.del;
        for (const auto& q : e.add) {
          if (negated.count(q)) del.push_back(complement(q));
        }
        for (const auto& q : e.del) {
          if (negated.count(q)) add.push_back(complement(q));
        }
        ConditionalEffect ce;
        for (const auto& n : e.cond) ce.condition.push_back(prob.atoms.intern(n));
        for (const auto& n : add) ce.adds.push_back(prob.atoms.intern(n));
        for (const auto& n : del) ce.dels.push_back(prob.atoms.intern(n));
        effs.push_back(std::move(ce));
      }
      effect_ids.push_back(std::move(effs));
    }
    AtomSet goals;
    for (const auto& n : goal_names) {
      goals.push_back(prob.atoms.intern(n));
      if (static_true_.count(n)) init_names.push_back(n);
    }
    for (const auto& q : negated) {
      if (!init_set_.count(q)) init_names.push_back(complement(q));
    }
    AtomSet init;
    for (const auto& n : init_names) init.push_back(prob.atoms.intern(n));

    for (std::size_t i = 0; i < actions.size(); ++i) {
      auto& effs = effect_ids[i];
      if (effs.size() == 1) {
        prob.actions.push_back(Action::strips(actions[i].name, std::move(effs[0].condition),
                                              std::move(effs[0].adds), std::move(effs[0].dels)));
      } else {
        prob.actions.push_back(Action::adl(actions[i].name, std::move(effs)));
      }
    }
    prob.init = State(prob.atoms.size(), init);
    prob.goals = sets::normalized(std::move(goals));
    return prob;
  }

 private:
  void add_object(const TypedName& o) {
    types_.require(o.type);
    if (object_type_.count(o.name)) {
      if (object_type_[o.name] != o.type) {
        throw GroundingError(GroundingError::Kind::kTypeMismatch,
                             "object '" + o.name + "' declared with two types");
      }
      return;
    }
    object_type_[o.name] = o.type;
    objects_.push_back(o.name);
  }

  const PredicateDecl& predicate(const Literal& l) const {
    auto it = predicates_.find(l.predicate);
    if (it == predicates_.end()) {
      throw GroundingError(GroundingError::Kind::kUnknownSymbol, "undeclared predicate '" + l.predicate + "'");
    }
    if (it->second->parameters.size() != l.args.size()) {
      throw GroundingError(GroundingError::Kind::kArityMismatch,
                           "predicate '" + l.predicate + "' expects " +
                               std::to_string(it->second->parameters.size()) + " arguments, got " +
                               std::to_string(l.args.size()));
    }
    return *it->second;
  }

  const std::string& object_type(const std::string& name) const {
    auto it = object_type_.find(name);
    if (it == object_type_.end()) {
      throw GroundingError(GroundingError::Kind::kUnknownSymbol, "unknown object '" + name + "'");
    }
    return it->second;
  }

  void check_ground(const Literal& l, const char* where) const {
    const auto& decl = predicate(l);
    for (std::size_t i = 0; i < l.args.size(); ++i) {
      if (!types_.is_subtype(object_type(l.args[i]), decl.parameters[i].type)) {
        throw GroundingError(GroundingError::Kind::kTypeMismatch,
                             std::string(where) + " atom " + atom_name(l.predicate, l.args) +
                                 ": '" + l.args[i] + "' is not a " + decl.parameters[i].type);
      }
    }
  }

  // Lifted check: a term's type must be compatible with the predicate slot.
  void check_lifted(const Operator& op, const Literal& l) const {
    const auto& decl = predicate(l);
    for (std::size_t i = 0; i < l.args.size(); ++i) {
      const auto& a = l.args[i];
      std::string t;
      if (is_variable(a)) {
        for (const auto& p : op.parameters) {
          if (p.name == a) t = p.type;
        }
      } else {
        t = object_type(a);
      }
      const auto& want = decl.parameters[i].type;
      if (!types_.is_subtype(t, want) && !types_.is_subtype(want, t)) {
        throw GroundingError(GroundingError::Kind::kTypeMismatch,
                             "operator '" + op.name + "': argument " + a + " of type " + t +
                                 " cannot fill " + want + " slot of " + l.predicate);
      }
    }
  }

  std::vector<std::string> objects_of(const std::string& type) const {
    std::vector<std::string> out;
    for (const auto& o : objects_) {
      if (types_.is_subtype(object_type_.at(o), type)) out.push_back(o);
    }
    return out;
  }

  // Returns false when the condition is statically unsatisfiable.
  bool instantiate_condition(const std::vector<Literal>& lits,
                             const std::unordered_map<std::string, std::string>& binding,
                             GroundEffect& into) const {
    for (const auto& l : lits) {
      auto n = atom_name(l.predicate, substitute(l.args, binding));
      if (!fluent_.count(l.predicate)) {
        bool holds = static_true_.count(n) > 0;
        if (holds == l.negated) return false;
        continue;
      }
      (l.negated ? into.neg_cond : into.cond).push_back(std::move(n));
    }
    return true;
  }

  static std::vector<std::string> substitute(const std::vector<std::string>& args,
                                             const std::unordered_map<std::string, std::string>& b) {
    std::vector<std::string> out;
    out.reserve(args.size());
    for (const auto& a : args) out.push_back(is_variable(a) ? b.at(a) : a);
    return out;
  }

  static void instantiate_effects(const std::vector<Literal>& lits,
                                  const std::unordered_map<std::string, std::string>& binding,
                                  GroundEffect& into) {
    for (const auto& l : lits) {
      auto n = atom_name(l.predicate, substitute(l.args, binding));
      (l.negated ? into.del : into.add).push_back(std::move(n));
    }
    // Add-after-delete: an atom both added and deleted ends up true.
    std::erase_if(into.del, [&](const std::string& n) {
      return std::find(into.add.begin(), into.add.end(), n) != into.add.end();
    });
  }

  void ground_operator(const Operator& op, std::vector<GroundActionText>& out, GroundingStats& stats) const {
    for (const auto& l : op.precondition) check_lifted(op, l);
    for (const auto& l : op.effects) check_lifted(op, l);
    for (const auto& w : op.conditional) {
      for (const auto& l : w.condition) check_lifted(op, l);
      for (const auto& l : w.effects) check_lifted(op, l);
    }
    std::vector<std::vector<std::string>> domains;
    for (const auto& p : op.parameters) {
      types_.require(p.type);
      domains.push_back(objects_of(p.type));
      if (domains.back().empty()) return;
    }
    std::vector<std::size_t> idx(domains.size(), 0);
    std::unordered_map<std::string, std::string> binding;
    for (;;) {
      binding.clear();
      std::vector<std::string> args;
      for (std::size_t k = 0; k < domains.size(); ++k) {
        binding[op.parameters[k].name] = domains[k][idx[k]];
        args.push_back(domains[k][idx[k]]);
      }
      ++stats.candidate_instances;

      GroundActionText act;
      act.name = atom_name(op.name, args);
      GroundEffect base;
      if (!instantiate_condition(op.precondition, binding, base)) {
        ++stats.pruned_static;
      } else {
        instantiate_effects(op.effects, binding, base);
        act.effects.push_back(std::move(base));
        for (const auto& w : op.conditional) {
          GroundEffect ce;
          if (!instantiate_condition(w.condition, binding, ce)) continue;
          instantiate_effects(w.effects, binding, ce);
          const auto& add0 = act.effects.front().add;
          std::erase_if(ce.del, [&](const std::string& n) {
            return std::find(add0.begin(), add0.end(), n) != add0.end();
          });
          act.effects.push_back(std::move(ce));
        }
        out.push_back(std::move(act));
      }

      std::size_t k = domains.size();
      while (k > 0) {
        --k;
        if (++idx[k] < domains[k].size()) break;
        idx[k] = 0;
        if (k == 0) return;
      }
      if (domains.empty()) return;
    }
  }

  const DomainFile& d_;
  const ProblemFile& p_;
  TypeTable types_;
  std::vector<std::string> objects_;
  std::unordered_map<std::string, std::string> object_type_;
  std::unordered_map<std::string, const PredicateDecl*> predicates_;
  std::unordered_set<std::string> fluent_;
  std::unordered_set<std::string> static_true_;
  std::unordered_set<std::string> init_set_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PddlError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

PlanningProblem ground(const DomainFile& domain, const ProblemFile& problem, GroundingStats* stats) {
  if (!problem.domain.empty() && problem.domain != domain.name) {
    throw GroundingError(GroundingError::Kind::kUnknownSymbol,
                         "problem is for domain '" + problem.domain + "', not '" + domain.name + "'");
  }
  return Grounder(domain, problem).run(stats);
}

PlanningProblem load(const std::string& domain_path, const std::string& problem_path,
                     GroundingStats* stats) {
  auto [d, p] = parse(read_file(domain_path), read_file(problem_path));
  return ground(d, p, stats);
}

}  // namespace gam::pddl
