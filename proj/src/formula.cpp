#include "mht/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

namespace mht {

int compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  const auto* x = a.node_.get();
  const auto* y = b.node_.get();
  if (x->op != y->op)
    return static_cast<int>(x->op) < static_cast<int>(y->op) ? -1 : 1;
  switch (x->op) {
    case Connective::Falsum:
    case Connective::Verum:
      return 0;
    case Connective::Atom: {
      int c = x->atom.compare(y->atom);
      return c < 0 ? -1 : c > 0 ? 1 : 0;
    }
    case Connective::And:
    case Connective::Or:
    case Connective::Implies: {
      if (int c = compare(a.lhs(), b.lhs())) return c;
      return compare(a.rhs(), b.rhs());
    }
    case Connective::Next:
    case Connective::WeakNext:
    case Connective::Prev:
    case Connective::WeakPrev:
      return compare(a.child(), b.child());
    default: {
      if (int c = compare(x->bound, y->bound)) return c;
      if (int c = compare(a.lhs(), b.lhs())) return c;
      return compare(a.rhs(), b.rhs());
    }
  }
}

bool is_atom_name(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::islower(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::islower(static_cast<unsigned char>(c)) ||
           std::isdigit(static_cast<unsigned char>(c)) || c == '_';
  });
}

Formula falsum() {
  static const Formula f(std::make_shared<const Formula::Node>(
      Formula::Node{Connective::Falsum}));
  return f;
}

Formula verum() {
  static const Formula f(
      std::make_shared<const Formula::Node>(Formula::Node{Connective::Verum}));
  return f;
}

Formula atom(std::string name) {
  if (!is_atom_name(name))
    throw std::invalid_argument("invalid atom name: '" + name + "'");
  auto n = std::make_shared<Formula::Node>();
  n->op = Connective::Atom;
  n->atom = std::move(name);
  return Formula(std::move(n));
}

Formula make_binary(Connective op, Formula l, Formula r) {
  auto n = std::make_shared<Formula::Node>();
  n->op = op;
  n->lhs = std::move(l.node_);
  n->rhs = std::move(r.node_);
  return Formula(std::move(n));
}

Formula make_unary(Connective op, Formula f) {
  auto n = std::make_shared<Formula::Node>();
  n->op = op;
  n->lhs = std::move(f.node_);
  return Formula(std::move(n));
}

Formula make_metric(Connective op, Bound b, Formula l, Formula r) {
  auto n = std::make_shared<Formula::Node>();
  n->op = op;
  n->bound = b;
  n->lhs = std::move(l.node_);
  n->rhs = std::move(r.node_);
  return Formula(std::move(n));
}

Formula conj(Formula l, Formula r) {
  return make_binary(Connective::And, std::move(l), std::move(r));
}
Formula disj(Formula l, Formula r) {
  return make_binary(Connective::Or, std::move(l), std::move(r));
}
Formula implies(Formula l, Formula r) {
  return make_binary(Connective::Implies, std::move(l), std::move(r));
}
Formula next(Formula f) { return make_unary(Connective::Next, std::move(f)); }
Formula wnext(Formula f) {
  return make_unary(Connective::WeakNext, std::move(f));
}
Formula prev(Formula f) { return make_unary(Connective::Prev, std::move(f)); }
Formula wprev(Formula f) {
  return make_unary(Connective::WeakPrev, std::move(f));
}
Formula until(Bound b, Formula l, Formula r) {
  return make_metric(Connective::Until, b, std::move(l), std::move(r));
}
Formula release(Bound b, Formula l, Formula r) {
  return make_metric(Connective::Release, b, std::move(l), std::move(r));
}
Formula since(Bound b, Formula l, Formula r) {
  return make_metric(Connective::Since, b, std::move(l), std::move(r));
}
Formula trigger(Bound b, Formula l, Formula r) {
  return make_metric(Connective::Trigger, b, std::move(l), std::move(r));
}

Formula neg(Formula f) { return implies(std::move(f), falsum()); }
Formula iff(Formula l, Formula r) {
  Formula forward = implies(l, r);
  Formula backward = implies(std::move(r), std::move(l));
  return conj(std::move(forward), std::move(backward));
}
Formula initial_state() { return neg(prev(verum())); }
Formula final_state() { return neg(next(verum())); }
Formula eventually(Bound b, Formula f) {
  return until(b, verum(), std::move(f));
}
Formula always(Bound b, Formula f) { return release(b, falsum(), std::move(f)); }
Formula once(Bound b, Formula f) { return since(b, verum(), std::move(f)); }
Formula historically(Bound b, Formula f) {
  return trigger(b, falsum(), std::move(f));
}

namespace {

[[noreturn]] void arity_error(std::string_view op, std::size_t want,
                              std::size_t got) {
  throw std::invalid_argument("operator '" + std::string(op) + "' expects " +
                              std::to_string(want) + " argument(s), got " +
                              std::to_string(got));
}

void expect_args(std::string_view op, const std::vector<Formula>& args,
                 std::size_t n) {
  if (args.size() != n) arity_error(op, n, args.size());
}

}  // namespace

Formula derive(std::string_view op_name, std::optional<Bound> bound,
               const std::vector<Formula>& args) {
  const Bound b = bound.value_or(Bound::trace_length());
  if (op_name == "not") {
    expect_args(op_name, args, 1);
    return neg(args[0]);
  }
  if (op_name == "iff") {
    expect_args(op_name, args, 2);
    return iff(args[0], args[1]);
  }
  if (op_name == "top") {
    expect_args(op_name, args, 0);
    return verum();
  }
  if (op_name == "initial") {
    expect_args(op_name, args, 0);
    return initial_state();
  }
  if (op_name == "final") {
    expect_args(op_name, args, 0);
    return final_state();
  }
  if (op_name == "eventually") {
    expect_args(op_name, args, 1);
    return eventually(b, args[0]);
  }
  if (op_name == "always") {
    expect_args(op_name, args, 1);
    return always(b, args[0]);
  }
  if (op_name == "once") {
    expect_args(op_name, args, 1);
    return once(b, args[0]);
  }
  if (op_name == "historically") {
    expect_args(op_name, args, 1);
    return historically(b, args[0]);
  }
  if (op_name == "until") {
    expect_args(op_name, args, 2);
    return until(b, args[0], args[1]);
  }
  if (op_name == "release") {
    expect_args(op_name, args, 2);
    return release(b, args[0], args[1]);
  }
  if (op_name == "since") {
    expect_args(op_name, args, 2);
    return since(b, args[0], args[1]);
  }
  if (op_name == "trigger") {
    expect_args(op_name, args, 2);
    return trigger(b, args[0], args[1]);
  }
  throw std::invalid_argument("unknown derived operator: '" +
                              std::string(op_name) + "'");
}

Formula derive(std::string_view op_name, const std::vector<Formula>& args) {
  return derive(op_name, std::nullopt, args);
}

Formula iterate(StepOp op, std::size_t n, Formula f) {
  for (std::size_t i = 0; i < n; ++i) {
    switch (op) {
      case StepOp::Next: f = next(std::move(f)); break;
      case StepOp::WeakNext: f = wnext(std::move(f)); break;
      case StepOp::Prev: f = prev(std::move(f)); break;
      case StepOp::WeakPrev: f = wprev(std::move(f)); break;
    }
  }
  return f;
}

Formula interval(MetricOp op, long long lower, Bound upper,
                 const std::vector<Formula>& args) {
  if (lower < 0)
    throw std::invalid_argument("interval lower bound must be nonnegative");
  const Bound inner = upper.is_trace_length()
                          ? Bound::trace_length()
                          : Bound::numeral(upper.value() - lower);
  const auto m = static_cast<std::size_t>(lower);
  switch (op) {
    case MetricOp::Eventually:
      expect_args("eventually", args, 1);
      return iterate(StepOp::Next, m, eventually(inner, args[0]));
    case MetricOp::Always:
      expect_args("always", args, 1);
      return iterate(StepOp::WeakNext, m, always(inner, args[0]));
    case MetricOp::Once:
      expect_args("once", args, 1);
      return iterate(StepOp::Prev, m, once(inner, args[0]));
    case MetricOp::Historically:
      expect_args("historically", args, 1);
      return iterate(StepOp::WeakPrev, m, historically(inner, args[0]));
    case MetricOp::Until:
      expect_args("until", args, 2);
      return iterate(StepOp::Next, m, until(inner, args[0], args[1]));
    case MetricOp::Release:
      expect_args("release", args, 2);
      return iterate(StepOp::WeakNext, m, release(inner, args[0], args[1]));
    case MetricOp::Since:
      expect_args("since", args, 2);
      return iterate(StepOp::Prev, m, since(inner, args[0], args[1]));
    case MetricOp::Trigger:
      expect_args("trigger", args, 2);
      return iterate(StepOp::WeakPrev, m, trigger(inner, args[0], args[1]));
  }
  throw std::invalid_argument("unknown metric operator");
}

std::size_t size(const Formula& f) {
  switch (f.kind()) {
    case Connective::Falsum:
    case Connective::Verum:
    case Connective::Atom:
      return 1;
    case Connective::Next:
    case Connective::WeakNext:
    case Connective::Prev:
    case Connective::WeakPrev:
      return 1 + size(f.child());
    default:
      return 1 + size(f.lhs()) + size(f.rhs());
  }
}

namespace {

void scan_subindex(const Formula& f, long long& best) {
  switch (f.kind()) {
    case Connective::Falsum:
    case Connective::Verum:
    case Connective::Atom:
      return;
    case Connective::Next:
    case Connective::WeakNext:
    case Connective::Prev:
    case Connective::WeakPrev:
      scan_subindex(f.child(), best);
      return;
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
      scan_subindex(f.lhs(), best);
      scan_subindex(f.rhs(), best);
      return;
    default:
      if (f.bound().is_numeral()) best = std::max(best, f.bound().value());
      scan_subindex(f.lhs(), best);
      scan_subindex(f.rhs(), best);
      return;
  }
}

void scan_atoms(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Connective::Atom:
      out.insert(f.name());
      return;
    case Connective::Falsum:
    case Connective::Verum:
      return;
    case Connective::Next:
    case Connective::WeakNext:
    case Connective::Prev:
    case Connective::WeakPrev:
      scan_atoms(f.child(), out);
      return;
    default:
      scan_atoms(f.lhs(), out);
      scan_atoms(f.rhs(), out);
      return;
  }
}

}  // namespace

long long max_subindex(const Formula& f) {
  long long best = 1;
  scan_subindex(f, best);
  return best;
}

std::vector<std::string> alphabet(const Formula& f) {
  std::set<std::string> s;
  scan_atoms(f, s);
  return {s.begin(), s.end()};
}

std::vector<std::string> alphabet(const Theory& t) {
  std::set<std::string> s;
  for (const auto& f : t) scan_atoms(f, s);
  return {s.begin(), s.end()};
}

}  // namespace mht
