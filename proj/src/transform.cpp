#include "mht/transform.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "mht/parser.hpp"

namespace mht {

Formula swap_time(const Formula& f) {
  switch (f.kind()) {
    case Connective::Falsum:
    case Connective::Verum:
    case Connective::Atom:
      return f;
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
      return make_binary(f.kind(), swap_time(f.lhs()), swap_time(f.rhs()));
    case Connective::Next: return prev(swap_time(f.child()));
    case Connective::Prev: return next(swap_time(f.child()));
    case Connective::WeakNext: return wprev(swap_time(f.child()));
    case Connective::WeakPrev: return wnext(swap_time(f.child()));
    case Connective::Until:
      return since(f.bound(), swap_time(f.lhs()), swap_time(f.rhs()));
    case Connective::Since:
      return until(f.bound(), swap_time(f.lhs()), swap_time(f.rhs()));
    case Connective::Release:
      return trigger(f.bound(), swap_time(f.lhs()), swap_time(f.rhs()));
    case Connective::Trigger:
      return release(f.bound(), swap_time(f.lhs()), swap_time(f.rhs()));
  }
  return f;
}

Formula boolean_dual(const Formula& f) {
  switch (f.kind()) {
    case Connective::Falsum: return verum();
    case Connective::Verum: return falsum();
    case Connective::Atom: return f;
    case Connective::Implies:
      throw DualityError(
          "boolean dual is undefined on implications: " + print_formula(f), f);
    case Connective::And:
      return disj(boolean_dual(f.lhs()), boolean_dual(f.rhs()));
    case Connective::Or:
      return conj(boolean_dual(f.lhs()), boolean_dual(f.rhs()));
    case Connective::Next: return wnext(boolean_dual(f.child()));
    case Connective::WeakNext: return next(boolean_dual(f.child()));
    case Connective::Prev: return wprev(boolean_dual(f.child()));
    case Connective::WeakPrev: return prev(boolean_dual(f.child()));
    case Connective::Until:
      return release(f.bound(), boolean_dual(f.lhs()), boolean_dual(f.rhs()));
    case Connective::Release:
      return until(f.bound(), boolean_dual(f.lhs()), boolean_dual(f.rhs()));
    case Connective::Since:
      return trigger(f.bound(), boolean_dual(f.lhs()), boolean_dual(f.rhs()));
    case Connective::Trigger:
      return since(f.bound(), boolean_dual(f.lhs()), boolean_dual(f.rhs()));
  }
  return f;
}

namespace {

bool trivializes_to_falsum(Connective c) {
  return c == Connective::Until || c == Connective::Since;
}

Formula metric_with(Connective c, Bound b, Formula l, Formula r) {
  switch (c) {
    case Connective::Until: return until(b, std::move(l), std::move(r));
    case Connective::Release: return release(b, std::move(l), std::move(r));
    case Connective::Since: return since(b, std::move(l), std::move(r));
    default: return trigger(b, std::move(l), std::move(r));
  }
}

Formula step_of(Connective c, Formula f) {
  switch (c) {
    case Connective::Until: return next(std::move(f));
    case Connective::Release: return wnext(std::move(f));
    case Connective::Since: return prev(std::move(f));
    default: return wprev(std::move(f));
  }
}

}  // namespace

Formula unfold_step(const Formula& f) {
  if (!is_metric_binary(f.kind()))
    throw std::invalid_argument("unfold_step needs a metric binary head");
  const Connective c = f.kind();
  const Bound b = f.bound();
  if (b.is_numeral() && b.value() <= 0)
    return trivializes_to_falsum(c) ? falsum() : verum();
  const Bound inner =
      b.is_trace_length() ? b : Bound::numeral(b.value() - 1);
  Formula looped = step_of(c, metric_with(c, inner, f.lhs(), f.rhs()));
  if (c == Connective::Until || c == Connective::Since)
    return disj(f.rhs(), conj(f.lhs(), std::move(looped)));
  return conj(f.rhs(), disj(f.lhs(), std::move(looped)));
}

namespace {

Formula simp_and(Formula l, Formula r) {
  if (l.kind() == Connective::Verum) return r;
  if (r.kind() == Connective::Verum) return l;
  return conj(std::move(l), std::move(r));
}

Formula simp_or(Formula l, Formula r) {
  if (l.kind() == Connective::Falsum) return r;
  if (r.kind() == Connective::Falsum) return l;
  return disj(std::move(l), std::move(r));
}

// One-step wrappers built during unfolding distribute over the lattice
// operation their unfolding produces, keeping chains flat.
Formula dist_step(Connective step, const Formula& f) {
  const bool over_or = step == Connective::Next || step == Connective::Prev;
  if (over_or && f.kind() == Connective::Or)
    return disj(dist_step(step, f.lhs()), dist_step(step, f.rhs()));
  if (!over_or && f.kind() == Connective::And)
    return conj(dist_step(step, f.lhs()), dist_step(step, f.rhs()));
  return make_unary(step, f);
}

class TauRewriter {
 public:
  Formula run(const Formula& f) {
    if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
    Formula out = rewrite(f);
    memo_.emplace(f.id(), out);
    return out;
  }

 private:
  Formula rewrite(const Formula& f) {
    switch (f.kind()) {
      case Connective::Falsum:
      case Connective::Verum:
      case Connective::Atom:
        return f;
      case Connective::And:
      case Connective::Or:
      case Connective::Implies:
        return make_binary(f.kind(), run(f.lhs()), run(f.rhs()));
      case Connective::Next:
      case Connective::WeakNext:
      case Connective::Prev:
      case Connective::WeakPrev:
        return make_unary(f.kind(), run(f.child()));
      default: break;
    }
    const Connective c = f.kind();
    const Bound b = f.bound();
    if (b.is_trace_length())
      return metric_with(c, b, run(f.lhs()), run(f.rhs()));
    if (b.value() <= 0)
      return trivializes_to_falsum(c) ? falsum() : verum();
    if (b.value() == 1) return run(f.rhs());
    Formula inner =
        run(metric_with(c, Bound::numeral(b.value() - 1), f.lhs(), f.rhs()));
    const Connective step = c == Connective::Until      ? Connective::Next
                            : c == Connective::Release  ? Connective::WeakNext
                            : c == Connective::Since    ? Connective::Prev
                                                        : Connective::WeakPrev;
    Formula stepped = dist_step(step, inner);
    if (c == Connective::Until || c == Connective::Since)
      return simp_or(run(f.rhs()), simp_and(run(f.lhs()), std::move(stepped)));
    return simp_and(run(f.rhs()), simp_or(run(f.lhs()), std::move(stepped)));
  }

  std::unordered_map<const void*, Formula> memo_;
};

}  // namespace

Formula tau(const Formula& f) { return TauRewriter().run(f); }

Theory tau(const Theory& t) {
  Theory out;
  out.reserve(t.size());
  TauRewriter rw;
  for (const auto& f : t) out.push_back(rw.run(f));
  return out;
}

namespace {

// Expansion edges of the closure construction. The decrement (or
// self-unfolding) formula comes before the operands; that order fixes the
// label numbering.
std::vector<Formula> closure_expansion(const Formula& f) {
  switch (f.kind()) {
    case Connective::Falsum:
    case Connective::Verum:
    case Connective::Atom:
      return {};
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
      return {f.lhs(), f.rhs()};
    case Connective::Next:
    case Connective::WeakNext:
    case Connective::Prev:
    case Connective::WeakPrev:
      return {f.child()};
    default: break;
  }
  const Bound b = f.bound();
  std::vector<Formula> out;
  if (b.is_trace_length()) {
    out.push_back(step_of(f.kind(), f));
  } else if (b.value() > 1) {
    out.push_back(step_of(
        f.kind(),
        metric_with(f.kind(), Bound::numeral(b.value() - 1), f.lhs(), f.rhs())));
  }
  out.push_back(f.lhs());
  out.push_back(f.rhs());
  return out;
}

void closure_visit(const Formula& f, std::set<Formula, FormulaLess>& seen,
                   std::vector<Formula>& order) {
  if (!seen.insert(f).second) return;
  order.push_back(f);
  for (const auto& g : closure_expansion(f)) closure_visit(g, seen, order);
}

}  // namespace

std::vector<Formula> closure(const Formula& f) {
  std::set<Formula, FormulaLess> seen;
  std::vector<Formula> order;
  closure_visit(f, seen, order);
  return order;
}

Formula LabelTable::label_of(const Formula& f) const {
  auto it = index_.find(f);
  if (it == index_.end())
    throw std::out_of_range("formula is not in the closure");
  const Entry& e = entries_[it->second];
  return e.fresh ? atom(e.label) : e.formula;
}

std::string print_label_table(const LabelTable& t) {
  std::string out;
  for (const auto& e : t.entries()) {
    if (!e.fresh) continue;
    out += e.label;
    out += '\t';
    out += print_formula(e.formula);
    out += '\n';
  }
  return out;
}

struct UpsilonBuilder {
  LabelTable table;
  Theory theory;
  std::set<Formula, FormulaLess> emitted;

  static bool self_labeled(const Formula& f) {
    return f.kind() == Connective::Atom || f.kind() == Connective::Verum ||
           f.kind() == Connective::Falsum;
  }

  void intern(const Formula& f) {
    if (table.index_.count(f)) return;
    LabelTable::Entry e{f, "", false};
    if (!self_labeled(f)) {
      e.fresh = true;
      e.label = "__l" + std::to_string(table.fresh_count_ + 1);
      ++table.fresh_count_;
    }
    table.index_.emplace(f, table.entries_.size());
    table.entries_.push_back(std::move(e));
  }

  Formula label(const Formula& f) const { return table.label_of(f); }

  // The defining rows for one closure member, per its outer connective.
  std::vector<Formula> eta(const Formula& mu) const {
    const Formula lab = label(mu);
    auto boxed = [](Formula x) {
      return always(Bound::trace_length(), std::move(x));
    };
    switch (mu.kind()) {
      case Connective::Falsum:
      case Connective::Verum:
      case Connective::Atom:
        return {};
      case Connective::And:
      case Connective::Or:
        return {boxed(iff(lab, mu.kind() == Connective::And
                                   ? simp_and(label(mu.lhs()), label(mu.rhs()))
                                   : simp_or(label(mu.lhs()),
                                             label(mu.rhs()))))};
      case Connective::Implies:
        return {boxed(iff(lab, implies(label(mu.lhs()), label(mu.rhs()))))};
      case Connective::Next:
        return {wnext(boxed(iff(prev(lab), label(mu.child())))),
                boxed(implies(final_state(), neg(lab)))};
      case Connective::WeakNext:
        return {wnext(boxed(iff(prev(lab), label(mu.child())))),
                boxed(implies(final_state(), lab))};
      case Connective::Prev:
        return {wnext(boxed(iff(lab, prev(label(mu.child()))))), neg(lab)};
      case Connective::WeakPrev:
        return {wnext(boxed(iff(lab, prev(label(mu.child()))))), lab};
      default: break;
    }
    const Connective c = mu.kind();
    const Bound b = mu.bound();
    if (b.is_numeral() && b.value() <= 0)
      return {boxed(
          iff(lab, trivializes_to_falsum(c) ? falsum() : verum()))};
    if (b.is_numeral() && b.value() == 1)
      return {boxed(iff(lab, label(mu.rhs())))};
    const Bound inner =
        b.is_trace_length() ? b : Bound::numeral(b.value() - 1);
    const Formula looped =
        step_of(c, metric_with(c, inner, mu.lhs(), mu.rhs()));
    const Formula a = label(mu.lhs());
    const Formula beta = label(mu.rhs());
    const Formula a2 = label(looped);
    if (c == Connective::Until || c == Connective::Since)
      return {boxed(iff(lab, simp_or(beta, simp_and(a, a2))))};
    return {boxed(iff(lab, simp_and(beta, simp_or(a, a2))))};
  }

  void add(const Formula& f) {
    const auto members = closure(f);
    for (const auto& mu : members) intern(mu);
    push_unique(label(f));
    for (const auto& mu : members)
      for (const auto& row : eta(mu)) push_unique(row);
  }

  void push_unique(const Formula& f) {
    if (emitted.insert(f).second) theory.push_back(f);
  }
};

UpsilonResult upsilon(const Theory& t) {
  for (const auto& name : alphabet(t))
    if (name.rfind("__l", 0) == 0)
      throw std::invalid_argument(
          "atom names starting with '__l' are reserved for labels: '" + name +
          "'");
  UpsilonBuilder b;
  for (const auto& f : t) b.add(f);
  std::vector<std::string> extended = alphabet(t);
  for (const auto& e : b.table.entries())
    if (e.fresh) extended.push_back(e.label);
  std::sort(extended.begin(), extended.end());
  return UpsilonResult{std::move(b.theory), std::move(b.table),
                       std::move(extended)};
}

UpsilonResult upsilon(const Formula& f) { return upsilon(Theory{f}); }

ModelSet restrict_modelset(const ModelSet& s, AlphabetPtr a) {
  ModelSet out{s.logic, a, s.length, {}};
  out.traces.reserve(s.traces.size());
  for (const auto& m : s.traces) out.traces.push_back(restrict(m, *a));
  std::sort(out.traces.begin(), out.traces.end(),
            [](const HTTrace& x, const HTTrace& y) {
              if (x.there().masks() != y.there().masks())
                return x.there().masks() < y.there().masks();
              return x.here().masks() < y.here().masks();
            });
  out.traces.erase(std::unique(out.traces.begin(), out.traces.end()),
                   out.traces.end());
  return out;
}

}  // namespace mht
