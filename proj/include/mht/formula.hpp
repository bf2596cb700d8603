/// \file formula.hpp
/// \brief Metric formula AST: bounds, connectives, derived operators and
///        structural metrics.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mht {

/// Metric bound: either an integer numeral or the symbolic trace-length
/// constant, resolved against the length of the trace under evaluation.
class Bound {
 public:
  static Bound numeral(long long value) { return Bound(value, false); }
  static Bound trace_length() { return Bound(0, true); }

  bool is_trace_length() const { return symbolic_; }
  bool is_numeral() const { return !symbolic_; }

  /// Numeral value; only meaningful when is_numeral().
  long long value() const { return value_; }

  /// The concrete bound for a trace of length `lambda`.
  long long resolve(std::size_t lambda) const {
    return symbolic_ ? static_cast<long long>(lambda) : value_;
  }

  /// Total order: numerals by value, then the trace-length constant.
  friend int compare(const Bound& a, const Bound& b) {
    if (a.symbolic_ != b.symbolic_) return a.symbolic_ ? 1 : -1;
    if (a.symbolic_) return 0;
    return a.value_ < b.value_ ? -1 : a.value_ > b.value_ ? 1 : 0;
  }
  friend bool operator==(const Bound& a, const Bound& b) {
    return compare(a, b) == 0;
  }
  friend bool operator!=(const Bound& a, const Bound& b) {
    return compare(a, b) != 0;
  }

 private:
  Bound(long long value, bool symbolic) : value_(value), symbolic_(symbolic) {}
  long long value_;
  bool symbolic_;
};

enum class Connective : unsigned char {
  Falsum,
  Verum,
  Atom,
  And,
  Or,
  Implies,
  Next,
  WeakNext,
  Prev,
  WeakPrev,
  Until,
  Release,
  Since,
  Trigger,
};

inline bool is_boolean_binary(Connective c) {
  return c == Connective::And || c == Connective::Or ||
         c == Connective::Implies;
}
inline bool is_unary_step(Connective c) {
  return c == Connective::Next || c == Connective::WeakNext ||
         c == Connective::Prev || c == Connective::WeakPrev;
}
inline bool is_metric_binary(Connective c) {
  return c == Connective::Until || c == Connective::Release ||
         c == Connective::Since || c == Connective::Trigger;
}

/// Immutable metric formula. Copies share structure; all mutation happens
/// through the builder functions below, so values are safe to share across
/// threads.
class Formula {
 public:
  Connective kind() const { return node_->op; }

  /// Atom name; only valid for Connective::Atom.
  const std::string& name() const { return node_->atom; }

  /// Metric bound; only valid for metric binary connectives.
  const Bound& bound() const { return node_->bound; }

  /// Children. `lhs`/`rhs` for binary connectives, `child` for unary ones.
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }
  Formula child() const { return Formula(node_->lhs); }

  /// Stable identity of the underlying node, usable as a memoization key.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) {
    return compare(a, b) == 0;
  }
  friend bool operator!=(const Formula& a, const Formula& b) {
    return compare(a, b) != 0;
  }
  friend bool operator<(const Formula& a, const Formula& b) {
    return compare(a, b) < 0;
  }

  /// Total structural order: connective tag, then bound, then atom name,
  /// then children left to right.
  friend int compare(const Formula& a, const Formula& b);

 private:
  struct Node {
    Connective op;
    Bound bound = Bound::numeral(0);
    std::string atom;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  friend Formula falsum();
  friend Formula verum();
  friend Formula atom(std::string name);
  friend Formula make_binary(Connective op, Formula l, Formula r);
  friend Formula make_unary(Connective op, Formula f);
  friend Formula make_metric(Connective op, Bound b, Formula l, Formula r);
};

struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const { return a < b; }
};

/// An ordered sequence of formulas. Order affects labeling of output only,
/// never semantics.
using Theory = std::vector<Formula>;

// Primitive builders.
Formula falsum();
Formula verum();
Formula atom(std::string name);  // throws std::invalid_argument on a bad name
Formula conj(Formula l, Formula r);
Formula disj(Formula l, Formula r);
Formula implies(Formula l, Formula r);
Formula next(Formula f);
Formula wnext(Formula f);
Formula prev(Formula f);
Formula wprev(Formula f);
Formula until(Bound b, Formula l, Formula r);
Formula release(Bound b, Formula l, Formula r);
Formula since(Bound b, Formula l, Formula r);
Formula trigger(Bound b, Formula l, Formula r);

// Derived operators, eliminated eagerly into the primitives above.
Formula neg(Formula f);                       // f -> #false
Formula iff(Formula l, Formula r);            // (l -> r) & (r -> l)
Formula initial_state();                      // ~Y #true
Formula final_state();                        // ~X #true
Formula eventually(Bound b, Formula f);       // #true U[b] f
Formula always(Bound b, Formula f);           // #false R[b] f
Formula once(Bound b, Formula f);             // #true S[b] f
Formula historically(Bound b, Formula f);     // #false T[b] f

/// Name-based construction of any derived operator. Metric operators default
/// to a trace-length bound when `bound` is absent. Throws
/// std::invalid_argument for an unknown name or an arity/bound mismatch.
Formula derive(std::string_view op_name, std::optional<Bound> bound,
               const std::vector<Formula>& args);
Formula derive(std::string_view op_name, const std::vector<Formula>& args);

enum class StepOp : unsigned char { Next, WeakNext, Prev, WeakPrev };
enum class MetricOp : unsigned char {
  Eventually,
  Always,
  Once,
  Historically,
  Until,
  Release,
  Since,
  Trigger,
};

/// n-fold application of a one-step operator; iterate(op, 0, f) is f itself.
Formula iterate(StepOp op, std::size_t n, Formula f);

/// Half-open interval form of a metric operator, desugared into iterated
/// one-step operators around an upper-bounded core. Empty intervals yield
/// formulas equivalent to a truth constant, not errors.
Formula interval(MetricOp op, long long lower, Bound upper,
                 const std::vector<Formula>& args);

/// Node count: atoms and constants weigh 1, every connective adds 1.
std::size_t size(const Formula& f);

/// Largest integer bound occurring in the formula, floored at 1.
long long max_subindex(const Formula& f);

/// Atoms occurring in a formula or theory, sorted ascending.
std::vector<std::string> alphabet(const Formula& f);
std::vector<std::string> alphabet(const Theory& t);

/// True when the identifier is usable as an atom name: [a-z_][a-z0-9_]*.
bool is_atom_name(std::string_view s);

}  // namespace mht
