/// \file semantics.hpp
/// \brief Satisfaction over HT-traces, the three-valued valuation, and the
///        quantifier-form oracle for derived operators.
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mht/formula.hpp"
#include "mht/trace.hpp"

namespace mht {

/// 0 = assumed false ("there"-false), 1 = potentially true,
/// 2 = proved true ("here"-true).
enum class TruthValue : unsigned char {
  AssumedFalse = 0,
  PotentiallyTrue = 1,
  ProvedTrue = 2,
};

inline int as_int(TruthValue v) { return static_cast<int>(v); }

/// M,k |= f. Implications are checked in both worlds; metric operators are
/// clipped to the trace. Throws std::out_of_range unless 0 <= k < length.
bool holds(const HTTrace& m, std::size_t k, const Formula& f);

/// M,0 |= f for every formula of the theory.
bool holds_theory(const HTTrace& m, const Theory& t);

/// The Goedel three-valued valuation of f at time point k. Satisfaction is
/// valuation 2; total-trace satisfaction is valuation != 0.
TruthValue valuation(const HTTrace& m, std::size_t k, const Formula& f);

/// A derived operator together with its raw quantifier semantics, used as a
/// differential-testing oracle against `holds` on the expanded form.
struct DerivedOpSpec {
  enum class Kind : unsigned char {
    Initial,
    Final,
    WeakNext,
    WeakPrev,
    Eventually,            // upper bound, numeral or trace length
    Always,
    Once,
    Historically,
    EventuallyInterval,    // [lo; hi)
    AlwaysInterval,
    OnceInterval,
    HistoricallyInterval,
    Until,                 // trace-length bounded (temporal) forms
    Release,
    Since,
    Trigger,
  };

  Kind kind;
  Bound bound = Bound::trace_length();
  long long lo = 0;
  std::vector<Formula> args;

  static DerivedOpSpec initial() {
    return {Kind::Initial, Bound::trace_length(), 0, {}};
  }
  static DerivedOpSpec final_point() {
    return {Kind::Final, Bound::trace_length(), 0, {}};
  }
  static DerivedOpSpec weak_next(Formula f) {
    return {Kind::WeakNext, Bound::trace_length(), 0, {std::move(f)}};
  }
  static DerivedOpSpec weak_prev(Formula f) {
    return {Kind::WeakPrev, Bound::trace_length(), 0, {std::move(f)}};
  }
  static DerivedOpSpec eventually(Bound b, Formula f) {
    return {Kind::Eventually, b, 0, {std::move(f)}};
  }
  static DerivedOpSpec always(Bound b, Formula f) {
    return {Kind::Always, b, 0, {std::move(f)}};
  }
  static DerivedOpSpec once(Bound b, Formula f) {
    return {Kind::Once, b, 0, {std::move(f)}};
  }
  static DerivedOpSpec historically(Bound b, Formula f) {
    return {Kind::Historically, b, 0, {std::move(f)}};
  }
  static DerivedOpSpec eventually_interval(long long lo, Bound hi, Formula f) {
    return {Kind::EventuallyInterval, hi, lo, {std::move(f)}};
  }
  static DerivedOpSpec always_interval(long long lo, Bound hi, Formula f) {
    return {Kind::AlwaysInterval, hi, lo, {std::move(f)}};
  }
  static DerivedOpSpec once_interval(long long lo, Bound hi, Formula f) {
    return {Kind::OnceInterval, hi, lo, {std::move(f)}};
  }
  static DerivedOpSpec historically_interval(long long lo, Bound hi,
                                             Formula f) {
    return {Kind::HistoricallyInterval, hi, lo, {std::move(f)}};
  }
  static DerivedOpSpec until_temporal(Formula l, Formula r) {
    return {Kind::Until, Bound::trace_length(), 0, {std::move(l), std::move(r)}};
  }
  static DerivedOpSpec release_temporal(Formula l, Formula r) {
    return {Kind::Release, Bound::trace_length(), 0,
            {std::move(l), std::move(r)}};
  }
  static DerivedOpSpec since_temporal(Formula l, Formula r) {
    return {Kind::Since, Bound::trace_length(), 0, {std::move(l), std::move(r)}};
  }
  static DerivedOpSpec trigger_temporal(Formula l, Formula r) {
    return {Kind::Trigger, Bound::trace_length(), 0,
            {std::move(l), std::move(r)}};
  }
};

/// Evaluates the explicit exists/forall conditions of the derived operator.
bool oracle_holds(const HTTrace& m, std::size_t k, const DerivedOpSpec& f);

/// Compiled satisfaction checker over raw state masks, reused across many
/// candidate traces during enumeration. Not thread-safe; give each worker
/// its own instance.
class SatChecker {
 public:
  SatChecker(const Theory& roots, AlphabetPtr alphabet);

  std::size_t root_count() const { return roots_.size(); }

  /// Points the checker at a candidate trace; resets memoization. `h` and
  /// `t` must stay alive until the next bind. For total traces pass the same
  /// span twice and total=true.
  void bind(std::span<const std::uint64_t> h, std::span<const std::uint64_t> t,
            bool total);

  bool holds(std::size_t root, std::size_t k);
  bool theory_holds(std::size_t k = 0);

 private:
  struct Sub {
    Connective op;
    std::int32_t lhs = -1;
    std::int32_t rhs = -1;
    Bound bound = Bound::numeral(0);
    std::int32_t atom = -1;  // alphabet index, -1 when absent
  };

  std::int32_t compile(const Formula& f);
  bool eval(std::int32_t id, std::size_t k, bool there_world);

  std::vector<Sub> subs_;
  std::vector<std::int32_t> roots_;
  AlphabetPtr alphabet_;
  std::span<const std::uint64_t> h_, t_;
  std::size_t lambda_ = 0;
  bool total_ = false;
  // memo: (sub, k, world) -> bool, invalidated by epoch stamps
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint8_t> value_;
  std::uint32_t epoch_ = 0;
  std::vector<std::pair<const void*, std::int32_t>> compiled_;  // node -> id
};

}  // namespace mht
