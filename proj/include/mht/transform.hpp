/// \file transform.hpp
/// \brief Syntactic transforms: swapped-time and Boolean-dual renamings,
///        one-step unfolding, the language-preserving translation into
///        trace-length operators, closure construction, and the labeled
///        translation over an extended alphabet.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mht/formula.hpp"
#include "mht/models.hpp"

namespace mht {

/// Replaces every connective by its swapped-time partner (next/previous,
/// weak next/weak previous, until/since, release/trigger), keeping bounds.
/// An involution.
Formula swap_time(const Formula& f);

struct DualityError : std::invalid_argument {
  DualityError(std::string message, Formula offending_formula)
      : std::invalid_argument(std::move(message)),
        offending(std::move(offending_formula)) {}
  Formula offending;
};

/// Replaces every connective by its Boolean dual (and/or, true/false,
/// until/release, next/weak next, since/trigger, previous/weak previous).
/// Defined for implication-free formulas only; throws DualityError
/// identifying the offending subformula otherwise.
Formula boolean_dual(const Formula& f);

/// One unfolding of a metric binary head: bound n <= 0 trivializes to a
/// truth constant, n >= 1 unfolds with bound n-1, and a trace-length bound
/// unfolds into itself. Throws std::invalid_argument for other heads.
Formula unfold_step(const Formula& f);

/// Language-preserving translation: numeral-bounded operators are unfolded
/// away entirely, trace-length operators and everything else map to
/// themselves. Unfolding-built constants are simplified (#true & x -> x,
/// #false | x -> x, both sides) and unfolding-built one-step operators are
/// distributed over the disjunction/conjunction they wrap, keeping the
/// expansion flat. Worst case exponential in the numeral bounds.
Formula tau(const Formula& f);
Theory tau(const Theory& t);

/// The least set containing f that is closed under subformulas and under
/// bound decrement (numeral bounds > 1) or self-unfolding (trace-length
/// bounds) of metric operators, enumerated in depth-first pre-order with
/// the decrement formula visited before the operands.
std::vector<Formula> closure(const Formula& f);

/// Bijection between closure formulas and label atoms. Atoms and truth
/// constants stand for themselves; every other member gets a fresh atom
/// "__l<i>" numbered in closure order.
class LabelTable {
 public:
  struct Entry {
    Formula formula;
    std::string label;  // empty unless fresh
    bool fresh = false;
  };

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t fresh_count() const { return fresh_count_; }

  bool has(const Formula& f) const { return index_.count(f) != 0; }

  /// The label formula standing for f: the fresh atom, or f itself for
  /// atoms and truth constants. Throws std::out_of_range for strangers.
  Formula label_of(const Formula& f) const;

 private:
  friend struct UpsilonBuilder;
  std::vector<Entry> entries_;
  std::map<Formula, std::size_t, FormulaLess> index_;
  std::size_t fresh_count_ = 0;
};

/// Two-column text serialization of the fresh labels: "__l<i>\t<formula>".
std::string print_label_table(const LabelTable& t);

struct UpsilonResult {
  Theory theory;
  LabelTable labels;
  /// Source alphabet extended with the fresh label atoms.
  std::vector<std::string> extended_alphabet;
};

/// Labeled translation: one label per closure member, with defining rows
/// fixing each label's truth value per time point. The result contains no
/// numeral-bounded operator and is faithful after restriction to the source
/// alphabet.
UpsilonResult upsilon(const Formula& f);
UpsilonResult upsilon(const Theory& t);

/// Per-trace restriction of a model set, with re-deduplication and re-sort.
ModelSet restrict_modelset(const ModelSet& s, AlphabetPtr a);

}  // namespace mht
