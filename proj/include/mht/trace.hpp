/// \file trace.hpp
/// \brief Finite traces and HT-traces over a fixed alphabet, their ordering,
///        restriction, reversal and the trace file format.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mht {

/// Sorted, duplicate-free set of atom names. States are stored as bitmasks
/// indexed against it, which caps an alphabet at 64 atoms; plenty for
/// desk-scale enumeration, which runs out of candidate budget much earlier.
class Alphabet {
 public:
  static constexpr std::size_t max_atoms = 64;

  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  bool contains(std::string_view name) const {
    return index_of(name).has_value();
  }
  /// True when every atom of `other` is present here.
  bool contains_all(const Alphabet& other) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(std::vector<std::string> names);

/// A sequence of states (length >= 1), each a subset of the alphabet.
class Trace {
 public:
  Trace(AlphabetPtr alphabet, std::vector<std::uint64_t> states);

  static Trace of_states(AlphabetPtr alphabet,
                         const std::vector<std::vector<std::string>>& states);

  std::size_t length() const { return states_.size(); }
  const Alphabet& alphabet() const { return *alphabet_; }
  const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
  std::uint64_t mask(std::size_t k) const { return states_[k]; }
  const std::vector<std::uint64_t>& masks() const { return states_; }
  bool has(std::size_t k, std::size_t atom_index) const {
    return (states_[k] >> atom_index) & 1u;
  }
  /// Atom names of state k, sorted ascending.
  std::vector<std::string> state(std::size_t k) const;

  /// Same trace over a larger alphabet (atom indices remapped).
  Trace reindexed(AlphabetPtr super) const;

  friend bool operator==(const Trace& a, const Trace& b) {
    return *a.alphabet_ == *b.alphabet_ && a.states_ == b.states_;
  }

 private:
  AlphabetPtr alphabet_;
  std::vector<std::uint64_t> states_;
};

/// Pointwise inclusion of equal-length traces over the same alphabet.
/// Throws std::invalid_argument on a length or alphabet mismatch.
bool le(const Trace& a, const Trace& b);
bool lt(const Trace& a, const Trace& b);

/// Here-and-There trace: a pair of equal-length traces with H_k subset of
/// T_k at every step.
class HTTrace {
 public:
  HTTrace(Trace here, Trace there);
  static HTTrace total(Trace t);

  const Trace& here() const { return here_; }
  const Trace& there() const { return there_; }
  std::size_t length() const { return there_.length(); }
  const Alphabet& alphabet() const { return there_.alphabet(); }
  const AlphabetPtr& alphabet_ptr() const { return there_.alphabet_ptr(); }

  friend bool operator==(const HTTrace& a, const HTTrace& b) {
    return a.here_ == b.here_ && a.there_ == b.there_;
  }

 private:
  Trace here_;
  Trace there_;
};

bool is_total(const HTTrace& m);
HTTrace restrict(const HTTrace& m, const Alphabet& a);
HTTrace reverse(const HTTrace& m);

/// Reads the text format: one time point per line, earliest first. A total
/// step is a comma-separated atom list or "-"; an HT step is "H | T".
/// "%" comments run to end of line. The alphabet is the set of atoms that
/// occur, unless `alphabet` is given (then all atoms must belong to it).
HTTrace read_trace(std::istream& in, AlphabetPtr alphabet = nullptr);
HTTrace read_trace(std::string_view text, AlphabetPtr alphabet = nullptr);

/// Bit-exact emission: atoms sorted ascending, "-" for empty states, and a
/// single space around "|" for non-total traces.
void write_trace(std::ostream& out, const HTTrace& m);
std::string write_trace(const HTTrace& m);

}  // namespace mht
