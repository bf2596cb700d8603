/// \file models.hpp
/// \brief Exhaustive model enumeration at a fixed trace length, equilibrium
///        (stable) trace checking, and bounded tautology/equivalence.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mht/formula.hpp"
#include "mht/semantics.hpp"
#include "mht/trace.hpp"

namespace mht {

enum class Logic : unsigned char { MHT, MTL, MEL };

std::string to_string(Logic logic);

/// Thrown when a requested candidate space exceeds the configured cap.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct EnumOptions {
  unsigned workers = 1;
  std::uint64_t cap = 1ull << 26;
};

/// Deterministically ordered model collection: traces sorted by the
/// lexicographic order of their state sequences, "there" side first.
struct ModelSet {
  Logic logic;
  AlphabetPtr alphabet;
  std::size_t length = 0;
  std::vector<HTTrace> traces;

  friend bool operator==(const ModelSet& a, const ModelSet& b) {
    return a.logic == b.logic && *a.alphabet == *b.alphabet &&
           a.length == b.length && a.traces == b.traces;
  }
};

/// All models of the theory at length `lambda`: every HT-trace for MHT
/// (3^(|A|*lambda) candidates), every total trace for MTL (2^(|A|*lambda)).
/// Throws CapExceeded when the candidate space is larger than options.cap
/// and std::invalid_argument for lambda = 0 or logic = MEL.
ModelSet enumerate_models(const Theory& t, AlphabetPtr a, std::size_t lambda,
                          Logic logic, const EnumOptions& options = {});

/// True when no strictly smaller "here" trace H < T yields a model <H,T>.
/// Preconditions: <T,T> must itself be a model (std::invalid_argument
/// otherwise). On failure `counter_here`, when given, receives the first
/// smaller H found (atoms removed in sorted step/atom order).
bool is_equilibrium(const Trace& total, const Theory& t,
                    std::optional<Trace>* counter_here = nullptr);

/// Equilibrium members of the MTL model set at length lambda.
ModelSet mel_models(const Theory& t, AlphabetPtr a, std::size_t lambda,
                    const EnumOptions& options = {});

/// Equilibrium traces of an explicitly given set of HT-traces.
std::vector<HTTrace> equilibrium_of(const std::vector<HTTrace>& s);

struct Verdict {
  bool valid = true;
  std::optional<HTTrace> counterexample;  // set when !valid
  std::size_t time_point = 0;

  explicit operator bool() const { return valid; }
};

/// Checks validity at every time point of every trace of lengths
/// 1..lambda_max; MHT quantifies over HT-traces, MTL over total ones.
Verdict bounded_tautology(const Formula& f, AlphabetPtr a,
                          std::size_t lambda_max, Logic logic,
                          const EnumOptions& options = {});

/// bounded_tautology(f <-> g).
Verdict bounded_equiv(const Formula& f, const Formula& g, AlphabetPtr a,
                      std::size_t lambda_max, Logic logic,
                      const EnumOptions& options = {});

}  // namespace mht
