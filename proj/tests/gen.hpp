// Seeded generators and small enumeration helpers shared by the property
// tests and the acceptance suite.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mht/formula.hpp"
#include "mht/semantics.hpp"
#include "mht/trace.hpp"
#include "mht/transform.hpp"

namespace testgen {

struct GenConfig {
  int max_depth = 3;
  long long max_bound = 3;
  bool allow_implication = true;
  std::vector<std::string> atoms = {"p", "q"};
};

inline mht::Bound random_bound(std::mt19937& rng, const GenConfig& cfg) {
  std::uniform_int_distribution<int> kind(0, 3);
  if (kind(rng) == 0) return mht::Bound::trace_length();
  std::uniform_int_distribution<long long> v(0, cfg.max_bound);
  return mht::Bound::numeral(v(rng));
}

inline mht::Formula random_formula(std::mt19937& rng, const GenConfig& cfg,
                                   int depth = 0) {
  std::uniform_int_distribution<int> leaf_pick(0, 7);
  if (depth >= cfg.max_depth) {
    const int c = leaf_pick(rng);
    if (c == 0) return mht::falsum();
    if (c == 1) return mht::verum();
    std::uniform_int_distribution<std::size_t> a(0, cfg.atoms.size() - 1);
    return mht::atom(cfg.atoms[a(rng)]);
  }
  std::uniform_int_distribution<int> pick(0, cfg.allow_implication ? 13 : 12);
  const int c = pick(rng);
  auto sub = [&] { return random_formula(rng, cfg, depth + 1); };
  switch (c) {
    case 0: return mht::falsum();
    case 1: return mht::verum();
    case 2: {
      std::uniform_int_distribution<std::size_t> a(0, cfg.atoms.size() - 1);
      return mht::atom(cfg.atoms[a(rng)]);
    }
    case 3: return mht::conj(sub(), sub());
    case 4: return mht::disj(sub(), sub());
    case 5: return mht::next(sub());
    case 6: return mht::wnext(sub());
    case 7: return mht::prev(sub());
    case 8: return mht::wprev(sub());
    case 9: return mht::until(random_bound(rng, cfg), sub(), sub());
    case 10: return mht::release(random_bound(rng, cfg), sub(), sub());
    case 11: return mht::since(random_bound(rng, cfg), sub(), sub());
    case 12: return mht::trigger(random_bound(rng, cfg), sub(), sub());
    default: return mht::implies(sub(), sub());
  }
}

// All HT-traces of a given length: one of three states per (step, atom).
inline std::vector<mht::HTTrace> all_httraces(const mht::AlphabetPtr& a,
                                              std::size_t lambda) {
  std::vector<mht::HTTrace> out;
  const std::size_t positions = a->size() * lambda;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < positions; ++i) total *= 3;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<std::uint64_t> h(lambda, 0), t(lambda, 0);
    std::uint64_t v = idx;
    for (std::size_t k = 0; k < lambda; ++k)
      for (std::size_t ai = 0; ai < a->size(); ++ai) {
        switch (v % 3) {
          case 1: t[k] |= 1ull << ai; break;
          case 2:
            t[k] |= 1ull << ai;
            h[k] |= 1ull << ai;
            break;
          default: break;
        }
        v /= 3;
      }
    out.emplace_back(mht::Trace(a, h), mht::Trace(a, t));
  }
  return out;
}

inline std::vector<mht::HTTrace> all_total_traces(const mht::AlphabetPtr& a,
                                                  std::size_t lambda) {
  std::vector<mht::HTTrace> out;
  const std::size_t positions = a->size() * lambda;
  for (std::uint64_t idx = 0; idx < (1ull << positions); ++idx) {
    std::vector<std::uint64_t> t(lambda, 0);
    std::uint64_t v = idx;
    for (std::size_t k = 0; k < lambda; ++k)
      for (std::size_t ai = 0; ai < a->size(); ++ai) {
        if (v & 1) t[k] |= 1ull << ai;
        v >>= 1;
      }
    out.push_back(mht::HTTrace::total(mht::Trace(a, t)));
  }
  return out;
}

inline mht::HTTrace random_httrace(std::mt19937& rng,
                                   const mht::AlphabetPtr& a,
                                   std::size_t lambda) {
  std::uniform_int_distribution<int> trit(0, 2);
  std::vector<std::uint64_t> h(lambda, 0), t(lambda, 0);
  for (std::size_t k = 0; k < lambda; ++k)
    for (std::size_t ai = 0; ai < a->size(); ++ai) switch (trit(rng)) {
        case 1: t[k] |= 1ull << ai; break;
        case 2:
          t[k] |= 1ull << ai;
          h[k] |= 1ull << ai;
          break;
        default: break;
      }
  return {mht::Trace(a, h), mht::Trace(a, t)};
}

// Extends a source-alphabet trace to the labeled alphabet by giving every
// fresh label the three-valued value of its formula. In any model of the
// labeled theory the labels carry exactly these values, so a source trace
// is a restriction of some model iff its completion is a model.
inline mht::HTTrace label_completion(const mht::UpsilonResult& u,
                                     const mht::HTTrace& m) {
  auto names = u.extended_alphabet;
  const auto& more = m.alphabet().names();
  names.insert(names.end(), more.begin(), more.end());
  auto ext = mht::make_alphabet(std::move(names));
  mht::Trace h = m.here().reindexed(ext);
  mht::Trace t = m.there().reindexed(ext);
  std::vector<std::uint64_t> hm = h.masks(), tm = t.masks();
  for (const auto& e : u.labels.entries()) {
    if (!e.fresh) continue;
    const auto bit = 1ull << *ext->index_of(e.label);
    for (std::size_t k = 0; k < m.length(); ++k) {
      const int v = mht::as_int(mht::valuation(m, k, e.formula));
      if (v >= 1) tm[k] |= bit;
      if (v == 2) hm[k] |= bit;
    }
  }
  return {mht::Trace(ext, std::move(hm)), mht::Trace(ext, std::move(tm))};
}

}  // namespace testgen
