#include "mht/models.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <functional>
#include <thread>

#include "mht/semantics.hpp"

namespace mht {

std::string to_string(Logic logic) {
  switch (logic) {
    case Logic::MHT: return "mht";
    case Logic::MTL: return "mtl";
    case Logic::MEL: return "mel";
  }
  return "?";
}

namespace {

constexpr std::uint64_t kSaturated = ~0ull;

std::uint64_t pow_saturating(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > (kSaturated / base)) return kSaturated;
    r *= base;
  }
  return r;
}

// Candidate index -> (H,T) mask pair. MHT candidates assign one of three
// states per (step, atom): absent, T only, or H and T. MTL candidates are
// plain subsets. Position order is step-major, atom-minor, least significant
// first, so candidate 0 is the all-empty trace.
void decode_mht(std::uint64_t idx, std::size_t atoms,
                std::vector<std::uint64_t>& h, std::vector<std::uint64_t>& t) {
  std::fill(h.begin(), h.end(), 0);
  std::fill(t.begin(), t.end(), 0);
  for (std::size_t step = 0; step < t.size(); ++step) {
    for (std::size_t a = 0; a < atoms; ++a) {
      switch (idx % 3) {
        case 1: t[step] |= 1ull << a; break;
        case 2:
          t[step] |= 1ull << a;
          h[step] |= 1ull << a;
          break;
        default: break;
      }
      idx /= 3;
    }
  }
}

void decode_mtl(std::uint64_t idx, std::size_t atoms,
                std::vector<std::uint64_t>& t) {
  std::fill(t.begin(), t.end(), 0);
  for (std::size_t step = 0; step < t.size(); ++step)
    for (std::size_t a = 0; a < atoms; ++a) {
      if (idx & 1) t[step] |= 1ull << a;
      idx >>= 1;
    }
}

// Sort key per the model-set invariant: "there" sequence first, then "here".
bool trace_key_less(const HTTrace& a, const HTTrace& b) {
  if (a.there().masks() != b.there().masks())
    return a.there().masks() < b.there().masks();
  return a.here().masks() < b.here().masks();
}

HTTrace materialize(const AlphabetPtr& alpha,
                    const std::vector<std::uint64_t>& h,
                    const std::vector<std::uint64_t>& t) {
  return HTTrace(Trace(alpha, h), Trace(alpha, t));
}

unsigned clamp_workers(unsigned w, std::uint64_t span) {
  if (w == 0) w = 1;
  if (w > 64) w = 64;
  if (span < w) w = span ? static_cast<unsigned>(span) : 1;
  return w;
}

// Runs fn(worker, begin, end) over contiguous chunks of [0, span) and
// rethrows the first worker exception after joining.
void run_chunked(unsigned workers, std::uint64_t span,
                 const std::function<void(unsigned, std::uint64_t,
                                          std::uint64_t)>& fn) {
  if (workers <= 1) {
    fn(0, 0, span);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (span + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t b = std::min<std::uint64_t>(span, w * chunk);
    const std::uint64_t e = std::min<std::uint64_t>(span, b + chunk);
    pool.emplace_back([&, w, b, e] {
      try {
        fn(w, b, e);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace

ModelSet enumerate_models(const Theory& t, AlphabetPtr a, std::size_t lambda,
                          Logic logic, const EnumOptions& options) {
  if (lambda == 0)
    throw std::invalid_argument("trace length must be at least 1");
  if (logic == Logic::MEL)
    throw std::invalid_argument("use mel_models for equilibrium enumeration");
  const std::size_t positions = a->size() * lambda;
  const std::uint64_t candidates =
      pow_saturating(logic == Logic::MHT ? 3 : 2, positions);
  if (candidates > options.cap)
    throw CapExceeded("candidate space " +
                      (candidates == kSaturated ? std::string("> 2^64")
                                                : std::to_string(candidates)) +
                      " exceeds cap " + std::to_string(options.cap));

  const unsigned workers = clamp_workers(options.workers, candidates);
  std::vector<std::vector<HTTrace>> found(workers);

  auto run = [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    SatChecker checker(t, a);
    std::vector<std::uint64_t> h(lambda), tt(lambda);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      if (logic == Logic::MHT) {
        decode_mht(idx, a->size(), h, tt);
        checker.bind(h, tt, false);
      } else {
        decode_mtl(idx, a->size(), tt);
        h = tt;
        checker.bind(tt, tt, true);
      }
      if (checker.theory_holds(0)) found[w].push_back(materialize(a, h, tt));
    }
  };

  run_chunked(workers, candidates, run);

  ModelSet out{logic, a, lambda, {}};
  for (auto& part : found)
    out.traces.insert(out.traces.end(), std::make_move_iterator(part.begin()),
                      std::make_move_iterator(part.end()));
  std::sort(out.traces.begin(), out.traces.end(), trace_key_less);
  out.traces.erase(std::unique(out.traces.begin(), out.traces.end()),
                   out.traces.end());
  return out;
}

namespace {

// Shared by is_equilibrium and mel_models: scans every H < T in the
// sorted step/atom removal order, stopping at the first countermodel.
bool equilibrium_scan(SatChecker& checker, const Trace& total,
                      std::optional<Trace>* counter_here) {
  struct Pos {
    std::size_t step;
    std::size_t atom;
  };
  std::vector<Pos> removable;
  for (std::size_t k = 0; k < total.length(); ++k)
    for (std::size_t atomi = 0; atomi < total.alphabet().size(); ++atomi)
      if (total.has(k, atomi)) removable.push_back({k, atomi});
  if (removable.size() >= 40)
    throw CapExceeded("minimality search space 2^" +
                      std::to_string(removable.size()) + " is too large");

  const std::uint64_t combos = 1ull << removable.size();
  std::vector<std::uint64_t> h(total.length());
  for (std::uint64_t removal = 1; removal < combos; ++removal) {
    h.assign(total.masks().begin(), total.masks().end());
    for (std::uint64_t bits = removal; bits;) {
      const int b = std::countr_zero(bits);
      bits &= bits - 1;
      h[removable[b].step] &= ~(1ull << removable[b].atom);
    }
    checker.bind(h, total.masks(), false);
    if (checker.theory_holds(0)) {
      if (counter_here)
        *counter_here = Trace(total.alphabet_ptr(), std::move(h));
      return false;
    }
  }
  return true;
}

}  // namespace

bool is_equilibrium(const Trace& total, const Theory& t,
                    std::optional<Trace>* counter_here) {
  SatChecker checker(t, total.alphabet_ptr());
  checker.bind(total.masks(), total.masks(), true);
  if (!checker.theory_holds(0))
    throw std::invalid_argument("trace is not a model of the theory");
  return equilibrium_scan(checker, total, counter_here);
}

ModelSet mel_models(const Theory& t, AlphabetPtr a, std::size_t lambda,
                    const EnumOptions& options) {
  ModelSet totals = enumerate_models(t, a, lambda, Logic::MTL, options);
  const std::size_t n = totals.traces.size();
  std::vector<char> keep(n, 0);

  const unsigned workers = clamp_workers(options.workers, n);
  run_chunked(workers, n, [&](unsigned, std::uint64_t begin,
                              std::uint64_t end) {
    SatChecker checker(t, a);
    for (std::size_t i = begin; i < end; ++i)
      keep[i] =
          equilibrium_scan(checker, totals.traces[i].there(), nullptr) ? 1 : 0;
  });

  ModelSet out{Logic::MEL, a, lambda, {}};
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) out.traces.push_back(totals.traces[i]);
  return out;
}

std::vector<HTTrace> equilibrium_of(const std::vector<HTTrace>& s) {
  std::vector<HTTrace> out;
  for (const auto& m : s) {
    if (!is_total(m)) continue;
    bool minimal = true;
    for (const auto& other : s) {
      if (!(other.there() == m.there())) continue;
      if (lt(other.here(), m.there())) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(m);
  }
  std::sort(out.begin(), out.end(), trace_key_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Verdict bounded_tautology(const Formula& f, AlphabetPtr a,
                          std::size_t lambda_max, Logic logic,
                          const EnumOptions& options) {
  if (lambda_max == 0)
    throw std::invalid_argument("maximum length must be at least 1");
  if (logic == Logic::MEL)
    throw std::invalid_argument("tautology checking is an MHT/MTL notion");

  std::uint64_t budget = 0;
  for (std::size_t lambda = 1; lambda <= lambda_max; ++lambda) {
    const std::uint64_t c =
        pow_saturating(logic == Logic::MHT ? 3 : 2, a->size() * lambda);
    budget = (budget > kSaturated - c) ? kSaturated : budget + c;
  }
  if (budget > options.cap)
    throw CapExceeded("candidate space exceeds cap " +
                      std::to_string(options.cap));

  Theory single{f};
  SatChecker checker(single, a);
  for (std::size_t lambda = 1; lambda <= lambda_max; ++lambda) {
    const std::uint64_t candidates =
        pow_saturating(logic == Logic::MHT ? 3 : 2, a->size() * lambda);
    std::vector<std::uint64_t> h(lambda), t(lambda);
    for (std::uint64_t idx = 0; idx < candidates; ++idx) {
      if (logic == Logic::MHT) {
        decode_mht(idx, a->size(), h, t);
        checker.bind(h, t, false);
      } else {
        decode_mtl(idx, a->size(), t);
        h = t;
        checker.bind(t, t, true);
      }
      for (std::size_t k = 0; k < lambda; ++k) {
        if (!checker.holds(0, k)) {
          Verdict v;
          v.valid = false;
          v.counterexample = materialize(a, h, t);
          v.time_point = k;
          return v;
        }
      }
    }
  }
  return Verdict{};
}

Verdict bounded_equiv(const Formula& f, const Formula& g, AlphabetPtr a,
                      std::size_t lambda_max, Logic logic,
                      const EnumOptions& options) {
  return bounded_tautology(iff(f, g), a, lambda_max, logic, options);
}

}  // namespace mht
