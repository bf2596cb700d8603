#include "mht/semantics.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace mht {

SatChecker::SatChecker(const Theory& roots, AlphabetPtr alphabet)
    : alphabet_(std::move(alphabet)) {
  for (const auto& f : roots) roots_.push_back(compile(f));
}

std::int32_t SatChecker::compile(const Formula& f) {
  for (const auto& [node, id] : compiled_)
    if (node == f.id()) return id;
  Sub s{f.kind()};
  switch (f.kind()) {
    case Connective::Falsum:
    case Connective::Verum:
      break;
    case Connective::Atom: {
      auto idx = alphabet_->index_of(f.name());
      s.atom = idx ? static_cast<std::int32_t>(*idx) : -1;
      break;
    }
    case Connective::Next:
    case Connective::WeakNext:
    case Connective::Prev:
    case Connective::WeakPrev:
      s.lhs = compile(f.child());
      break;
    default:
      if (is_metric_binary(f.kind())) s.bound = f.bound();
      s.lhs = compile(f.lhs());
      s.rhs = compile(f.rhs());
      break;
  }
  subs_.push_back(s);
  const auto id = static_cast<std::int32_t>(subs_.size() - 1);
  compiled_.emplace_back(f.id(), id);
  return id;
}

void SatChecker::bind(std::span<const std::uint64_t> h,
                      std::span<const std::uint64_t> t, bool total) {
  h_ = h;
  t_ = t;
  total_ = total;
  lambda_ = t.size();
  const std::size_t need = subs_.size() * lambda_ * 2;
  if (stamp_.size() < need) {
    stamp_.assign(need, 0);
    value_.assign(need, 0);
    epoch_ = 0;
  }
  if (++epoch_ == 0) {  // stamp wrap-around
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
}

bool SatChecker::theory_holds(std::size_t k) {
  for (std::size_t r = 0; r < roots_.size(); ++r)
    if (!holds(r, k)) return false;
  return true;
}

bool SatChecker::holds(std::size_t root, std::size_t k) {
  if (k >= lambda_) throw std::out_of_range("time point out of range");
  // Total traces never leave the "there" world.
  return eval(roots_[root], k, total_);
}

bool SatChecker::eval(std::int32_t id, std::size_t k, bool there_world) {
  const std::size_t slot = (static_cast<std::size_t>(id) * lambda_ + k) * 2 +
                           (there_world ? 1 : 0);
  if (stamp_[slot] == epoch_) return value_[slot] != 0;
  const Sub& s = subs_[id];
  bool r = false;
  switch (s.op) {
    case Connective::Falsum: r = false; break;
    case Connective::Verum: r = true; break;
    case Connective::Atom:
      r = s.atom >= 0 &&
          (((there_world ? t_[k] : h_[k]) >> s.atom) & 1u) != 0;
      break;
    case Connective::And:
      r = eval(s.lhs, k, there_world) && eval(s.rhs, k, there_world);
      break;
    case Connective::Or:
      r = eval(s.lhs, k, there_world) || eval(s.rhs, k, there_world);
      break;
    case Connective::Implies:
      // Both worlds from "here"; only the total world from "there".
      r = !eval(s.lhs, k, true) || eval(s.rhs, k, true);
      if (r && !there_world)
        r = !eval(s.lhs, k, false) || eval(s.rhs, k, false);
      break;
    case Connective::Next:
      r = k + 1 < lambda_ && eval(s.lhs, k + 1, there_world);
      break;
    case Connective::WeakNext:
      r = k + 1 == lambda_ || eval(s.lhs, k + 1, there_world);
      break;
    case Connective::Prev:
      r = k > 0 && eval(s.lhs, k - 1, there_world);
      break;
    case Connective::WeakPrev:
      r = k == 0 || eval(s.lhs, k - 1, there_world);
      break;
    case Connective::Until: {
      const long long n = s.bound.resolve(lambda_);
      bool prefix = true;
      for (long long j = 0; j < n && k + j < lambda_; ++j) {
        if (eval(s.rhs, k + j, there_world)) {
          r = true;
          break;
        }
        prefix = eval(s.lhs, k + j, there_world);
        if (!prefix) break;
      }
      break;
    }
    case Connective::Release: {
      const long long n = s.bound.resolve(lambda_);
      r = true;
      for (long long j = 0; j < n && k + j < lambda_; ++j) {
        if (!eval(s.rhs, k + j, there_world)) {
          r = false;
          break;
        }
        if (eval(s.lhs, k + j, there_world)) break;  // released
      }
      break;
    }
    case Connective::Since: {
      const long long n = s.bound.resolve(lambda_);
      for (long long j = 0; j < n && j <= static_cast<long long>(k); ++j) {
        if (eval(s.rhs, k - j, there_world)) {
          r = true;
          break;
        }
        if (!eval(s.lhs, k - j, there_world)) break;
      }
      break;
    }
    case Connective::Trigger: {
      const long long n = s.bound.resolve(lambda_);
      r = true;
      for (long long j = 0; j < n && j <= static_cast<long long>(k); ++j) {
        if (!eval(s.rhs, k - j, there_world)) {
          r = false;
          break;
        }
        if (eval(s.lhs, k - j, there_world)) break;
      }
      break;
    }
  }
  stamp_[slot] = epoch_;
  value_[slot] = r ? 1 : 0;
  return r;
}

bool holds(const HTTrace& m, std::size_t k, const Formula& f) {
  SatChecker checker({f}, m.alphabet_ptr());
  checker.bind(m.here().masks(), m.there().masks(), is_total(m));
  return checker.holds(0, k);
}

bool holds_theory(const HTTrace& m, const Theory& t) {
  if (t.empty()) return true;
  SatChecker checker(t, m.alphabet_ptr());
  checker.bind(m.here().masks(), m.there().masks(), is_total(m));
  return checker.theory_holds(0);
}

namespace {

/// Recursive three-valued evaluation with per-call memoization.
class Valuator {
 public:
  Valuator(const HTTrace& m) : m_(m), lambda_(m.length()) {}

  int value(const Formula& f, std::size_t k) {
    const Key key{f.id(), k};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const int v = compute(f, k);
    memo_.emplace(key, v);
    return v;
  }

 private:
  struct Key {
    const void* node;
    std::size_t k;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const {
      return std::hash<const void*>()(key.node) * 1000003u ^ key.k;
    }
  };

  int compute(const Formula& f, std::size_t k) {
    switch (f.kind()) {
      case Connective::Falsum: return 0;
      case Connective::Verum: return 2;
      case Connective::Atom: {
        auto idx = m_.alphabet().index_of(f.name());
        if (!idx) return 0;
        if (m_.here().has(k, *idx)) return 2;
        if (m_.there().has(k, *idx)) return 1;
        return 0;
      }
      case Connective::And:
        return std::min(value(f.lhs(), k), value(f.rhs(), k));
      case Connective::Or:
        return std::max(value(f.lhs(), k), value(f.rhs(), k));
      case Connective::Implies: {
        const int a = value(f.lhs(), k), b = value(f.rhs(), k);
        return a <= b ? 2 : b;
      }
      case Connective::Next:
        return k + 1 == lambda_ ? 0 : value(f.child(), k + 1);
      case Connective::WeakNext:
        return k + 1 == lambda_ ? 2 : value(f.child(), k + 1);
      case Connective::Prev: return k == 0 ? 0 : value(f.child(), k - 1);
      case Connective::WeakPrev: return k == 0 ? 2 : value(f.child(), k - 1);
      case Connective::Until: {
        const long long n = f.bound().resolve(lambda_);
        int best = 0, prefix = 2;
        for (long long i = 0; i < n && k + i < lambda_; ++i) {
          best = std::max(best, std::min(value(f.rhs(), k + i), prefix));
          if (best == 2) break;
          prefix = std::min(prefix, value(f.lhs(), k + i));
          if (prefix == 0) break;
        }
        return best;
      }
      case Connective::Release: {
        const long long n = f.bound().resolve(lambda_);
        int best = 2, prefix = 0;
        for (long long i = 0; i < n && k + i < lambda_; ++i) {
          best = std::min(best, std::max(value(f.rhs(), k + i), prefix));
          if (best == 0) break;
          prefix = std::max(prefix, value(f.lhs(), k + i));
          if (prefix == 2) break;
        }
        return best;
      }
      case Connective::Since: {
        const long long n = f.bound().resolve(lambda_);
        int best = 0, prefix = 2;
        for (long long i = 0; i < n && i <= static_cast<long long>(k); ++i) {
          best = std::max(best, std::min(value(f.rhs(), k - i), prefix));
          if (best == 2) break;
          prefix = std::min(prefix, value(f.lhs(), k - i));
          if (prefix == 0) break;
        }
        return best;
      }
      case Connective::Trigger: {
        const long long n = f.bound().resolve(lambda_);
        int best = 2, prefix = 0;
        for (long long i = 0; i < n && i <= static_cast<long long>(k); ++i) {
          best = std::min(best, std::max(value(f.rhs(), k - i), prefix));
          if (best == 0) break;
          prefix = std::max(prefix, value(f.lhs(), k - i));
          if (prefix == 2) break;
        }
        return best;
      }
    }
    return 0;
  }

  const HTTrace& m_;
  std::size_t lambda_;
  std::unordered_map<Key, int, KeyHash> memo_;
};

}  // namespace

TruthValue valuation(const HTTrace& m, std::size_t k, const Formula& f) {
  if (k >= m.length()) throw std::out_of_range("time point out of range");
  Valuator v(m);
  return static_cast<TruthValue>(v.value(f, k));
}

bool oracle_holds(const HTTrace& m, std::size_t k, const DerivedOpSpec& f) {
  using Kind = DerivedOpSpec::Kind;
  const auto lambda = static_cast<long long>(m.length());
  const auto kk = static_cast<long long>(k);
  if (kk >= lambda) throw std::out_of_range("time point out of range");
  auto sat = [&](const Formula& g, long long at) {
    return holds(m, static_cast<std::size_t>(at), g);
  };
  switch (f.kind) {
    case Kind::Initial: return k == 0;
    case Kind::Final: return kk + 1 == lambda;
    case Kind::WeakNext: return kk + 1 == lambda || sat(f.args[0], kk + 1);
    case Kind::WeakPrev: return k == 0 || sat(f.args[0], kk - 1);
    case Kind::Eventually: {
      const long long n = f.bound.resolve(m.length());
      for (long long j = 0; j < n && kk + j < lambda; ++j)
        if (sat(f.args[0], kk + j)) return true;
      return false;
    }
    case Kind::Always: {
      const long long n = f.bound.resolve(m.length());
      for (long long j = 0; j < n && kk + j < lambda; ++j)
        if (!sat(f.args[0], kk + j)) return false;
      return true;
    }
    case Kind::Once: {
      const long long n = f.bound.resolve(m.length());
      for (long long j = 0; j < n && j <= kk; ++j)
        if (sat(f.args[0], kk - j)) return true;
      return false;
    }
    case Kind::Historically: {
      const long long n = f.bound.resolve(m.length());
      for (long long j = 0; j < n && j <= kk; ++j)
        if (!sat(f.args[0], kk - j)) return false;
      return true;
    }
    case Kind::EventuallyInterval: {
      const long long n = f.bound.resolve(m.length());
      for (long long j = f.lo; j < n; ++j)
        if (kk + j >= 0 && kk + j < lambda && sat(f.args[0], kk + j))
          return true;
      return false;
    }
    case Kind::AlwaysInterval: {
      const long long n = f.bound.resolve(m.length());
      for (long long j = f.lo; j < n; ++j)
        if (kk + j >= 0 && kk + j < lambda && !sat(f.args[0], kk + j))
          return false;
      return true;
    }
    case Kind::OnceInterval: {
      const long long n = f.bound.resolve(m.length());
      for (long long j = f.lo; j < n; ++j)
        if (kk - j >= 0 && kk - j < lambda && sat(f.args[0], kk - j))
          return true;
      return false;
    }
    case Kind::HistoricallyInterval: {
      const long long n = f.bound.resolve(m.length());
      for (long long j = f.lo; j < n; ++j)
        if (kk - j >= 0 && kk - j < lambda && !sat(f.args[0], kk - j))
          return false;
      return true;
    }
    case Kind::Until: {
      for (long long j = kk; j < lambda; ++j) {
        if (sat(f.args[1], j)) {
          bool pre = true;
          for (long long i = kk; i < j && pre; ++i) pre = sat(f.args[0], i);
          if (pre) return true;
        }
      }
      return false;
    }
    case Kind::Release: {
      for (long long j = kk; j < lambda; ++j) {
        if (sat(f.args[1], j)) continue;
        bool rel = false;
        for (long long i = kk; i < j && !rel; ++i) rel = sat(f.args[0], i);
        if (!rel) return false;
      }
      return true;
    }
    case Kind::Since: {
      for (long long j = kk; j >= 0; --j) {
        if (sat(f.args[1], j)) {
          bool pre = true;
          for (long long i = j + 1; i <= kk && pre; ++i)
            pre = sat(f.args[0], i);
          if (pre) return true;
        }
      }
      return false;
    }
    case Kind::Trigger: {
      for (long long j = kk; j >= 0; --j) {
        if (sat(f.args[1], j)) continue;
        bool rel = false;
        for (long long i = j + 1; i <= kk && !rel; ++i)
          rel = sat(f.args[0], i);
        if (!rel) return false;
      }
      return true;
    }
  }
  throw std::invalid_argument("unsupported derived operator");
}

}  // namespace mht
