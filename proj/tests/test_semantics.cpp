#include <doctest.h>

#include <random>

#include "gen.hpp"
#include "mht/models.hpp"
#include "mht/parser.hpp"
#include "mht/semantics.hpp"
#include "mht/transform.hpp"

using namespace mht;

namespace {

const char* kTraffic =
    "G (red & green -> #false)\n"
    "G (~green -> red)\n"
    "G (push -> F[3] G[4] green)\n";

Theory traffic() { return parse_theory(kTraffic); }

AlphabetPtr traffic_alpha() {
  return make_alphabet({"green", "push", "red"});
}

HTTrace total_of(const AlphabetPtr& a,
                 const std::vector<std::vector<std::string>>& states) {
  return HTTrace::total(Trace::of_states(a, states));
}

}  // namespace

TEST_CASE("satisfaction clauses on the running example") {
  auto a = traffic_alpha();
  auto red = total_of(a, {{"red"}});
  for (const auto& rule : traffic()) CHECK(holds(red, 0, rule));

  CHECK_FALSE(holds(red, 0, falsum()));
  CHECK(holds(red, 0, verum()));
  CHECK_THROWS_AS(holds(red, 1, verum()), std::out_of_range);
}

TEST_CASE("bounded eventually looks at most n steps ahead") {
  auto a = make_alphabet({"p"});
  auto with_p_at = [&](std::size_t at) {
    std::vector<std::vector<std::string>> states(4);
    states[at] = {"p"};
    return total_of(a, states);
  };
  const Formula f = eventually(Bound::numeral(3), atom("p"));
  CHECK(holds(with_p_at(2), 0, f));
  CHECK_FALSE(holds(with_p_at(3), 0, f));
}

TEST_CASE("theory satisfaction") {
  auto a = traffic_alpha();
  CHECK(holds_theory(HTTrace(Trace::of_states(a, {{}}),
                             Trace::of_states(a, {{"green"}})),
                     traffic()));
  CHECK(holds_theory(total_of(a, {{"green", "push"}}), traffic()));
  CHECK_FALSE(holds_theory(HTTrace(Trace::of_states(a, {{}}),
                                   Trace::of_states(a, {{"red"}})),
                           traffic()));
  CHECK(holds_theory(total_of(a, {{}}), Theory{}));
}

TEST_CASE("three-valued valuation basics") {
  auto a = make_alphabet({"p"});
  auto m = HTTrace(Trace::of_states(a, {{}}), Trace::of_states(a, {{"p"}}));
  CHECK(valuation(m, 0, atom("p")) == TruthValue::PotentiallyTrue);
  CHECK(valuation(m, 0, falsum()) == TruthValue::AssumedFalse);
  CHECK(valuation(m, 0, verum()) == TruthValue::ProvedTrue);
  CHECK(valuation(m, 0, neg(atom("p"))) == TruthValue::AssumedFalse);
  auto h = total_of(a, {{"p"}});
  CHECK(valuation(h, 0, atom("p")) == TruthValue::ProvedTrue);
  CHECK_THROWS_AS(valuation(m, 5, atom("p")), std::out_of_range);
}

TEST_CASE("three-valued agreement with satisfaction") {
  std::mt19937 rng(42);
  testgen::GenConfig cfg;
  cfg.max_depth = 3;
  auto a = make_alphabet({"p", "q"});
  for (int i = 0; i < 30; ++i) {
    const Formula f = testgen::random_formula(rng, cfg);
    for (std::size_t lambda = 1; lambda <= 2; ++lambda) {
      for (const auto& m : testgen::all_httraces(a, lambda)) {
        auto total = HTTrace::total(m.there());
        for (std::size_t k = 0; k < lambda; ++k) {
          const auto v = valuation(m, k, f);
          CHECK(holds(m, k, f) == (v == TruthValue::ProvedTrue));
          CHECK(holds(total, k, f) == (v != TruthValue::AssumedFalse));
        }
      }
    }
  }
}

TEST_CASE("three-valued agreement over three atoms") {
  std::mt19937 rng(142);
  testgen::GenConfig cfg;
  cfg.max_depth = 3;
  cfg.atoms = {"p", "q", "r"};
  auto a = make_alphabet(cfg.atoms);
  for (int i = 0; i < 8; ++i) {
    const Formula f = testgen::random_formula(rng, cfg);
    for (const auto& m : testgen::all_httraces(a, 2)) {
      auto total = HTTrace::total(m.there());
      for (std::size_t k = 0; k < 2; ++k) {
        const auto v = valuation(m, k, f);
        CHECK(holds(m, k, f) == (v == TruthValue::ProvedTrue));
        CHECK(holds(total, k, f) == (v != TruthValue::AssumedFalse));
      }
    }
  }
}

TEST_CASE("persistence") {
  std::mt19937 rng(43);
  testgen::GenConfig cfg;
  auto a = make_alphabet({"p", "q"});
  for (int i = 0; i < 200; ++i) {
    const Formula f = testgen::random_formula(rng, cfg);
    auto m = testgen::random_httrace(rng, a, 3);
    auto total = HTTrace::total(m.there());
    for (std::size_t k = 0; k < 3; ++k) {
      if (holds(m, k, f)) CHECK(holds(total, k, f));
      CHECK(holds(m, k, neg(f)) == !holds(total, k, f));
    }
  }
}

TEST_CASE("derived-operator oracle agrees with the expansions") {
  std::mt19937 rng(44);
  testgen::GenConfig cfg;
  cfg.max_depth = 2;
  auto a = make_alphabet({"p", "q"});

  auto agree = [&](const DerivedOpSpec& spec, const Formula& expanded) {
    for (std::size_t lambda = 1; lambda <= 3; ++lambda)
      for (const auto& m : testgen::all_httraces(a, lambda))
        for (std::size_t k = 0; k < lambda; ++k) {
          CAPTURE(print_formula(expanded));
          CAPTURE(lambda);
          CAPTURE(k);
          CHECK(oracle_holds(m, k, spec) == holds(m, k, expanded));
        }
  };

  SUBCASE("time-point operators") {
    agree(DerivedOpSpec::initial(), initial_state());
    agree(DerivedOpSpec::final_point(), final_state());
  }

  SUBCASE("weak one-step operators") {
    for (int i = 0; i < 3; ++i) {
      const Formula f = testgen::random_formula(rng, cfg);
      agree(DerivedOpSpec::weak_next(f), wnext(f));
      agree(DerivedOpSpec::weak_prev(f), wprev(f));
    }
  }

  SUBCASE("bounded unary operators") {
    std::vector<Bound> bounds{Bound::numeral(0), Bound::numeral(1),
                              Bound::numeral(2), Bound::numeral(3),
                              Bound::trace_length()};
    for (const auto& b : bounds) {
      const Formula f = testgen::random_formula(rng, cfg);
      agree(DerivedOpSpec::eventually(b, f), eventually(b, f));
      agree(DerivedOpSpec::always(b, f), always(b, f));
      agree(DerivedOpSpec::once(b, f), once(b, f));
      agree(DerivedOpSpec::historically(b, f), historically(b, f));
    }
  }

  SUBCASE("interval unary operators") {
    for (long long lo = 0; lo <= 2; ++lo)
      for (long long hi = lo - 1; hi <= 3; ++hi) {
        const Formula f = testgen::random_formula(rng, cfg);
        const Bound b = Bound::numeral(hi);
        agree(DerivedOpSpec::eventually_interval(lo, b, f),
              interval(MetricOp::Eventually, lo, b, {f}));
        agree(DerivedOpSpec::always_interval(lo, b, f),
              interval(MetricOp::Always, lo, b, {f}));
        agree(DerivedOpSpec::once_interval(lo, b, f),
              interval(MetricOp::Once, lo, b, {f}));
        agree(DerivedOpSpec::historically_interval(lo, b, f),
              interval(MetricOp::Historically, lo, b, {f}));
      }
    // trace-length upper bounds
    for (long long lo = 0; lo <= 2; ++lo) {
      const Formula f = testgen::random_formula(rng, cfg);
      const Bound b = Bound::trace_length();
      agree(DerivedOpSpec::eventually_interval(lo, b, f),
            interval(MetricOp::Eventually, lo, b, {f}));
      agree(DerivedOpSpec::always_interval(lo, b, f),
            interval(MetricOp::Always, lo, b, {f}));
    }
  }

  SUBCASE("temporal binary operators") {
    for (int i = 0; i < 3; ++i) {
      const Formula l = testgen::random_formula(rng, cfg);
      const Formula r = testgen::random_formula(rng, cfg);
      const Bound ell = Bound::trace_length();
      agree(DerivedOpSpec::until_temporal(l, r), until(ell, l, r));
      agree(DerivedOpSpec::release_temporal(l, r), release(ell, l, r));
      agree(DerivedOpSpec::since_temporal(l, r), since(ell, l, r));
      agree(DerivedOpSpec::trigger_temporal(l, r), trigger(ell, l, r));
    }
  }
}

TEST_CASE("unfolding equivalences hold for random operands") {
  std::mt19937 rng(45);
  testgen::GenConfig cfg;
  cfg.max_depth = 1;
  auto a = make_alphabet({"p", "q"});
  for (int i = 0; i < 12; ++i) {
    const Formula f = testgen::random_formula(rng, cfg);
    const Formula g = testgen::random_formula(rng, cfg);
    for (long long n = 1; n <= 3; ++n) {
      const Bound b = Bound::numeral(n), d = Bound::numeral(n - 1);
      CHECK(bounded_equiv(until(b, f, g),
                          disj(g, conj(f, next(until(d, f, g)))), a, 4,
                          Logic::MHT));
      CHECK(bounded_equiv(release(b, f, g),
                          conj(g, disj(f, wnext(release(d, f, g)))), a, 4,
                          Logic::MHT));
      CHECK(bounded_equiv(since(b, f, g),
                          disj(g, conj(f, prev(since(d, f, g)))), a, 4,
                          Logic::MHT));
      CHECK(bounded_equiv(trigger(b, f, g),
                          conj(g, disj(f, wprev(trigger(d, f, g)))), a, 4,
                          Logic::MHT));
    }
    const Bound ell = Bound::trace_length();
    CHECK(bounded_equiv(until(ell, f, g),
                        disj(g, conj(f, next(until(ell, f, g)))), a, 3,
                        Logic::MHT));
    CHECK(bounded_equiv(trigger(ell, f, g),
                        conj(g, disj(f, wprev(trigger(ell, f, g)))), a, 3,
                        Logic::MHT));
  }
}

TEST_CASE("bound-one operators collapse to their right operand") {
  std::mt19937 rng(46);
  testgen::GenConfig cfg;
  cfg.max_depth = 2;
  auto a = make_alphabet({"p", "q"});
  const Bound one = Bound::numeral(1);
  for (int i = 0; i < 10; ++i) {
    const Formula f = testgen::random_formula(rng, cfg);
    const Formula g = testgen::random_formula(rng, cfg);
    for (const auto& h : {until(one, f, g), release(one, f, g),
                          since(one, f, g), trigger(one, f, g)}) {
      for (std::size_t lambda = 1; lambda <= 3; ++lambda)
        for (const auto& m : testgen::all_httraces(a, lambda))
          for (std::size_t k = 0; k < lambda; ++k)
            CHECK(holds(m, k, h) == holds(m, k, g));
    }
  }
}

TEST_CASE("implication-free equivalence coincides in MTL and MHT") {
  std::mt19937 rng(47);
  testgen::GenConfig cfg;
  cfg.allow_implication = false;
  cfg.max_depth = 2;
  auto a = make_alphabet({"p", "q"});
  int interesting = 0;
  for (int i = 0; i < 120; ++i) {
    const Formula f = testgen::random_formula(rng, cfg);
    const Formula g = testgen::random_formula(rng, cfg);
    const bool mtl = bounded_equiv(f, g, a, 3, Logic::MTL).valid;
    const bool mht = bounded_equiv(f, g, a, 3, Logic::MHT).valid;
    CHECK(mtl == mht);
    interesting += mtl;
  }
  CHECK(interesting > 0);  // the sample includes genuine equivalences
}
