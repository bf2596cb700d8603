#include <doctest.h>

#include <random>

#include "gen.hpp"
#include "mht/formula.hpp"
#include "mht/models.hpp"
#include "mht/parser.hpp"

using namespace mht;

TEST_CASE("derived operators expand to their definitions") {
  const Formula p = atom("p"), q = atom("q");
  CHECK(derive("eventually", Bound::numeral(3), {p}) ==
        until(Bound::numeral(3), verum(), p));
  CHECK(derive("not", {falsum()}) == implies(falsum(), falsum()));
  CHECK(derive("until", {p, q}) == until(Bound::trace_length(), p, q));
  CHECK(derive("iff", {p, q}) == conj(implies(p, q), implies(q, p)));
  CHECK(derive("initial", {}) == neg(prev(verum())));
  CHECK(derive("final", {}) == neg(next(verum())));
  CHECK(derive("always", Bound::numeral(4), {p}) ==
        release(Bound::numeral(4), falsum(), p));
  CHECK(derive("once", {p}) == since(Bound::trace_length(), verum(), p));
  CHECK(derive("historically", {p}) ==
        trigger(Bound::trace_length(), falsum(), p));
  CHECK(derive("top", {}) == verum());

  CHECK_THROWS_AS(derive("sometimes", {p}), std::invalid_argument);
  CHECK_THROWS_AS(derive("not", {p, q}), std::invalid_argument);
}

TEST_CASE("interval desugaring") {
  const Formula p = atom("p");
  CHECK(interval(MetricOp::Eventually, 5, Bound::numeral(3), {p}) ==
        iterate(StepOp::Next, 5, eventually(Bound::numeral(-2), p)));
  CHECK(interval(MetricOp::Eventually, 1, Bound::numeral(2), {p}) ==
        next(eventually(Bound::numeral(1), p)));
  CHECK(interval(MetricOp::Always, 0, Bound::trace_length(), {p}) ==
        always(Bound::trace_length(), p));
  CHECK(interval(MetricOp::Until, 2, Bound::trace_length(),
                 {atom("a"), atom("b")}) ==
        iterate(StepOp::Next, 2,
                until(Bound::trace_length(), atom("a"), atom("b"))));
  CHECK(interval(MetricOp::Historically, 1, Bound::numeral(3), {p}) ==
        wprev(historically(Bound::numeral(2), p)));
  CHECK_THROWS_AS(interval(MetricOp::Eventually, -1, Bound::numeral(2), {p}),
                  std::invalid_argument);
}

TEST_CASE("empty intervals trivialize to a truth constant") {
  auto a = make_alphabet({"p", "q"});
  const Formula p = atom("p"), q = atom("q");
  // Strong operators collapse to #false, weak ones to #true.
  CHECK(bounded_equiv(interval(MetricOp::Eventually, 5, Bound::numeral(3), {p}),
                      falsum(), a, 4, Logic::MHT));
  CHECK(bounded_equiv(interval(MetricOp::Until, 3, Bound::numeral(3), {p, q}),
                      falsum(), a, 4, Logic::MHT));
  CHECK(bounded_equiv(interval(MetricOp::Once, 2, Bound::numeral(1), {p}),
                      falsum(), a, 4, Logic::MHT));
  CHECK(bounded_equiv(interval(MetricOp::Since, 2, Bound::numeral(2), {p, q}),
                      falsum(), a, 4, Logic::MHT));
  CHECK(bounded_equiv(interval(MetricOp::Always, 4, Bound::numeral(2), {p}),
                      verum(), a, 4, Logic::MHT));
  CHECK(bounded_equiv(interval(MetricOp::Release, 2, Bound::numeral(0), {p, q}),
                      verum(), a, 4, Logic::MHT));
  CHECK(bounded_equiv(interval(MetricOp::Historically, 3, Bound::numeral(3), {p}),
                      verum(), a, 4, Logic::MHT));
  CHECK(bounded_equiv(interval(MetricOp::Trigger, 1, Bound::numeral(1), {p, q}),
                      verum(), a, 4, Logic::MHT));
}

TEST_CASE("one-step interval representations") {
  auto a = make_alphabet({"p"});
  const Formula p = atom("p");
  CHECK(bounded_equiv(interval(MetricOp::Eventually, 1, Bound::numeral(2), {p}),
                      next(p), a, 4, Logic::MHT));
  CHECK(bounded_equiv(interval(MetricOp::Always, 1, Bound::numeral(2), {p}),
                      wnext(p), a, 4, Logic::MHT));
  CHECK(bounded_equiv(interval(MetricOp::Once, 1, Bound::numeral(2), {p}),
                      prev(p), a, 4, Logic::MHT));
  CHECK(bounded_equiv(interval(MetricOp::Historically, 1, Bound::numeral(2), {p}),
                      wprev(p), a, 4, Logic::MHT));
}

TEST_CASE("iterate") {
  const Formula p = atom("p");
  CHECK(iterate(StepOp::Next, 2, p) == next(next(p)));
  CHECK(iterate(StepOp::Prev, 0, p) == p);
  CHECK(iterate(StepOp::WeakNext, 3, atom("green")) ==
        wnext(wnext(wnext(atom("green")))));

  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    std::uniform_int_distribution<std::size_t> d(0, 4);
    const std::size_t x = d(rng), y = d(rng);
    for (auto op : {StepOp::Next, StepOp::WeakNext, StepOp::Prev,
                    StepOp::WeakPrev})
      CHECK(iterate(op, x, iterate(op, y, p)) == iterate(op, x + y, p));
  }
}

TEST_CASE("size counts nodes") {
  const Formula p = atom("p"), q = atom("q");
  CHECK(size(p) == 1);
  CHECK(size(conj(p, q)) == 3);
  CHECK(size(until(Bound::numeral(5), p, q)) == 3);
  CHECK(size(eventually(Bound::numeral(3), always(Bound::numeral(4), p))) ==
        5);
}

TEST_CASE("max_subindex floors at one") {
  const Formula p = atom("p"), q = atom("q");
  CHECK(max_subindex(p) == 1);
  CHECK(max_subindex(eventually(Bound::numeral(3),
                                always(Bound::numeral(4), atom("green")))) ==
        4);
  CHECK(max_subindex(until(Bound::trace_length(), p, q)) == 1);
  CHECK(max_subindex(until(Bound::numeral(-3), p, q)) == 1);
}

TEST_CASE("alphabet scan") {
  CHECK(alphabet(parse_theory("G (red & green -> #false)")) ==
        std::vector<std::string>{"green", "red"});
  CHECK(alphabet(Theory{verum()}).empty());
  const auto traffic = parse_theory(
      "G (red & green -> #false)\n"
      "G (~green -> red)\n"
      "G (push -> F[3] G[4] green)\n");
  CHECK(alphabet(traffic) ==
        std::vector<std::string>{"green", "push", "red"});
}

TEST_CASE("structural order is total and consistent with equality") {
  std::mt19937 rng(11);
  testgen::GenConfig cfg;
  std::vector<Formula> fs;
  for (int i = 0; i < 40; ++i) fs.push_back(testgen::random_formula(rng, cfg));
  for (const auto& a : fs)
    for (const auto& b : fs) {
      const int ab = compare(a, b), ba = compare(b, a);
      CHECK(((ab == 0) == (a == b)));
      CHECK(((ab < 0) == (ba > 0)));
      for (const auto& c : fs)
        if (ab < 0 && compare(b, c) < 0) CHECK(compare(a, c) < 0);
    }
}

TEST_CASE("sugar is eliminated eagerly and structurally") {
  const Formula p = atom("p");
  CHECK(derive("eventually", Bound::numeral(2), {p}) ==
        until(Bound::numeral(2), verum(), p));
  CHECK(parse_formula("F[2] p") == until(Bound::numeral(2), verum(), p));
}
