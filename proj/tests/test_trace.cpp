#include <doctest.h>

#include <random>

#include "gen.hpp"
#include "mht/parser.hpp"
#include "mht/trace.hpp"

using namespace mht;

namespace {

Trace tr(const AlphabetPtr& a, const std::vector<std::vector<std::string>>& s) {
  return Trace::of_states(a, s);
}

}  // namespace

TEST_CASE("pointwise inclusion order") {
  auto a = make_alphabet({"g", "p", "r"});
  CHECK(le(tr(a, {{}}), tr(a, {{"g"}})));
  CHECK_FALSE(lt(tr(a, {{"g"}}), tr(a, {{"g"}})));
  CHECK(le(tr(a, {{}, {"p"}, {"g"}}), tr(a, {{"r"}, {"r", "p"}, {"g"}})));
  CHECK_FALSE(le(tr(a, {{"g"}}), tr(a, {{"p"}})));
  CHECK_THROWS_AS(le(tr(a, {{}}), tr(a, {{}, {}})), std::invalid_argument);
}

TEST_CASE("le is a partial order (exhaustive, two atoms, length two)") {
  auto a = make_alphabet({"p", "q"});
  std::vector<Trace> all;
  for (std::uint64_t m0 = 0; m0 < 4; ++m0)
    for (std::uint64_t m1 = 0; m1 < 4; ++m1) all.push_back(Trace(a, {m0, m1}));
  for (const auto& x : all) {
    CHECK(le(x, x));
    for (const auto& y : all) {
      if (le(x, y) && le(y, x)) CHECK(x == y);
      for (const auto& z : all)
        if (le(x, y) && le(y, z)) CHECK(le(x, z));
    }
  }
}

TEST_CASE("totality") {
  auto a = make_alphabet({"g"});
  CHECK(is_total(HTTrace::total(tr(a, {{"g"}}))));
  CHECK_FALSE(is_total(HTTrace(tr(a, {{}}), tr(a, {{"g"}}))));
  CHECK(is_total(HTTrace(tr(a, {{"g"}}), tr(a, {{"g"}}))));
}

TEST_CASE("the HT condition is enforced") {
  auto a = make_alphabet({"g"});
  CHECK_THROWS_AS(HTTrace(tr(a, {{"g"}}), tr(a, {{}})), std::invalid_argument);
}

TEST_CASE("restriction") {
  auto big = make_alphabet({"__l9", "green"});
  auto target = Alphabet({"green", "push", "red"});
  auto m = HTTrace::total(tr(big, {{"green", "__l9"}}));
  auto got = restrict(m, target);
  CHECK(got.alphabet().names() ==
        std::vector<std::string>{"green", "push", "red"});
  CHECK(got.there().state(0) == std::vector<std::string>{"green"});
  CHECK(is_total(got));

  // identity on the trace's own alphabet
  auto same = restrict(m, *big);
  CHECK(same == m);

  // restriction to the empty alphabet empties every state
  auto none = restrict(m, Alphabet(std::vector<std::string>{}));
  CHECK(none.there().state(0).empty());
}

TEST_CASE("restriction preserves the HT condition on random traces") {
  std::mt19937 rng(5);
  auto a = make_alphabet({"p", "q", "r"});
  auto sub = Alphabet({"p", "r"});
  for (int i = 0; i < 100; ++i) {
    auto m = testgen::random_httrace(rng, a, 3);
    auto got = restrict(m, sub);  // constructor re-checks H <= T
    for (std::size_t k = 0; k < got.length(); ++k)
      CHECK((got.here().mask(k) & ~got.there().mask(k)) == 0);
  }
}

TEST_CASE("reversal") {
  auto a = make_alphabet({"a", "b", "c"});
  auto m = HTTrace::total(tr(a, {{"a"}, {"b"}, {"c"}}));
  auto rev = reverse(m);
  CHECK(rev.there().state(0) == std::vector<std::string>{"c"});
  CHECK(rev.there().state(2) == std::vector<std::string>{"a"});
  CHECK(reverse(rev) == m);

  auto traffic = make_alphabet({"g", "p", "r"});
  auto eq = HTTrace::total(tr(traffic, {{"r"}, {"r", "p"}, {"g"}}));
  auto back = reverse(eq);
  CHECK(back.there().state(0) == std::vector<std::string>{"g"});
  CHECK(back.there().state(1) == std::vector<std::string>{"p", "r"});
  CHECK(back.there().state(2) == std::vector<std::string>{"r"});

  std::mt19937 rng(9);
  for (int i = 0; i < 100; ++i) {
    auto x = testgen::random_httrace(rng, traffic, 4);
    CHECK(reverse(reverse(x)) == x);
  }
}

TEST_CASE("trace length zero is rejected") {
  auto a = make_alphabet({"p"});
  CHECK_THROWS_AS(Trace(a, {}), std::invalid_argument);
  CHECK_THROWS_AS(read_trace("% only a comment\n"), ParseError);
}

TEST_CASE("trace file round trip") {
  const char* text =
      "% a mixed trace\n"
      "- | green,push\n"
      "red\n"
      "green | green,push\n";
  auto m = read_trace(text);
  CHECK(m.length() == 3);
  CHECK_FALSE(is_total(m));
  CHECK(m.here().state(0).empty());
  CHECK(m.there().state(0) == std::vector<std::string>{"green", "push"});
  CHECK(m.here().state(1) == std::vector<std::string>{"red"});

  const std::string emitted = write_trace(m);
  CHECK(emitted ==
        "- | green,push\n"
        "red | red\n"
        "green | green,push\n");
  CHECK(read_trace(emitted, m.alphabet_ptr()) == m);
}

TEST_CASE("total trace emission is single column and sorted") {
  auto a = make_alphabet({"push", "red"});
  auto m = HTTrace::total(tr(a, {{"red", "push"}, {}}));
  CHECK(write_trace(m) == "push,red\n-\n");
}

TEST_CASE("bad trace lines are rejected with a location") {
  try {
    read_trace("red\nGreen\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.where().line == 2);
  }
  CHECK_THROWS_AS(read_trace("red,,green\n"), ParseError);
}
