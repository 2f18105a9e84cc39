#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "ptb/monodromy.hpp"

using namespace ptb;

namespace {

TriPoly x(int i) { return TriPoly::variable(i); }

TriPoly f_at_x3(long k) { return TriPoly::from_unipoly(cheb(k), 2); }

TriPoly df_at_x3(long k) { return TriPoly::from_unipoly(cheb(k).derivative(), 2); }

}  // namespace

TEST_CASE("parse_word: pinned values") {
  MonodromyWord w = parse_word("L R^-6");
  REQUIRE(w.runs.size() == 2);
  CHECK(w.runs[0].letter == 'L');
  CHECK(w.runs[0].exp == 1);
  CHECK(w.runs[1].letter == 'R');
  CHECK(w.runs[1].exp == -6);
  CHECK_FALSE(w.negative);

  MonodromyWord merged = parse_word("R^2 R^3");
  REQUIRE(merged.runs.size() == 1);
  CHECK(merged.runs[0].letter == 'R');
  CHECK(merged.runs[0].exp == 5);

  MonodromyWord neg = parse_word("-L");
  CHECK(neg.negative);
  REQUIRE(neg.runs.size() == 1);
  CHECK(neg.runs[0].letter == 'L');

  CHECK(parse_word("").runs.empty());
  CHECK(parse_word("L^0 R").str() == "R");
  CHECK(parse_word("L R^0 L^2").str() == "L^3");
  CHECK_THROWS_AS(parse_word("L X"), DomainError);
  CHECK_THROWS_AS(parse_word("L^"), DomainError);
  CHECK_THROWS_AS(parse_word("L^x"), DomainError);
}

TEST_CASE("letter actions: pinned values") {
  TraceTriple id = TraceTriple::identity();

  TraceTriple l = apply_word(parse_word("L"), id);
  CHECK(l.p1 == x(2));
  CHECK(l.p2 == x(1));
  CHECK(l.p3 == x(1) * x(2) - x(0));

  TraceTriple r = apply_word(parse_word("R"), id);
  CHECK(r.p1 == x(0));
  CHECK(r.p2 == x(2));
  CHECK(r.p3 == x(0) * x(2) - x(1));

  CHECK(apply_word(parse_word("R^-1 R"), id) == id);
  CHECK(apply_word(parse_word("L^-1 L"), id) == id);
  CHECK(apply_word(parse_word("R R^-1"), id) == id);
  CHECK(apply_word(parse_word("L L^-1"), id) == id);

  // two-step hand application of L then R^-1
  TraceTriple lr = apply_word(parse_word("L R^-1"), id);
  CHECK(lr.p1 == x(2));
  CHECK(lr.p2 == x(0));
  CHECK(lr.p3 == x(1));

  // sign flag acts trivially on coordinates
  CHECK(apply_word(parse_word("-L"), id) == l);
}

TEST_CASE("closed form of L R^k: pinned values") {
  TraceTriple k0 = closed_form_LR(0);
  CHECK(k0.p1 == x(2));
  CHECK(k0.p2 == x(1));
  CHECK(k0.p3 == x(1) * x(2) - x(0));

  TraceTriple km6 = closed_form_LR(-6);
  CHECK(km6.p2 == -(x(1) * f_at_x3(5)) + x(0) * f_at_x3(6));
  CHECK(km6.p3 == -(x(1) * f_at_x3(4)) + x(0) * f_at_x3(5));

  TraceTriple k1 = closed_form_LR(1);
  CHECK(k1.p1 == x(2));
  CHECK(k1.p2 == x(1) * x(2) - x(0));
  CHECK(k1.p3 == x(1) * (x(2) * x(2) - TriPoly::constant(Rat(1))) - x(0) * x(2));
}

TEST_CASE("closed form equals the iterated action for k in [-10, 10]") {
  for (long k = -10; k <= 10; ++k) {
    std::string word = "L R^" + std::to_string(k);
    CHECK(closed_form_LR(k) == apply_word(parse_word(word), TraceTriple::identity()));
  }
}

TEST_CASE("word times inverse is the identity on random words") {
  std::mt19937_64 rng(5150);
  for (int t = 0; t < 30; ++t) {
    MonodromyWord w;
    const int len = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < len; ++i) {
      char letter = (rng() & 1) ? 'L' : 'R';
      long e = static_cast<long>(rng() % 5) - 2;
      w.append(letter, e);
    }
    MonodromyWord ww = w;
    for (const auto& run : w.inverse().runs) ww.append(run.letter, run.exp);
    CHECK(apply_word(ww, TraceTriple::identity()) == TraceTriple::identity());
  }
}

TEST_CASE("torsion polynomial: pinned values") {
  CHECK(torsion_polynomial(MonodromyWord{}).is_zero());
  CHECK(torsion_polynomial(parse_word("L")) == TriPoly::constant(Rat(2)) - x(1));
}

TEST_CASE("torsion polynomial of L R^-(n+2) matches its closed form") {
  for (long n = -8; n <= 8; ++n) {
    MonodromyWord w = parse_word("L R^" + std::to_string(-(n + 2)));
    TriPoly expected = TriPoly::constant(Rat(3)) + f_at_x3(n + 1) + x(1) * df_at_x3(n) -
                       x(0) * df_at_x3(n + 1);
    CHECK(torsion_polynomial(w) == expected);
  }
}

TEST_CASE("word round-trips through str and parse") {
  for (const char* s : {"L R^-6", "-L R^2", "R^5", "L"}) {
    MonodromyWord w = parse_word(s);
    CHECK(parse_word(w.str()).str() == w.str());
  }
}
