#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "ptb/chebyshev.hpp"
#include "ptb/tripoly.hpp"

namespace ptb {

/// A word in the letters L, R and their inverses, stored run-length encoded
/// with nonzero exponents and distinct adjacent letters, plus a global sign
/// flag. The sign is bookkeeping only: trace coordinates do not see the
/// elliptic involution, so apply_word ignores it.
struct MonodromyWord {
  struct Run {
    char letter;  // 'L' or 'R'
    long exp;     // nonzero
  };

  std::vector<Run> runs;
  bool negative = false;

  static MonodromyWord parse(std::string_view text);

  void append(char letter, long exp) {
    if (exp == 0) return;
    if (!runs.empty() && runs.back().letter == letter) {
      runs.back().exp += exp;
      if (runs.back().exp == 0) runs.pop_back();
      return;
    }
    runs.push_back({letter, exp});
  }

  MonodromyWord inverse() const {
    MonodromyWord w;
    w.negative = negative;
    for (size_t i = runs.size(); i-- > 0;) w.append(runs[i].letter, -runs[i].exp);
    return w;
  }

  std::string str() const {
    std::string s = negative ? "-" : "";
    for (size_t i = 0; i < runs.size(); ++i) {
      if (i > 0 || negative) s += " ";
      s += runs[i].letter;
      if (runs[i].exp != 1) s += "^" + std::to_string(runs[i].exp);
    }
    if (runs.empty() && !negative) s = "";
    return s;
  }
};

inline MonodromyWord MonodromyWord::parse(std::string_view text) {
  MonodromyWord w;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i < text.size() && text[i] == '-') {
    w.negative = true;
    ++i;
    skip_ws();
  }
  while (i < text.size()) {
    const char c = text[i];
    if (c != 'L' && c != 'R')
      throw DomainError("parse_word: syntax error at position " + std::to_string(i) +
                        ": expected 'L' or 'R', got '" + std::string(1, c) + "'");
    ++i;
    long exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      const size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
        throw DomainError("parse_word: syntax error at position " + std::to_string(start) +
                          ": expected integer exponent");
      exp = std::stol(std::string(text.substr(start, i - start)));
    }
    w.append(c, exp);
    skip_ws();
  }
  return w;
}

inline MonodromyWord parse_word(std::string_view text) { return MonodromyWord::parse(text); }

/// A triple of trace-coordinate polynomials carried along a monodromy word.
struct TraceTriple {
  TriPoly p1, p2, p3;

  static TraceTriple identity() {
    return {TriPoly::variable(0), TriPoly::variable(1), TriPoly::variable(2)};
  }

  friend bool operator==(const TraceTriple& a, const TraceTriple& b) {
    return a.p1 == b.p1 && a.p2 == b.p2 && a.p3 == b.p3;
  }
};

namespace detail {

inline TraceTriple apply_letter(const TraceTriple& t, char letter, bool inverse) {
  if (letter == 'L') {
    if (!inverse) return {t.p3, t.p2, t.p2 * t.p3 - t.p1};
    return {t.p1 * t.p2 - t.p3, t.p2, t.p1};
  }
  if (!inverse) return {t.p1, t.p3, t.p1 * t.p3 - t.p2};
  return {t.p1, t.p1 * t.p2 - t.p3, t.p2};
}

}  // namespace detail

/// Letters act left to right in the written order; inverse letters act by the
/// algebraically forced inverse substitutions.
inline TraceTriple apply_word(const MonodromyWord& w, const TraceTriple& t) {
  TraceTriple cur = t;
  for (const auto& run : w.runs) {
    const bool inv = run.exp < 0;
    const long count = inv ? -run.exp : run.exp;
    for (long i = 0; i < count; ++i) cur = detail::apply_letter(cur, run.letter, inv);
  }
  return cur;
}

/// Closed form of the L R^k action on the identity triple:
/// (x3, x2 f_{k+1}(x3) - x1 f_k(x3), x2 f_{k+2}(x3) - x1 f_{k+1}(x3)).
inline TraceTriple closed_form_LR(long k) {
  const TriPoly x1 = TriPoly::variable(0);
  const TriPoly x2 = TriPoly::variable(1);
  auto f_at_x3 = [](long j) { return TriPoly::from_unipoly(cheb(j), 2); };
  return {TriPoly::variable(2),
          x2 * f_at_x3(k + 1) - x1 * f_at_x3(k),
          x2 * f_at_x3(k + 2) - x1 * f_at_x3(k + 1)};
}

/// 3 - trace of the Jacobian of the word action, as an exact polynomial in
/// (x1, x2, x3).
inline TriPoly torsion_polynomial(const MonodromyWord& w) {
  TraceTriple t = apply_word(w, TraceTriple::identity());
  return TriPoly::constant(Rat(3)) - t.p1.derivative(0) - t.p2.derivative(1) -
         t.p3.derivative(2);
}

}  // namespace ptb
