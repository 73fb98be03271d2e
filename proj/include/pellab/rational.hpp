#pragma once

// Exact rational scalars backed by GMP.

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "pellab/error.hpp"

namespace pellab {

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline int sign(const Rat& r) { return sgn(r); }

inline Rat abs_rat(const Rat& r) { return Rat(abs(r)); }

/// Rational in the canonical text form "[-]n[/d]".
inline std::string to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Parses "[-]n[/d]" with d > 0. Non-reduced input is accepted and reduced.
inline Rat parse_rat(std::string_view text) {
  auto bad = [&](const char* why) -> Rat {
    fail(ErrorKind::InvalidInput,
         "malformed rational '" + std::string(text) + "': " + why);
  };
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && text[i] == '-') {
    negative = true;
    ++i;
  }
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    return j;
  };
  std::size_t end_num = digits(i);
  if (end_num == i) return bad("expected digits");
  Int num(std::string(text.substr(i, end_num - i)));
  Int den(1);
  if (end_num < text.size()) {
    if (text[end_num] != '/') return bad("unexpected character");
    std::size_t end_den = digits(end_num + 1);
    if (end_den == end_num + 1 || end_den != text.size()) return bad("bad denominator");
    den = Int(std::string(text.substr(end_num + 1, end_den - end_num - 1)));
    if (den == 0) return bad("zero denominator");
  }
  if (negative) num = -num;
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Exact square root of a non-negative rational, if it is a perfect square.
inline std::optional<Rat> rational_sqrt(const Rat& r) {
  if (sgn(r) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(r.get_num().get_mpz_t()) ||
      !mpz_perfect_square_p(r.get_den().get_mpz_t()))
    return std::nullopt;
  Int n = sqrt(r.get_num());
  Int d = sqrt(r.get_den());
  Rat out(n, d);
  out.canonicalize();
  return out;
}

inline bool is_rational_square(const Rat& r) { return rational_sqrt(r).has_value(); }

/// Splits a positive rational as r = factor^2 * core with core a squarefree
/// positive integer. Trial division is used; cofactors beyond the search
/// bound are kept in the core unless they are perfect squares.
struct SquareSplit {
  Rat factor;
  Int core;
};

inline SquareSplit square_split(const Rat& r) {
  if (sgn(r) <= 0) fail(ErrorKind::InvalidInput, "square_split needs a positive rational");
  // r = n/d = n*d / d^2
  Int m = r.get_num() * r.get_den();
  Int square_root(1);
  Int core(1);
  constexpr unsigned long kTrialBound = 1000000;
  for (unsigned long p = 2; p <= kTrialBound; p += (p == 2 ? 1 : 2)) {
    Int pp(p);
    if (pp * pp > m) break;
    unsigned count = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= pp;
      ++count;
    }
    for (unsigned c = 0; c + 1 < count; c += 2) square_root *= pp;
    if (count % 2 == 1) core *= pp;
  }
  if (m > 1) {
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      square_root *= Int(sqrt(m));
    } else {
      core *= m;
    }
  }
  Rat factor(square_root, r.get_den());
  factor.canonicalize();
  return {factor, core};
}

inline double to_double(const Rat& r) { return r.get_d(); }

}  // namespace pellab
