#pragma once

// Colorings of [n] = {1..n} and the exact leading coefficients of their
// monochromatic instance counts.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "apfree/core.hpp"

namespace apfree {

using Rational = boost::rational<std::int64_t>;

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& q);
/// Exact decimal expansion of num/den, truncated to `digits` fractional digits.
std::string decimal_string(std::int64_t num, std::int64_t den, int digits);

struct Solid {
  int colors = 1;
  Color color = 0;
};

struct Blocks {
  std::vector<std::int64_t> sizes;
  std::vector<Color> colors;
  std::int64_t n = 0;
  std::vector<std::int64_t> boundaries;  // boundaries[j] = last element of block j
};

struct Periodic {
  ZmColoring base;
};

struct Unrolled {
  ZmColoring base;
};

class LineColoring {
 public:
  static LineColoring solid(int colors = 1, Color color = 0);
  static LineColoring blocks(std::vector<std::int64_t> sizes, std::vector<Color> colors, std::int64_t n);
  static LineColoring periodic(ZmColoring base);
  static LineColoring unrolled(ZmColoring base);

  /// Color of l >= 1. Never a wildcard.
  Color color_at(std::int64_t l) const;
  int color_count() const;

  /// colors[l] for l in [0, n]; index 0 is unused and holds 0.
  std::vector<std::uint16_t> materialize(std::int64_t n) const;

  const auto& rule() const { return rule_; }

 private:
  using Rule = std::variant<Solid, Blocks, Periodic, Unrolled>;
  explicit LineColoring(Rule rule) : rule_(std::move(rule)) {}
  Rule rule_;
};

/// Color of l under the base-m unrolling: the cell of the least significant
/// nonzero base-m digit of l.
Color color_at_unrolled(const ZmColoring& base, std::int64_t l);

LineColoring blocks_coloring(std::vector<std::int64_t> sizes, std::vector<Color> colors, std::int64_t n);

/// Block sizes 28,6,28,37,59,116,116,59,37,28,6,28 with alternating colors.
std::vector<std::int64_t> twelve_block_sizes();

/// M / (2 * span * m^2), where M counts the (a, d) in Z_m x Z_m, d = 0
/// included, whose instance is monochromatic.
Rational periodic_coefficient(const ZmColoring& base, const Pattern& p);

/// Thrown when a coefficient formula's precondition (an avoiding coloring)
/// does not hold. Carries the verifier's witness.
class NotAvoiding : public std::runtime_error {
 public:
  explicit NotAvoiding(Verdict v);
  const Verdict& verdict() const { return verdict_; }

 private:
  Verdict verdict_;
};

/// 1 / (2 * span * (m + 1)). Requires wildcard exactly at 0 and an avoiding base.
Rational unrolled_coefficient(const ZmColoring& base, const Pattern& p);

/// 1 / (2 * span * r^(size-1)).
Rational random_coefficient(int r, const Pattern& p);

/// unrolled / random = r^(size-1) / (m + 1).
Rational percent_vs_random(std::int64_t m, int r, const Pattern& p);

/// r^e as a checked 64-bit integer.
std::int64_t checked_pow(std::int64_t r, std::int64_t e);

/// "66.67" style: 100*q rounded half up to two decimals.
std::string percent_string(const Rational& q);

// Line dump: "line <n> <r>" then n colors for l = 1..n.
std::string format_line(const LineColoring& c, std::int64_t n);

}  // namespace apfree
