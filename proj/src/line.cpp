#include "apfree/line.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace apfree {

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::string decimal_string(std::int64_t num, std::int64_t den, int digits) {
  if (den <= 0) throw std::invalid_argument("denominator must be positive");
  std::string s;
  if (num < 0) {
    s += '-';
    num = -num;
  }
  s += std::to_string(num / den);
  std::int64_t rem = num % den;
  if (digits > 0) s += '.';
  for (int i = 0; i < digits; ++i) {
    const auto wide = static_cast<__int128>(rem) * 10;
    s += static_cast<char>('0' + static_cast<int>(wide / den));
    rem = static_cast<std::int64_t>(wide % den);
  }
  return s;
}

std::int64_t checked_pow(std::int64_t r, std::int64_t e) {
  std::int64_t out = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    if (r != 0 && out > std::numeric_limits<std::int64_t>::max() / r)
      throw LimitError("integer power overflows 64 bits");
    out *= r;
  }
  return out;
}

LineColoring LineColoring::solid(int colors, Color color) {
  if (colors < 1 || color < 0 || color >= colors) throw std::invalid_argument("bad solid color");
  return LineColoring(Solid{colors, color});
}

LineColoring LineColoring::blocks(std::vector<std::int64_t> sizes, std::vector<Color> colors, std::int64_t n) {
  if (sizes.size() != colors.size()) throw std::invalid_argument("block sizes and colors differ in length");
  if (sizes.empty()) throw std::invalid_argument("need at least one block");
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  for (auto s : sizes)
    if (s <= 0) throw std::invalid_argument("block sizes must be positive");
  for (auto c : colors)
    if (c < 0) throw std::invalid_argument("block colors must be non-negative");

  const std::int64_t total = std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0});
  std::vector<std::int64_t> boundaries;
  boundaries.reserve(sizes.size());
  std::int64_t prefix = 0;
  for (auto s : sizes) {
    prefix += s;
    // round(n * prefix / total), half away from zero
    const auto twice = static_cast<__int128>(2) * n * prefix + total;
    boundaries.push_back(static_cast<std::int64_t>(twice / (2 * static_cast<__int128>(total))));
  }
  return LineColoring(Blocks{std::move(sizes), std::move(colors), n, std::move(boundaries)});
}

LineColoring LineColoring::periodic(ZmColoring base) {
  if (base.has_wildcard()) throw std::invalid_argument("periodic base must not contain wildcards");
  return LineColoring(Periodic{std::move(base)});
}

LineColoring LineColoring::unrolled(ZmColoring base) {
  if (base.modulus() < 2) throw std::invalid_argument("unrolled base needs modulus >= 2");
  if (!base.wildcard_only_at_zero())
    throw std::invalid_argument("unrolled base needs a wildcard at cell 0 and nowhere else");
  return LineColoring(Unrolled{std::move(base)});
}

Color color_at_unrolled(const ZmColoring& base, std::int64_t l) {
  if (l < 1) throw std::invalid_argument("unrolled colorings are defined for l >= 1");
  const std::int64_t m = base.modulus();
  while (l % m == 0) l /= m;
  return base[l % m];
}

Color LineColoring::color_at(std::int64_t l) const {
  if (l < 1) throw std::invalid_argument("line colorings are defined for l >= 1");
  return std::visit(
      [l](const auto& rule) -> Color {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, Solid>) {
          return rule.color;
        } else if constexpr (std::is_same_v<T, Blocks>) {
          for (std::size_t j = 0; j < rule.boundaries.size(); ++j)
            if (l <= rule.boundaries[j]) return rule.colors[j];
          return rule.colors.back();  // l > n: extend the last block
        } else if constexpr (std::is_same_v<T, Periodic>) {
          return rule.base[l % rule.base.modulus()];
        } else {
          return color_at_unrolled(rule.base, l);
        }
      },
      rule_);
}

int LineColoring::color_count() const {
  return std::visit(
      [](const auto& rule) -> int {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, Solid>) {
          return rule.colors;
        } else if constexpr (std::is_same_v<T, Blocks>) {
          Color mx = 0;
          for (auto c : rule.colors) mx = std::max(mx, c);
          return mx + 1;
        } else {
          return rule.base.color_count();
        }
      },
      rule_);
}

std::vector<std::uint16_t> LineColoring::materialize(std::int64_t n) const {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  if (color_count() > 65536) throw LimitError("too many colors to materialize");
  std::vector<std::uint16_t> out(static_cast<std::size_t>(n) + 1, 0);
  if (const auto* u = std::get_if<Unrolled>(&rule_)) {
    const std::int64_t m = u->base.modulus();
    for (std::int64_t l = 1; l <= n; ++l) {
      const std::int64_t digit = l % m;
      out[static_cast<std::size_t>(l)] =
          digit ? static_cast<std::uint16_t>(u->base[digit]) : out[static_cast<std::size_t>(l / m)];
    }
    return out;
  }
  for (std::int64_t l = 1; l <= n; ++l) out[static_cast<std::size_t>(l)] = static_cast<std::uint16_t>(color_at(l));
  return out;
}

LineColoring blocks_coloring(std::vector<std::int64_t> sizes, std::vector<Color> colors, std::int64_t n) {
  return LineColoring::blocks(std::move(sizes), std::move(colors), n);
}

std::vector<std::int64_t> twelve_block_sizes() { return {28, 6, 28, 37, 59, 116, 116, 59, 37, 28, 6, 28}; }

Rational periodic_coefficient(const ZmColoring& base, const Pattern& p) {
  if (base.has_wildcard()) throw std::invalid_argument("periodic coefficient needs a coloring without wildcards");
  const std::int64_t m = base.modulus();
  if (m > 10000)
    throw LimitError("periodic coefficient enumerates m^2 classes; m = " + std::to_string(m) + " exceeds 10^4");
  std::int64_t mono = 0;
  for (std::int64_t d = 0; d < m; ++d)
    for (std::int64_t a = 0; a < m; ++a)
      if (monochromatic_color(base, p, a, d)) ++mono;
  return Rational(mono, 2 * p.span() * m * m);
}

NotAvoiding::NotAvoiding(Verdict v)
    : std::runtime_error("base coloring does not avoid the pattern: " + v.to_string()), verdict_(std::move(v)) {}

Rational unrolled_coefficient(const ZmColoring& base, const Pattern& p) {
  if (!base.wildcard_only_at_zero())
    throw std::invalid_argument("unrolled coefficient needs a wildcard at cell 0 and nowhere else");
  Verdict v = verify_zm(base, p);
  if (!v.pass) throw NotAvoiding(std::move(v));
  return Rational(1, 2 * p.span() * (base.modulus() + 1));
}

Rational random_coefficient(int r, const Pattern& p) {
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  return Rational(1, 2 * p.span() * checked_pow(r, static_cast<std::int64_t>(p.size()) - 1));
}

Rational percent_vs_random(std::int64_t m, int r, const Pattern& p) {
  if (m < 1 || r < 1) throw std::invalid_argument("m and r must be positive");
  return Rational(checked_pow(r, static_cast<std::int64_t>(p.size()) - 1), m + 1);
}

std::string percent_string(const Rational& q) {
  const auto num = static_cast<__int128>(q.numerator());
  const auto den = static_cast<__int128>(q.denominator());
  const auto hundredths = static_cast<std::int64_t>((20000 * num + den) / (2 * den));
  std::string frac = std::to_string(hundredths % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return std::to_string(hundredths / 100) + "." + frac;
}

std::string format_line(const LineColoring& c, std::int64_t n) {
  const auto colors = c.materialize(n);
  std::string s = "line " + std::to_string(n) + " " + std::to_string(c.color_count()) + "\n";
  for (std::int64_t l = 1; l <= n; ++l) {
    s += std::to_string(colors[static_cast<std::size_t>(l)]);
    s += (l % 32 == 0 || l == n) ? '\n' : ' ';
  }
  return s;
}

}  // namespace apfree
