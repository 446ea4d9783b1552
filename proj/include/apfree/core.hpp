#pragma once

// Patterns, colorings of Z_m and the brute-force avoidance verifier.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace apfree {

using Color = std::int32_t;
inline constexpr Color kWildcard = -1;

/// Thrown when an enumeration or count would exceed a hard-coded budget.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed coloring / line text. Carries the 1-based line and the token.
class FormatError : public std::runtime_error {
 public:
  FormatError(int line, std::string token, const std::string& what);
  int line() const { return line_; }
  const std::string& token() const { return token_; }

 private:
  int line_;
  std::string token_;
};

/// A sorted offset set starting at 0. The k-AP is {0,1,...,k-1}.
class Pattern {
 public:
  explicit Pattern(std::vector<std::int64_t> offsets);

  static Pattern ap(int k);
  /// Parses "0,2,3,5".
  static Pattern parse(std::string_view text);

  const std::vector<std::int64_t>& offsets() const { return offsets_; }
  std::size_t size() const { return offsets_.size(); }
  std::int64_t span() const { return offsets_.back(); }
  bool is_ap() const { return span() + 1 == static_cast<std::int64_t>(size()); }
  std::string to_string() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::vector<std::int64_t> offsets_;
};

Pattern pattern_from_k(int k);

class ZmColoring {
 public:
  ZmColoring(int color_count, std::vector<Color> cells);

  std::int64_t modulus() const { return static_cast<std::int64_t>(cells_.size()); }
  int color_count() const { return color_count_; }
  const std::vector<Color>& cells() const { return cells_; }
  Color operator[](std::int64_t x) const { return cells_[static_cast<std::size_t>(x)]; }

  bool has_wildcard() const;
  /// True iff cell 0 is the only wildcard.
  bool wildcard_only_at_zero() const;
  /// Sorted distinct non-wildcard colors.
  std::vector<Color> used_colors() const;
  /// Copy with every wildcard replaced by `c`.
  ZmColoring with_wildcards_as(Color c) const;

  friend bool operator==(const ZmColoring&, const ZmColoring&) = default;

 private:
  int color_count_;
  std::vector<Color> cells_;
};

struct Instance {
  std::int64_t a = 0;
  std::int64_t d = 0;
  bool trivial() const { return d == 0; }
  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Verdict {
  bool pass = true;
  std::optional<Instance> witness;
  Color color = kWildcard;  // the offending color; kWildcard if every element was a wildcard

  static Verdict passed() { return {}; }
  static Verdict failed(Instance w, Color c) { return {false, w, c}; }
  std::string to_string() const;
};

std::vector<std::int64_t> instance_elements(const Pattern& p, std::int64_t a, std::int64_t d,
                                            std::int64_t m);

/// If the instance (a, d) can be made monochromatic by some choice of the
/// wildcard cells, returns that color (kWildcard if all elements are wildcards).
std::optional<Color> monochromatic_color(const ZmColoring& c, const Pattern& p, std::int64_t a,
                                         std::int64_t d);

/// Exhaustive check of every instance with d != 0. The reported witness is
/// the first failure in (d, a) order, independent of `jobs`.
Verdict verify_zm(const ZmColoring& c, const Pattern& p, int jobs = 1);

/// result[x] = c[u*x mod m]; requires gcd(u, m) = 1.
ZmColoring dilate(const ZmColoring& c, std::int64_t u);

// Text format:
//   zm <m> <r>
//   cells <t_0> ... <t_{m-1}>      (decimal color or '*')
// '#' lines are comments.
ZmColoring parse_coloring(std::string_view text);
ZmColoring read_coloring_file(const std::string& path);
std::string format_coloring(const ZmColoring& c);
void write_coloring_file(const ZmColoring& c, const std::string& path);

}  // namespace apfree
