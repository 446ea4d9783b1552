#pragma once

// Exact counting of monochromatic pattern instances in [n] and Z_m.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "apfree/line.hpp"

namespace apfree {

/// Largest n accepted by count_line.
inline constexpr std::int64_t kMaxCountN = 2'000'000'000;

struct CountResult {
  std::int64_t n = 0;
  Pattern pattern = Pattern::ap(3);
  std::uint64_t count = 0;
  double elapsed_ms = 0.0;

  /// count / n^2 as an exact truncated decimal.
  std::string ratio_string(int digits = 12) const;
};

/// Number of (a, d) with a >= 1, d >= 1, a + span*d <= n.
std::uint64_t total_instances(std::int64_t n, const Pattern& p);

/// Monochromatic instances of `p` in colors[1..n] (colors[0] ignored).
std::uint64_t count_materialized(std::span<const std::uint16_t> colors, const Pattern& p, int jobs = 1);

CountResult count_line(const LineColoring& c, std::int64_t n, const Pattern& p, int jobs = 1);

/// Ordered pairs (a, d), d != 0, monochromatic in Z_m.
std::uint64_t count_cyclic(const ZmColoring& c, const Pattern& p);

/// total_instances(n, p) * r^(1 - size): the mean count over all r^n colorings.
Rational average_over_colorings(std::int64_t n, int r, const Pattern& p);

struct EmpiricalPoint {
  std::int64_t n = 0;
  std::uint64_t count = 0;
  std::string ratio;  // count / n^2
};

std::vector<EmpiricalPoint> empirical_coefficient(const LineColoring& c, const Pattern& p,
                                                  const std::vector<std::int64_t>& ns, int jobs = 1);

}  // namespace apfree
