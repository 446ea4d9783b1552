#include "apfree/count.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"

namespace apfree {

std::string CountResult::ratio_string(int digits) const {
  const auto n2 = static_cast<__int128>(n) * n;
  if (n2 == 0) return "0";
  if (n2 > std::numeric_limits<std::int64_t>::max()) throw LimitError("n too large for an exact ratio");
  return decimal_string(static_cast<std::int64_t>(count), static_cast<std::int64_t>(n2), digits);
}

std::uint64_t total_instances(std::int64_t n, const Pattern& p) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  const std::int64_t s = p.span();
  // sum_{d=1}^{D} (n - s d), D = floor((n - 1) / s)
  if (n <= s) return 0;
  const auto D = static_cast<unsigned __int128>((n - 1) / s);
  const auto total = D * static_cast<unsigned __int128>(n) - static_cast<unsigned __int128>(s) * D * (D + 1) / 2;
  return static_cast<std::uint64_t>(total);
}

std::uint64_t count_materialized(std::span<const std::uint16_t> colors, const Pattern& p, int jobs) {
  if (colors.empty()) return 0;
  const auto n = static_cast<std::int64_t>(colors.size()) - 1;
  const std::int64_t s = p.span();
  const auto& offs = p.offsets();
  jobs = std::max(1, jobs);

  // Interleaved d-ranges keep the per-worker load balanced; the integer sum
  // is order independent.
  std::vector<std::uint64_t> partial(static_cast<std::size_t>(jobs), 0);
  detail::run_workers(jobs, [&](int w) {
    std::uint64_t local = 0;
    const std::uint16_t* col = colors.data();
    for (std::int64_t d = 1 + w; s * d < n; d += jobs) {
      const std::int64_t last = n - s * d;
      for (std::int64_t a = 1; a <= last; ++a) {
        const std::uint16_t c0 = col[a];
        bool mono = true;
        for (std::size_t j = 1; j < offs.size(); ++j) {
          if (col[a + offs[j] * d] != c0) {
            mono = false;
            break;
          }
        }
        local += mono;
      }
    }
    partial[static_cast<std::size_t>(w)] = local;
  });
  std::uint64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

CountResult count_line(const LineColoring& c, std::int64_t n, const Pattern& p, int jobs) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n > kMaxCountN)
    throw LimitError("n = " + std::to_string(n) + " exceeds the counting limit " + std::to_string(kMaxCountN));
  const auto start = std::chrono::steady_clock::now();
  const auto colors = c.materialize(n);
  CountResult out{n, p, count_materialized(colors, p, jobs), 0.0};
  out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::uint64_t count_cyclic(const ZmColoring& c, const Pattern& p) {
  if (c.has_wildcard()) throw std::invalid_argument("cyclic count needs a coloring without wildcards");
  const std::int64_t m = c.modulus();
  std::uint64_t total = 0;
  for (std::int64_t d = 1; d < m; ++d)
    for (std::int64_t a = 0; a < m; ++a)
      if (monochromatic_color(c, p, a, d)) ++total;
  return total;
}

Rational average_over_colorings(std::int64_t n, int r, const Pattern& p) {
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  const auto total = total_instances(n, p);
  if (total > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
    throw LimitError("instance count overflows");
  return Rational(static_cast<std::int64_t>(total), checked_pow(r, static_cast<std::int64_t>(p.size()) - 1));
}

std::vector<EmpiricalPoint> empirical_coefficient(const LineColoring& c, const Pattern& p,
                                                  const std::vector<std::int64_t>& ns, int jobs) {
  if (!std::is_sorted(ns.begin(), ns.end())) throw std::invalid_argument("n values must be ascending");
  std::vector<EmpiricalPoint> out;
  if (ns.empty()) return out;
  if (ns.back() > kMaxCountN) throw LimitError("n exceeds the counting limit");
  const auto colors = c.materialize(ns.back());
  for (auto n : ns) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    CountResult r{n, p, count_materialized(std::span(colors).first(static_cast<std::size_t>(n) + 1), p, jobs), 0.0};
    out.push_back({n, r.count, r.ratio_string()});
  }
  return out;
}

}  // namespace apfree
