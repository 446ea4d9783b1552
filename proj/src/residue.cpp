#include "apfree/residue.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace apfree {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These 12 bases are sufficient below 3.3e24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t primitive_root(std::uint64_t p) {
  if (p < 3 || !is_prime(p))
    throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
  const auto factors = prime_factors(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    const bool generator = std::all_of(factors.begin(), factors.end(),
                                       [&](std::uint64_t q) { return pow_mod(g, (p - 1) / q, p) != 1; });
    if (generator) return g;
  }
  throw std::logic_error("no primitive root found");  // unreachable for primes
}

void coset_labels_into(std::int64_t p, int r, std::vector<Color>& labels) {
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p)))
    throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
  if (p >= (std::int64_t{1} << 32)) throw std::invalid_argument("modulus too large for a label table");
  if (r < 1 || (p - 1) % r != 0)
    throw std::invalid_argument("r = " + std::to_string(r) + " does not divide p - 1 = " +
                                std::to_string(p - 1));
  const auto g = static_cast<std::uint64_t>(primitive_root(static_cast<std::uint64_t>(p)));
  labels.assign(static_cast<std::size_t>(p), kWildcard);
  std::uint64_t x = 1;
  Color label = 0;
  for (std::int64_t i = 0; i < p - 1; ++i) {
    labels[x] = label;
    if (++label == r) label = 0;
    x = x * g % static_cast<std::uint64_t>(p);  // p < 2^32, no overflow
  }
}

CosetLabels coset_labels(std::int64_t p, int r) {
  CosetLabels out{p, r, {}};
  coset_labels_into(p, r, out.labels);
  return out;
}

ZmColoring residue_coloring(std::int64_t p, int r) {
  auto labels = coset_labels(p, r);
  return ZmColoring(r, std::move(labels.labels));
}

std::int64_t longest_wild_run(const std::vector<Color>& cells) {
  const auto m = static_cast<std::int64_t>(cells.size());
  std::vector<Color> colors = cells;
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
  std::erase(colors, kWildcard);
  if (colors.empty()) return m;

  std::int64_t best = 0;
  for (Color t : colors) {
    std::int64_t cur = 0;
    // Two laps cover every circular run; the cap handles the all-compatible case.
    for (std::int64_t i = 0; i < 2 * m && best < m; ++i) {
      const Color c = cells[static_cast<std::size_t>(i % m)];
      cur = (c == t || c == kWildcard) ? cur + 1 : 0;
      best = std::max(best, std::min(cur, m));
    }
  }
  return best;
}

std::int64_t longest_wild_run(const ZmColoring& c) { return longest_wild_run(c.cells()); }

Verdict fast_verdict(const std::vector<Color>& cells, const Pattern& p) {
  const auto m = static_cast<std::int64_t>(cells.size());
  if (!is_prime(static_cast<std::uint64_t>(m)))
    throw std::invalid_argument("fast verdict needs a prime modulus, got " + std::to_string(m));

  if (p.is_ap() && longest_wild_run(cells) < static_cast<std::int64_t>(p.size())) return Verdict::passed();

  for (std::int64_t b = 0; b < m; ++b) {
    Color seen = kWildcard;
    bool mixed = false;
    for (std::int64_t o : p.offsets()) {
      const Color col = cells[static_cast<std::size_t>((b + o) % m)];
      if (col == kWildcard) continue;
      if (seen == kWildcard) {
        seen = col;
      } else if (col != seen) {
        mixed = true;
        break;
      }
    }
    if (!mixed) return Verdict::failed({b, 1}, seen);
  }
  return Verdict::passed();
}

Verdict fast_verdict(const ZmColoring& c, const Pattern& p) { return fast_verdict(c.cells(), p); }

}  // namespace apfree
