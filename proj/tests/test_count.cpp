#include <doctest.h>

#include <cmath>

#include "apfree/count.hpp"
#include "apfree/residue.hpp"
#include "oracles.hpp"

using namespace apfree;

namespace {

const Pattern kPunched = Pattern::parse("0,2,3,5");

std::uint64_t brute_total(std::int64_t n, const Pattern& p) {
  std::uint64_t t = 0;
  for (std::int64_t d = 1; d <= n; ++d)
    for (std::int64_t a = 1; a <= n; ++a)
      if (a + p.span() * d <= n) ++t;
  return t;
}

std::vector<int> as_ints(const std::vector<std::uint16_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("total instances") {
  CHECK(total_instances(10, Pattern::ap(3)) == 20);
  CHECK(total_instances(2, Pattern::ap(3)) == 0);
  CHECK(total_instances(0, Pattern::ap(3)) == 0);
  CHECK(total_instances(13, kPunched) == 11);
  for (std::int64_t n = 0; n <= 80; ++n)
    for (const Pattern& p : {Pattern::ap(3), Pattern::ap(5), kPunched}) CHECK(total_instances(n, p) == brute_total(n, p));
}

TEST_CASE("total instances stay within n of n^2 / (2 span)") {
  for (const Pattern& p : {Pattern::ap(3), Pattern::ap(4), Pattern::ap(7), kPunched}) {
    for (std::int64_t n = 0; n <= 100000; ++n) {
      const double leading = static_cast<double>(n) * static_cast<double>(n) / (2.0 * static_cast<double>(p.span()));
      const double diff = std::abs(static_cast<double>(total_instances(n, p)) - leading);
      if (diff > static_cast<double>(n)) {
        FAIL("n=" << n << " pattern " << p.to_string());
      }
    }
  }
}

TEST_CASE("count_line examples") {
  CHECK(count_line(LineColoring::solid(), 10, Pattern::ap(3)).count == 20);
  CHECK(count_line(LineColoring::periodic(ZmColoring(2, {0, 0, 1, 1})), 12, Pattern::ap(3)).count == 4);
  CHECK(count_line(LineColoring::unrolled(residue_coloring(11, 2)), 11, Pattern::ap(4)).count == 0);
  CHECK_THROWS_AS(count_line(LineColoring::solid(), 0, Pattern::ap(3)), std::invalid_argument);
  CHECK_THROWS_AS(count_line(LineColoring::solid(), kMaxCountN + 1, Pattern::ap(3)), LimitError);
}

TEST_CASE("the four monochromatic 3-APs of the periodic (0,0,1,1) coloring up to 12") {
  const auto line = LineColoring::periodic(ZmColoring(2, {0, 0, 1, 1}));
  std::vector<std::pair<std::int64_t, std::int64_t>> mono;
  for (std::int64_t d = 1; d <= 5; ++d)
    for (std::int64_t a = 1; a + 2 * d <= 12; ++a)
      if (line.color_at(a) == line.color_at(a + d) && line.color_at(a) == line.color_at(a + 2 * d))
        mono.emplace_back(a, d);
  CHECK(mono == std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 4}, {2, 4}, {3, 4}, {4, 4}});
}

TEST_CASE("count_line agrees with a naive recount on random colorings") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 500);
    const int r = 2 + static_cast<int>(rng() % 2);
    const std::int64_t m = 2 + static_cast<std::int64_t>(rng() % 40);
    const auto line = LineColoring::periodic(ZmColoring(r, oracle::random_cells(rng, m, r)));
    const Pattern p = trial % 3 == 0 ? kPunched : Pattern::ap(3 + trial % 3);
    const auto colors = line.materialize(n);
    CHECK(count_line(line, n, p).count == oracle::naive_line_count(as_ints(colors), n, p.offsets()));

    // Arbitrary (non-periodic) colorings through the materialized entry point.
    std::vector<std::uint16_t> arbitrary(static_cast<std::size_t>(n) + 1, 0);
    for (std::int64_t l = 1; l <= n; ++l) arbitrary[static_cast<std::size_t>(l)] = static_cast<std::uint16_t>(rng() % r);
    CHECK(count_materialized(arbitrary, p) == oracle::naive_line_count(as_ints(arbitrary), n, p.offsets()));
  }
}

TEST_CASE("counts are bounded by the total, with equality only for one color") {
  std::mt19937_64 rng(17);
  for (std::int64_t n = 1; n <= 200; ++n) {
    const auto solid = count_line(LineColoring::solid(2, 1), n, Pattern::ap(3)).count;
    CHECK(solid == total_instances(n, Pattern::ap(3)));

    std::vector<std::uint16_t> colors(static_cast<std::size_t>(n) + 1, 0);
    for (std::int64_t l = 1; l <= n; ++l) colors[static_cast<std::size_t>(l)] = static_cast<std::uint16_t>(rng() % 2);
    const bool single = std::all_of(colors.begin() + 1, colors.end(), [&](auto c) { return c == colors[1]; });
    const auto count = count_materialized(colors, Pattern::ap(3));
    CHECK(count <= total_instances(n, Pattern::ap(3)));
    if (total_instances(n, Pattern::ap(3)) > 0) CHECK((count == total_instances(n, Pattern::ap(3))) == single);
  }
}

TEST_CASE("counts are invariant under relabeling and monotone in n") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t n = 50 + static_cast<std::int64_t>(rng() % 300);
    std::vector<std::uint16_t> colors(static_cast<std::size_t>(n) + 1, 0);
    for (std::int64_t l = 1; l <= n; ++l) colors[static_cast<std::size_t>(l)] = static_cast<std::uint16_t>(rng() % 3);
    auto swapped = colors;
    for (std::size_t l = 1; l < swapped.size(); ++l) swapped[l] = static_cast<std::uint16_t>((swapped[l] + 1) % 3);
    const Pattern p = Pattern::ap(3);
    CHECK(count_materialized(colors, p) == count_materialized(swapped, p));

    std::uint64_t prev = 0;
    for (std::int64_t k = 1; k <= n; ++k) {
      const auto c = count_materialized(std::span(colors).first(static_cast<std::size_t>(k) + 1), p);
      CHECK(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("parallel counts are bit-identical") {
  const auto line = LineColoring::unrolled(residue_coloring(11, 2));
  const auto one = count_line(line, 20000, Pattern::ap(4), 1).count;
  for (int jobs : {2, 3, 8}) CHECK(count_line(line, 20000, Pattern::ap(4), jobs).count == one);
}

TEST_CASE("unrolled counts satisfy the residue-class recursion") {
  const auto line = LineColoring::unrolled(residue_coloring(11, 2));
  const Pattern p = Pattern::ap(4);
  std::int64_t n = 11;
  for (int j = 1; j <= 4; ++j, n *= 11) {
    const auto f = static_cast<std::int64_t>(count_line(line, n, p).count);
    const auto f_small = static_cast<std::int64_t>(count_line(line, n / 11, p).count);
    const auto rest = 10 * static_cast<std::int64_t>(total_instances(n / 11, p));
    CHECK(std::abs(f - f_small - rest) <= 4 * n);
  }
}

TEST_CASE("count_cyclic") {
  CHECK(count_cyclic(ZmColoring(1, {0, 0, 0, 0, 0}), Pattern::ap(3)) == 20);
  CHECK(count_cyclic(ZmColoring(2, {0, 0, 1, 1}), Pattern::ap(3)) == 0);
  CHECK(count_cyclic(residue_coloring(5, 2).with_wildcards_as(0), Pattern::ap(3)) == 2);
  CHECK_THROWS_AS(count_cyclic(residue_coloring(5, 2), Pattern::ap(3)), std::invalid_argument);
}

TEST_CASE("average over colorings") {
  CHECK(average_over_colorings(8, 2, Pattern::ap(3)) == Rational(3));
  CHECK(average_over_colorings(4, 2, Pattern::ap(3)) == Rational(1, 2));
  for (std::int64_t n = 0; n < 30; ++n)
    CHECK(average_over_colorings(n, 1, kPunched) == Rational(static_cast<std::int64_t>(total_instances(n, kPunched))));
}

TEST_CASE("average equals the exhaustive mean, n <= 12, r in {2,3}") {
  for (int r : {2, 3}) {
    for (std::int64_t n = 1; n <= 12; ++n) {
      const std::int64_t colorings = checked_pow(r, n);
      std::vector<std::uint16_t> colors(static_cast<std::size_t>(n) + 1, 0);
      std::uint64_t sum = 0;
      for (std::int64_t code = 0; code < colorings; ++code) {
        std::int64_t x = code;
        for (std::int64_t l = 1; l <= n; ++l, x /= r) colors[static_cast<std::size_t>(l)] = static_cast<std::uint16_t>(x % r);
        sum += oracle::naive_line_count(as_ints(colors), n, Pattern::ap(3).offsets());
      }
      CHECK(Rational(static_cast<std::int64_t>(sum), colorings) == average_over_colorings(n, r, Pattern::ap(3)));
    }
  }
}

TEST_CASE("empirical coefficient") {
  const auto solid = empirical_coefficient(LineColoring::solid(), Pattern::ap(3), {100});
  REQUIRE(solid.size() == 1);
  CHECK(solid[0].count == 2450);
  CHECK(solid[0].ratio == "0.245000000000");

  const auto pts = empirical_coefficient(LineColoring::unrolled(residue_coloring(11, 2)), Pattern::ap(4), {100, 1000, 10000});
  REQUIRE(pts.size() == 3);
  const double last = std::stod(pts.back().ratio);
  CHECK(std::abs(last - 1.0 / 72) <= 0.02 / 72);
  CHECK_THROWS_AS(empirical_coefficient(LineColoring::solid(), Pattern::ap(3), {10, 5}), std::invalid_argument);
}
