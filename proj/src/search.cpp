#include "apfree/search.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "apfree/residue.hpp"
#include "parallel.hpp"

namespace apfree {

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

SearchReport search_primes(int r, const Pattern& p, std::int64_t bound, int jobs) {
  if (r < 2) throw std::invalid_argument("search needs r >= 2");
  if (bound < 3) throw std::invalid_argument("search bound must be >= 3");
  if (bound >= (std::int64_t{1} << 32)) throw LimitError("search bound must be below 2^32");

  std::vector<std::int64_t> candidates;
  for (auto q : primes_up_to(bound))
    if (q > 2 && (q - 1) % r == 0) candidates.push_back(q);

  std::vector<ModulusDiagnostic> diags(candidates.size());
  std::atomic<std::size_t> next{0};
  detail::run_workers(std::max(1, jobs), [&](int) {
    std::vector<Color> scratch;
    for (std::size_t i = next++; i < candidates.size(); i = next++) {
      const std::int64_t q = candidates[i];
      coset_labels_into(q, r, scratch);
      diags[i] = {q, longest_wild_run(scratch), fast_verdict(scratch, p)};
    }
  });

  SearchReport report{r, p, bound, {}, std::nullopt, std::move(diags)};
  for (const auto& d : report.diagnostics)
    if (d.verdict.pass) report.passing.push_back(d.modulus);
  if (!report.passing.empty()) report.best = report.passing.back();
  return report;
}

namespace {

// Saturating r^e.
std::uint64_t saturating_pow(std::uint64_t r, std::int64_t e) {
  std::uint64_t out = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / r) return std::numeric_limits<std::uint64_t>::max();
    out *= r;
  }
  return out;
}

class Enumerator {
 public:
  Enumerator(std::int64_t m, int r, const Pattern& p, bool wildcard_zero)
      : m_(m), r_(r), wildcard_zero_(wildcard_zero), cells_(static_cast<std::size_t>(m), 0),
        closing_(static_cast<std::size_t>(m)) {
    // Index every distinct element set by its largest cell, so it is checked
    // exactly once, when that cell is assigned.
    std::set<std::vector<std::int64_t>> seen;
    for (std::int64_t d = 1; d < m; ++d) {
      for (std::int64_t a = 0; a < m; ++a) {
        auto elems = instance_elements(p, a, d, m);
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        if (!seen.insert(elems).second) continue;
        closing_[static_cast<std::size_t>(elems.back())].push_back(std::move(elems));
      }
    }
    if (wildcard_zero_) cells_[0] = kWildcard;
  }

  std::vector<ZmColoring> run() {
    if (wildcard_zero_) {
      if (!consistent(0)) return {};
      dfs(1, -1);
    } else {
      // First-appearance numbering forces cell 0 to color 0.
      cells_[0] = 0;
      if (consistent(0)) dfs(1, 0);
    }
    return std::move(found_);
  }

 private:
  bool consistent(std::int64_t x) const {
    for (const auto& elems : closing_[static_cast<std::size_t>(x)]) {
      Color seen = kWildcard;
      bool mixed = false;
      for (auto e : elems) {
        const Color c = cells_[static_cast<std::size_t>(e)];
        if (c == kWildcard) continue;
        if (seen == kWildcard) {
          seen = c;
        } else if (c != seen) {
          mixed = true;
          break;
        }
      }
      if (!mixed) return false;
    }
    return true;
  }

  void dfs(std::int64_t x, Color max_used) {
    if (x == m_) {
      found_.emplace_back(r_, cells_);
      return;
    }
    const Color limit = std::min<Color>(max_used + 1, r_ - 1);
    for (Color c = 0; c <= limit; ++c) {
      cells_[static_cast<std::size_t>(x)] = c;
      if (consistent(x)) dfs(x + 1, std::max(max_used, c));
    }
  }

  std::int64_t m_;
  int r_;
  bool wildcard_zero_;
  std::vector<Color> cells_;
  std::vector<std::vector<std::vector<std::int64_t>>> closing_;
  std::vector<ZmColoring> found_;
};

}  // namespace

std::vector<ZmColoring> search_zm_exhaustive(std::int64_t m, int r, const Pattern& p, bool wildcard_zero,
                                             std::uint64_t budget) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  const std::uint64_t size = saturating_pow(static_cast<std::uint64_t>(r), m - 1);
  if (size > budget)
    throw LimitError("enumeration size r^(m-1) = " +
                     (size == std::numeric_limits<std::uint64_t>::max() ? std::string("overflow")
                                                                         : std::to_string(size)) +
                     " exceeds budget " + std::to_string(budget));
  return Enumerator(m, r, p, wildcard_zero).run();
}

ZmColoring tensor(const ZmColoring& c1, const ZmColoring& c2, const Pattern& p) {
  for (const ZmColoring* c : {&c1, &c2}) {
    if (!c->wildcard_only_at_zero())
      throw std::invalid_argument("product inputs need a wildcard at cell 0 and nowhere else");
    Verdict v = verify_zm(*c, p);
    if (!v.pass) throw NotAvoiding(std::move(v));
  }
  const std::int64_t m1 = c1.modulus();
  const std::int64_t m2 = c2.modulus();
  const int r2 = c2.color_count();
  const auto r = static_cast<std::int64_t>(c1.color_count()) * r2;
  if (r > std::numeric_limits<Color>::max()) throw LimitError("product color count overflows");
  const auto fixed = [](Color c) { return c == kWildcard ? 0 : c; };

  std::vector<Color> cells(static_cast<std::size_t>(m1 * m2));
  for (std::int64_t z = 1; z < m1 * m2; ++z)
    cells[static_cast<std::size_t>(z)] = fixed(c1[z / m2]) * r2 + fixed(c2[z % m2]);
  cells[0] = kWildcard;
  return ZmColoring(static_cast<int>(r), std::move(cells));
}

const std::vector<TableEntry>& table_entries() {
  using F = std::pair<std::pair<std::int64_t, int>, std::pair<std::int64_t, int>>;
  static const std::vector<TableEntry> entries = {
      {3, 4, 37, 4211, {}},
      {3, 6, 103, 3495, {}},
      {4, 2, 11, 6667, {}},
      {4, 3, 97, 2755, {}},
      {4, 4, 349, 1829, {}},
      {4, 5, 751, 1662, {}},
      {4, 6, 3259, 663, {}},
      {4, 7, 1933, 1774, {}},
      {5, 2, 37, 4211, {}},
      {5, 3, 241, 3347, {}},
      {5, 4, 2609, 981, {}},
      {5, 5, 6011, 1040, {}},
      {5, 6, 14173, 914, {}},
      {5, 7, 30493, 787, {}},
      {6, 2, 139, 2285, {}},
      {6, 3, 1777, 1367, {}},
      {6, 4, 139 * 139, 530, F{{139, 2}, {139, 2}}},
      {6, 5, 49391, 632, {}},
      {6, 6, 139 * 1777, 315, F{{139, 2}, {1777, 3}}},
      {6, 7, 317969, 529, {}},
      {7, 2, 617, 1036, {}},
      {7, 3, 7309, 987, {}},
      {7, 4, 617 * 617, 108, F{{617, 2}, {617, 2}}},
      {7, 5, 230281, 678, {}},
      {7, 6, 617 * 7309, 103, F{{617, 2}, {7309, 3}}},
      {8, 2, 1069, 1196, {}},
      {8, 3, 34057, 642, {}},
      {8, 4, 1069 * 1069, 143, F{{1069, 2}, {1069, 2}}},
      {9, 2, 3389, 755, {}},
      {9, 3, 116593, 563, {}},
      {10, 2, 11497, 445, {}},
      {10, 3, 463747, 424, {}},
      {11, 2, 17863, 573, {}},
      {12, 2, 58013, 353, {}},
      {13, 2, 136859, 299, {}},
      {14, 2, 239873, 341, {}},
      {15, 2, 608789, 269, {}},
      {16, 2, 1091339, 300, {}},
  };
  return entries;
}

bool percent_matches(const Rational& q, int printed_hundredths) {
  const auto num = static_cast<__int128>(q.numerator());
  const auto den = static_cast<__int128>(q.denominator());
  const auto rounded = (20000 * num + den) / (2 * den);
  const auto truncated = (10000 * num) / den;
  return rounded == printed_hundredths || truncated == printed_hundredths;
}

std::vector<TableRow> table_check(std::int64_t limit, bool brute, int jobs) {
  std::vector<TableRow> rows;
  std::vector<Color> scratch;
  for (const auto& e : table_entries()) {
    TableRow row;
    row.entry = e;
    row.percent = percent_vs_random(e.m, e.r, Pattern::ap(e.k));
    row.computed = percent_string(row.percent);
    row.percent_match = percent_matches(row.percent, e.printed_hundredths);
    const Pattern p = Pattern::ap(e.k);

    if (!e.factors) {
      if (e.m <= limit) {
        coset_labels_into(e.m, e.r, scratch);
        row.longest_run = longest_wild_run(scratch);
        row.status = fast_verdict(scratch, p).pass ? EntryStatus::Pass : EntryStatus::Fail;
      }
    } else {
      const auto [f1, f2] = *e.factors;
      if (f1.first <= limit && f2.first <= limit) {
        const bool ok1 = fast_verdict(residue_coloring(f1.first, f1.second), p).pass;
        const bool ok2 = fast_verdict(residue_coloring(f2.first, f2.second), p).pass;
        row.status = ok1 && ok2 ? EntryStatus::PassByProduct : EntryStatus::Fail;
        if (row.status == EntryStatus::PassByProduct && brute && e.m <= 25000) {
          const auto product =
              tensor(residue_coloring(f1.first, f1.second), residue_coloring(f2.first, f2.second), p);
          row.brute_confirmed = verify_zm(product, p, jobs).pass;
          if (!row.brute_confirmed) row.status = EntryStatus::Fail;
        }
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

const char* status_name(EntryStatus s) {
  switch (s) {
    case EntryStatus::Pass: return "pass";
    case EntryStatus::PassByProduct: return "pass-by-product";
    case EntryStatus::Fail: return "FAIL";
    case EntryStatus::Skipped: return "skipped";
  }
  return "?";
}

std::string hundredths_string(int h) {
  std::ostringstream os;
  os << h / 100 << '.' << std::setw(2) << std::setfill('0') << h % 100;
  return os.str();
}

}  // namespace

std::string format_table(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(4) << "k" << std::setw(4) << "r" << std::setw(12) << "m" << std::setw(17) << "status"
     << std::setw(5) << "run" << std::setw(10) << "percent" << std::setw(9) << "printed" << "match\n";
  for (const auto& row : rows) {
    const auto& e = row.entry;
    std::string m = std::to_string(e.m);
    if (e.factors) m = std::to_string(e.factors->first.first) + "*" + std::to_string(e.factors->second.first);
    std::string status = status_name(row.status);
    if (row.brute_confirmed) status += "+bf";
    os << std::setw(4) << e.k << std::setw(4) << e.r << std::setw(12) << m << std::setw(17) << status << std::setw(5)
       << (e.factors || row.status == EntryStatus::Skipped ? std::string("-") : std::to_string(row.longest_run))
       << std::setw(10) << row.computed << std::setw(9) << hundredths_string(e.printed_hundredths)
       << (row.percent_match ? "yes" : "NO") << '\n';
  }
  return os.str();
}

std::string format_report(const SearchReport& report) {
  std::ostringstream os;
  os << "search r=" << report.r << " pattern=" << report.pattern.to_string() << " bound=" << report.bound << '\n';
  os << "checked " << report.diagnostics.size() << " primes, " << report.passing.size() << " pass\n";
  // m above its percentage versus random, eight columns per band.
  constexpr std::size_t kColumns = 8;
  for (std::size_t i = 0; i < report.passing.size(); i += kColumns) {
    const std::size_t end = std::min(report.passing.size(), i + kColumns);
    os << "m ";
    for (std::size_t j = i; j < end; ++j) os << std::setw(9) << report.passing[j];
    os << "\n% ";
    for (std::size_t j = i; j < end; ++j)
      os << std::setw(9) << percent_string(percent_vs_random(report.passing[j], report.r, report.pattern));
    os << '\n';
  }
  if (report.best) {
    os << "best " << *report.best << " ("
       << percent_string(percent_vs_random(*report.best, report.r, report.pattern)) << "%)\n";
  } else {
    os << "best none\n";
  }
  return os.str();
}

}  // namespace apfree
