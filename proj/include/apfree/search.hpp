#pragma once

// Prime sweeps over residue colorings, exhaustive small-modulus
// enumeration, the product construction and the best-known-moduli table.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apfree/core.hpp"
#include "apfree/line.hpp"

namespace apfree {

struct ModulusDiagnostic {
  std::int64_t modulus = 0;
  std::int64_t longest_run = 0;
  Verdict verdict;
};

struct SearchReport {
  int r = 0;
  Pattern pattern = Pattern::ap(3);
  std::int64_t bound = 0;
  std::vector<std::int64_t> passing;           // ascending
  std::optional<std::int64_t> best;            // max(passing)
  std::vector<ModulusDiagnostic> diagnostics;  // every prime checked, ascending
};

/// Primes q <= bound with r | q-1 whose r-th power residue coloring avoids
/// `p`. Output is identical for every `jobs`.
SearchReport search_primes(int r, const Pattern& p, std::int64_t bound, int jobs = 1);

/// Primes in [2, bound], ascending.
std::vector<std::int64_t> primes_up_to(std::int64_t bound);

inline constexpr std::uint64_t kEnumerationBudget = 100'000'000;

/// Every avoiding coloring of Z_m with at most r colors, one per
/// color-permutation class (the lexicographically least relabeling, i.e.
/// colors numbered by first appearance). With wildcard_zero, cell 0 is a
/// wildcard and classes are over cells 1..m-1.
std::vector<ZmColoring> search_zm_exhaustive(std::int64_t m, int r, const Pattern& p, bool wildcard_zero,
                                             std::uint64_t budget = kEnumerationBudget);

/// Product coloring of Z_{m1 m2}: z = x*m2 + y gets color c1(x)*r2 + c2(y),
/// with each input's wildcard read as color 0, and cell 0 a wildcard.
/// Both inputs must have their only wildcard at 0 and avoid `p`.
ZmColoring tensor(const ZmColoring& c1, const ZmColoring& c2, const Pattern& p);

/// One cell of the best-known-moduli table.
struct TableEntry {
  int k = 0;
  int r = 0;
  std::int64_t m = 0;
  int printed_hundredths = 0;  // the printed percentage times 100
  /// For product entries: the two factor colorings (modulus, colors).
  std::optional<std::pair<std::pair<std::int64_t, int>, std::pair<std::int64_t, int>>> factors;
};

const std::vector<TableEntry>& table_entries();

enum class EntryStatus { Pass, PassByProduct, Fail, Skipped };

struct TableRow {
  TableEntry entry;
  EntryStatus status = EntryStatus::Skipped;
  std::int64_t longest_run = 0;  // prime entries only
  Rational percent{0};           // r^(k-1) / (m+1)
  std::string computed;          // rounded percentage, "66.67"
  bool percent_match = false;
  bool brute_confirmed = false;
};

/// True iff the printed value equals the exact percentage either rounded
/// half up or truncated at two decimals; the table uses both conventions.
bool percent_matches(const Rational& q, int printed_hundredths);

/// Checks every prime entry with m <= limit and every product entry whose
/// factors are both <= limit. With brute, product entries with m <= 25000
/// are also built and brute-force verified.
std::vector<TableRow> table_check(std::int64_t limit, bool brute = false, int jobs = 1);

std::string format_table(const std::vector<TableRow>& rows);
std::string format_report(const SearchReport& report);

}  // namespace apfree
