#include "apfree/core.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "parallel.hpp"

namespace apfree {

FormatError::FormatError(int line, std::string token, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", token '" + token + "': " + what),
      line_(line),
      token_(std::move(token)) {}

Pattern::Pattern(std::vector<std::int64_t> offsets) : offsets_(std::move(offsets)) {
  if (offsets_.size() < 3) throw std::invalid_argument("pattern needs at least 3 offsets");
  if (offsets_.front() != 0) throw std::invalid_argument("pattern offsets must start at 0");
  for (std::size_t i = 1; i < offsets_.size(); ++i) {
    if (offsets_[i] <= offsets_[i - 1])
      throw std::invalid_argument("pattern offsets must be strictly increasing");
  }
}

Pattern Pattern::ap(int k) {
  if (k < 3) throw std::invalid_argument("k must be at least 3, got " + std::to_string(k));
  std::vector<std::int64_t> offs(static_cast<std::size_t>(k));
  std::iota(offs.begin(), offs.end(), 0);
  return Pattern(std::move(offs));
}

Pattern Pattern::parse(std::string_view text) {
  std::vector<std::int64_t> offs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::int64_t v = 0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || end != tok.data() + tok.size() || v < 0)
      throw std::invalid_argument("bad pattern offset '" + std::string(tok) + "'");
    offs.push_back(v);
    pos = comma + 1;
  }
  return Pattern(std::move(offs));
}

std::string Pattern::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < offsets_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(offsets_[i]);
  }
  return s;
}

Pattern pattern_from_k(int k) { return Pattern::ap(k); }

ZmColoring::ZmColoring(int color_count, std::vector<Color> cells)
    : color_count_(color_count), cells_(std::move(cells)) {
  if (color_count_ < 1) throw std::invalid_argument("color count must be >= 1");
  if (cells_.empty()) throw std::invalid_argument("modulus must be >= 1");
  for (Color c : cells_) {
    if (c != kWildcard && (c < 0 || c >= color_count_))
      throw std::invalid_argument("cell color " + std::to_string(c) + " outside [0, " +
                                  std::to_string(color_count_) + ")");
  }
}

bool ZmColoring::has_wildcard() const {
  return std::find(cells_.begin(), cells_.end(), kWildcard) != cells_.end();
}

bool ZmColoring::wildcard_only_at_zero() const {
  return cells_[0] == kWildcard && std::find(cells_.begin() + 1, cells_.end(), kWildcard) == cells_.end();
}

std::vector<Color> ZmColoring::used_colors() const {
  std::vector<Color> out;
  for (Color c : cells_)
    if (c != kWildcard) out.push_back(c);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ZmColoring ZmColoring::with_wildcards_as(Color c) const {
  std::vector<Color> cells = cells_;
  std::replace(cells.begin(), cells.end(), kWildcard, c);
  return ZmColoring(color_count_, std::move(cells));
}

std::string Verdict::to_string() const {
  if (pass) return "pass";
  std::string s = "fail a=" + std::to_string(witness->a) + " d=" + std::to_string(witness->d);
  s += " color=" + (color == kWildcard ? std::string("*") : std::to_string(color));
  return s;
}

std::vector<std::int64_t> instance_elements(const Pattern& p, std::int64_t a, std::int64_t d,
                                            std::int64_t m) {
  std::vector<std::int64_t> out;
  out.reserve(p.size());
  for (std::int64_t o : p.offsets()) {
    // o*d can exceed 64 bits only for absurd spans; reduce o first.
    const auto step = static_cast<std::int64_t>((static_cast<__int128>(o % m) * d) % m);
    out.push_back((a + step) % m);
  }
  return out;
}

std::optional<Color> monochromatic_color(const ZmColoring& c, const Pattern& p, std::int64_t a,
                                         std::int64_t d) {
  const std::int64_t m = c.modulus();
  Color seen = kWildcard;
  for (std::int64_t o : p.offsets()) {
    const auto x = static_cast<std::int64_t>((a + static_cast<__int128>(o % m) * d) % m);
    const Color col = c[x];
    if (col == kWildcard) continue;
    if (seen == kWildcard)
      seen = col;
    else if (col != seen)
      return std::nullopt;
  }
  return seen;
}

Verdict verify_zm(const ZmColoring& c, const Pattern& p, int jobs) {
  const std::int64_t m = c.modulus();
  if (m <= 1) return Verdict::passed();
  jobs = std::max(1, jobs);

  // Worker w scans d = 1 + w, 1 + w + jobs, ...; each stops at its first hit,
  // and the smallest (d, a) across workers is the sequential answer.
  std::vector<std::optional<std::pair<Instance, Color>>> found(static_cast<std::size_t>(jobs));
  std::atomic<std::int64_t> best_d{m};
  detail::run_workers(jobs, [&](int w) {
    for (std::int64_t d = 1 + w; d < m; d += jobs) {
      if (d > best_d.load(std::memory_order_relaxed)) return;
      for (std::int64_t a = 0; a < m; ++a) {
        if (auto col = monochromatic_color(c, p, a, d)) {
          found[static_cast<std::size_t>(w)] = std::make_pair(Instance{a, d}, *col);
          std::int64_t cur = best_d.load();
          while (d < cur && !best_d.compare_exchange_weak(cur, d)) {
          }
          return;
        }
      }
    }
  });

  std::optional<std::pair<Instance, Color>> best;
  for (const auto& f : found) {
    if (!f) continue;
    if (!best || f->first.d < best->first.d) best = f;
  }
  if (!best) return Verdict::passed();
  return Verdict::failed(best->first, best->second);
}

ZmColoring dilate(const ZmColoring& c, std::int64_t u) {
  const std::int64_t m = c.modulus();
  u = ((u % m) + m) % m;
  if (std::gcd(u, m) != 1)
    throw std::invalid_argument("dilation factor " + std::to_string(u) + " is not a unit mod " +
                                std::to_string(m));
  std::vector<Color> cells(static_cast<std::size_t>(m));
  for (std::int64_t x = 0; x < m; ++x)
    cells[static_cast<std::size_t>(x)] = c[static_cast<std::int64_t>((static_cast<__int128>(u) * x) % m)];
  return ZmColoring(c.color_count(), std::move(cells));
}

namespace {

std::int64_t parse_int(std::string_view tok, int line, const char* what) {
  std::int64_t v = 0;
  auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || end != tok.data() + tok.size())
    throw FormatError(line, std::string(tok), std::string("expected integer ") + what);
  return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

ZmColoring parse_coloring(std::string_view text) {
  std::optional<std::int64_t> m;
  int r = 0;
  std::optional<std::vector<Color>> cells;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;

    if (!m) {
      if (toks[0] != "zm") throw FormatError(lineno, std::string(toks[0]), "expected 'zm' header");
      if (toks.size() != 3)
        throw FormatError(lineno, std::string(toks.back()), "header is 'zm <m> <r>'");
      m = parse_int(toks[1], lineno, "modulus");
      r = static_cast<int>(parse_int(toks[2], lineno, "color count"));
      if (*m < 1) throw FormatError(lineno, std::string(toks[1]), "modulus must be >= 1");
      if (r < 1) throw FormatError(lineno, std::string(toks[2]), "color count must be >= 1");
      continue;
    }
    if (cells) throw FormatError(lineno, std::string(toks[0]), "unexpected content after cells");
    if (toks[0] != "cells") throw FormatError(lineno, std::string(toks[0]), "expected 'cells'");
    if (static_cast<std::int64_t>(toks.size()) - 1 != *m)
      throw FormatError(lineno, std::string(toks.back()),
                        "expected " + std::to_string(*m) + " cells, got " +
                            std::to_string(toks.size() - 1));
    cells.emplace();
    cells->reserve(static_cast<std::size_t>(*m));
    for (std::size_t i = 1; i < toks.size(); ++i) {
      if (toks[i] == "*") {
        cells->push_back(kWildcard);
        continue;
      }
      std::int64_t v = parse_int(toks[i], lineno, "color");
      if (v < 0 || v >= r)
        throw FormatError(lineno, std::string(toks[i]), "color outside [0, " + std::to_string(r) + ")");
      cells->push_back(static_cast<Color>(v));
    }
  }
  if (!m) throw FormatError(lineno, "", "missing 'zm' header");
  if (!cells) throw FormatError(lineno, "", "missing 'cells' line");
  return ZmColoring(r, std::move(*cells));
}

ZmColoring read_coloring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_coloring(ss.str());
}

std::string format_coloring(const ZmColoring& c) {
  std::string s = "zm " + std::to_string(c.modulus()) + " " + std::to_string(c.color_count()) + "\ncells";
  for (Color col : c.cells()) {
    s += ' ';
    s += col == kWildcard ? std::string("*") : std::to_string(col);
  }
  s += '\n';
  return s;
}

void write_coloring_file(const ZmColoring& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << format_coloring(c);
}

}  // namespace apfree
