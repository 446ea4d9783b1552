#include "apfree/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "apfree/count.hpp"
#include "apfree/residue.hpp"
#include "apfree/search.hpp"

namespace apfree::cli {

namespace {

using nlohmann::json;

struct PatternArgs {
  std::optional<int> k;
  std::optional<std::string> offsets;

  Pattern get() const {
    if (k.has_value() == offsets.has_value()) throw std::invalid_argument("give exactly one of --k or --pattern");
    return k ? Pattern::ap(*k) : Pattern::parse(*offsets);
  }
};

void add_pattern(CLI::App* cmd, PatternArgs& p) {
  auto* k = cmd->add_option("--k", p.k, "progression length");
  auto* o = cmd->add_option("--pattern", p.offsets, "comma-separated offsets, e.g. 0,2,3,5");
  k->excludes(o);
}

json pattern_json(const Pattern& p) { return p.offsets(); }

json coloring_json(const ZmColoring& c) {
  json cells = json::array();
  for (Color col : c.cells()) col == kWildcard ? cells.push_back("*") : cells.push_back(col);
  return {{"m", c.modulus()}, {"r", c.color_count()}, {"cells", cells}};
}

json verdict_json(const Verdict& v) {
  json j = {{"verdict", v.pass ? "pass" : "fail"}};
  if (!v.pass) {
    j["witness"] = {{"a", v.witness->a}, {"d", v.witness->d}};
    j["color"] = v.color == kWildcard ? json("*") : json(v.color);
  }
  return j;
}

json rational_json(const Rational& q) { return {{"num", q.numerator()}, {"den", q.denominator()}, {"text", to_string(q)}}; }

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw std::invalid_argument("bad integer '" + tok + "' in list");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

struct Options {
  PatternArgs pattern;
  int jobs = 1;
  bool as_json = false;
  std::string out_path;

  // residue
  std::int64_t p = 0;
  int r = 0;
  // verify
  std::string file, file2;
  bool fast = false, brute = false;
  // search / table
  std::int64_t bound = 0, limit = 50000;
  bool all = false;
  // enumerate
  std::int64_t m = 0;
  bool wildcard_zero = false;
  std::uint64_t budget = kEnumerationBudget;
  // unroll / count / blocks / average
  std::string n_list;
  std::int64_t n = 0;
  bool periodic = false, timing = false, exhaustive = false;
  std::string unrolled_file, periodic_file, cyclic_file, block_sizes, block_colors;
  bool solid = false;
  // coeff
  std::string mode;
};

int cmd_residue(const Options& o, std::ostream& out) {
  const auto c = residue_coloring(o.p, o.r);
  if (o.as_json) {
    out << json{{"command", "residue"}, {"p", o.p}, {"r", o.r}, {"coloring", coloring_json(c)}}.dump() << '\n';
    return kOk;
  }
  emit("# power residue classes (r=" + std::to_string(o.r) + ") of Z_" + std::to_string(o.p) + "\n" +
           format_coloring(c),
       o.out_path, out);
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto c = read_coloring_file(o.file);
  const Pattern p = o.pattern.get();
  const bool use_fast = o.fast;
  const Verdict v = use_fast ? fast_verdict(c, p) : verify_zm(c, p, o.jobs);
  if (o.as_json) {
    json j = verdict_json(v);
    j["command"] = "verify";
    j["method"] = use_fast ? "fast" : "brute";
    j["m"] = c.modulus();
    j["pattern"] = pattern_json(p);
    out << j.dump() << '\n';
  } else {
    out << v.to_string() << '\n';
  }
  return v.pass ? kOk : kVerifyFailed;
}

int cmd_search(const Options& o, std::ostream& out) {
  const auto report = search_primes(o.r, o.pattern.get(), o.bound, o.jobs);
  if (o.as_json) {
    json diags = json::array();
    for (const auto& d : report.diagnostics) {
      json e = {{"m", d.modulus}, {"longest_run", d.longest_run}, {"pass", d.verdict.pass}};
      if (!d.verdict.pass) e["witness"] = {{"a", d.verdict.witness->a}, {"d", d.verdict.witness->d}};
      diags.push_back(std::move(e));
    }
    json j = {{"command", "search"},
              {"r", report.r},
              {"pattern", pattern_json(report.pattern)},
              {"bound", report.bound},
              {"passing", report.passing},
              {"best", report.best ? json(*report.best) : json(nullptr)},
              {"diagnostics", diags}};
    out << j.dump() << '\n';
    return kOk;
  }
  out << format_report(report);
  if (o.all) {
    for (const auto& d : report.diagnostics)
      out << "  m=" << d.modulus << " run=" << d.longest_run << ' ' << d.verdict.to_string() << '\n';
  }
  return kOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const Pattern p = o.pattern.get();
  const auto found = search_zm_exhaustive(o.m, o.r, p, o.wildcard_zero, o.budget);
  if (o.as_json) {
    json list = json::array();
    for (const auto& c : found) list.push_back(coloring_json(c));
    out << json{{"command", "enumerate"},   {"m", o.m},         {"r", o.r}, {"pattern", pattern_json(p)},
                {"wildcard_zero", o.wildcard_zero}, {"classes", found.size()}, {"colorings", list}}
               .dump()
        << '\n';
    return kOk;
  }
  std::string text = "# " + std::to_string(found.size()) + " color-permutation classes\n";
  for (const auto& c : found) {
    text += "# coefficient " +
            to_string(o.wildcard_zero ? unrolled_coefficient(c, p) : periodic_coefficient(c, p)) + "\n";
    text += format_coloring(c);
  }
  emit(text, o.out_path, out);
  return kOk;
}

int cmd_tensor(const Options& o, std::ostream& out) {
  const auto c = tensor(read_coloring_file(o.file), read_coloring_file(o.file2), o.pattern.get());
  if (o.as_json) {
    out << json{{"command", "tensor"}, {"coloring", coloring_json(c)}}.dump() << '\n';
    return kOk;
  }
  emit(format_coloring(c), o.out_path, out);
  return kOk;
}

int cmd_unroll(const Options& o, std::ostream& out) {
  auto base = read_coloring_file(o.file);
  const auto line = o.periodic ? LineColoring::periodic(std::move(base)) : LineColoring::unrolled(std::move(base));
  emit(format_line(line, o.n), o.out_path, out);
  return kOk;
}

int cmd_count(const Options& o, std::ostream& out) {
  const Pattern p = o.pattern.get();
  const int sources = !o.unrolled_file.empty() + !o.periodic_file.empty() + !o.cyclic_file.empty() + o.solid +
                      !o.block_sizes.empty();
  if (sources != 1)
    throw std::invalid_argument("give exactly one of --unrolled, --periodic, --cyclic, --solid, --blocks");

  if (!o.cyclic_file.empty()) {
    const auto c = read_coloring_file(o.cyclic_file);
    const auto count = count_cyclic(c, p);
    if (o.as_json)
      out << json{{"command", "count"}, {"cyclic", true}, {"m", c.modulus()}, {"pattern", pattern_json(p)},
                  {"count", count}}
                 .dump()
          << '\n';
    else
      out << "m=" << c.modulus() << " count=" << count << '\n';
    return kOk;
  }

  if (o.n_list.empty()) throw std::invalid_argument("--n is required");
  const auto ns = parse_int_list(o.n_list);
  if (!std::is_sorted(ns.begin(), ns.end())) throw std::invalid_argument("--n values must be ascending");

  std::optional<LineColoring> line;
  if (!o.unrolled_file.empty()) line = LineColoring::unrolled(read_coloring_file(o.unrolled_file));
  if (!o.periodic_file.empty()) line = LineColoring::periodic(read_coloring_file(o.periodic_file));
  if (o.solid) line = LineColoring::solid();
  if (!o.block_sizes.empty()) {
    const auto sizes = o.block_sizes == "twelve" ? twelve_block_sizes() : parse_int_list(o.block_sizes);
    std::vector<Color> colors;
    if (o.block_colors.empty()) {
      for (std::size_t i = 0; i < sizes.size(); ++i) colors.push_back(static_cast<Color>(i % 2));
    } else {
      for (auto c : parse_int_list(o.block_colors)) colors.push_back(static_cast<Color>(c));
    }
    line = LineColoring::blocks(sizes, colors, ns.back());
  }

  json results = json::array();
  for (auto n : ns) {
    const auto res = count_line(*line, n, p, o.jobs);
    if (o.as_json) {
      json j = {{"n", res.n},
                {"pattern", pattern_json(p)},
                {"count", res.count},
                {"total", total_instances(n, p)},
                {"ratio", res.ratio_string()}};
      if (o.timing) j["elapsed_ms"] = res.elapsed_ms;
      results.push_back(std::move(j));
    } else {
      out << "n=" << res.n << " count=" << res.count << " total=" << total_instances(n, p)
          << " ratio=" << res.ratio_string();
      if (o.timing) out << " elapsed_ms=" << res.elapsed_ms;
      out << '\n';
    }
  }
  if (o.as_json) {
    if (results.size() == 1)
      out << json{{"command", "count"}, {"result", results[0]}}.dump() << '\n';
    else
      out << json{{"command", "count"}, {"results", results}}.dump() << '\n';
  }
  return kOk;
}

int cmd_coeff(const Options& o, std::ostream& out) {
  const Pattern p = o.pattern.get();
  Rational q;
  std::string extra;
  if (o.mode == "periodic" || o.mode == "unrolled") {
    if (o.file.empty()) throw std::invalid_argument("--mode " + o.mode + " needs a coloring file");
    const auto c = read_coloring_file(o.file);
    q = o.mode == "periodic" ? periodic_coefficient(c, p) : unrolled_coefficient(c, p);
  } else if (o.mode == "random") {
    if (o.r < 1) throw std::invalid_argument("--mode random needs --r");
    q = random_coefficient(o.r, p);
  } else if (o.mode == "percent") {
    std::int64_t m = o.m;
    int r = o.r;
    if (!o.file.empty()) {
      const auto c = read_coloring_file(o.file);
      m = c.modulus();
      r = c.color_count();
    }
    if (m < 1 || r < 1) throw std::invalid_argument("--mode percent needs --m and --r or a coloring file");
    q = percent_vs_random(m, r, p);
    extra = percent_string(q) + "%";
  } else {
    throw std::invalid_argument("unknown --mode '" + o.mode + "'");
  }
  if (o.as_json) {
    json j = {{"command", "coeff"}, {"mode", o.mode}, {"pattern", pattern_json(p)}, {"value", rational_json(q)}};
    if (!extra.empty()) j["percent"] = percent_string(q);
    out << j.dump() << '\n';
  } else {
    out << to_string(q);
    if (!extra.empty()) out << ' ' << extra;
    out << '\n';
  }
  return kOk;
}

int cmd_blocks(const Options& o, std::ostream& out) {
  const auto sizes = o.block_sizes.empty() || o.block_sizes == "twelve" ? twelve_block_sizes()
                                                                          : parse_int_list(o.block_sizes);
  std::vector<Color> colors;
  if (o.block_colors.empty()) {
    for (std::size_t i = 0; i < sizes.size(); ++i) colors.push_back(static_cast<Color>(i % 2));
  } else {
    for (auto c : parse_int_list(o.block_colors)) colors.push_back(static_cast<Color>(c));
  }
  emit(format_line(blocks_coloring(sizes, colors, o.n), o.n), o.out_path, out);
  return kOk;
}

int cmd_table(const Options& o, std::ostream& out) {
  const auto rows = table_check(o.limit, o.brute, o.jobs);
  bool ok = true;
  for (const auto& row : rows) ok = ok && row.status != EntryStatus::Fail;
  if (o.as_json) {
    json list = json::array();
    for (const auto& row : rows) {
      const char* status = row.status == EntryStatus::Pass            ? "pass"
                           : row.status == EntryStatus::PassByProduct ? "pass-by-product"
                           : row.status == EntryStatus::Fail          ? "fail"
                                                                      : "skipped";
      json e = {{"k", row.entry.k},
                {"r", row.entry.r},
                {"m", row.entry.m},
                {"status", status},
                {"percent", row.computed},
                {"percent_exact", rational_json(row.percent)},
                {"printed", row.entry.printed_hundredths},
                {"percent_match", row.percent_match},
                {"brute_confirmed", row.brute_confirmed}};
      if (!row.entry.factors && row.status != EntryStatus::Skipped) e["longest_run"] = row.longest_run;
      list.push_back(std::move(e));
    }
    out << json{{"command", "table"}, {"limit", o.limit}, {"entries", list}}.dump() << '\n';
  } else {
    out << format_table(rows);
  }
  return ok ? kOk : kVerifyFailed;
}

int cmd_average(const Options& o, std::ostream& out) {
  const Pattern p = o.pattern.get();
  const Rational avg = average_over_colorings(o.n, o.r, p);
  std::optional<Rational> brute;
  if (o.exhaustive) {
    const std::int64_t colorings = checked_pow(o.r, o.n);
    if (colorings > (std::int64_t{1} << 24)) throw LimitError("exhaustive average limited to r^n <= 2^24 colorings");
    std::vector<std::uint16_t> colors(static_cast<std::size_t>(o.n) + 1, 0);
    std::uint64_t sum = 0;
    for (std::int64_t code = 0; code < colorings; ++code) {
      std::int64_t x = code;
      for (std::int64_t l = 1; l <= o.n; ++l) {
        colors[static_cast<std::size_t>(l)] = static_cast<std::uint16_t>(x % o.r);
        x /= o.r;
      }
      sum += count_materialized(colors, p);
    }
    brute = Rational(static_cast<std::int64_t>(sum), colorings);
  }
  if (o.as_json) {
    json j = {{"command", "average"}, {"n", o.n}, {"r", o.r}, {"pattern", pattern_json(p)}, {"average", rational_json(avg)}};
    if (brute) j["exhaustive"] = rational_json(*brute);
    out << j.dump() << '\n';
  } else {
    out << to_string(avg) << '\n';
    if (brute) out << "exhaustive " << to_string(*brute) << (*brute == avg ? " (match)" : " (MISMATCH)") << '\n';
  }
  return brute && *brute != avg ? kVerifyFailed : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Colorings that avoid monochromatic arithmetic progressions"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* cmd, bool pattern) {
    if (pattern) add_pattern(cmd, o.pattern);
    cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--json", o.as_json, "print one JSON object");
  };

  auto* residue = app.add_subcommand("residue", "emit the r-th power residue coloring of Z_p");
  residue->add_option("--p", o.p, "odd prime")->required();
  residue->add_option("--r", o.r, "number of colors, dividing p-1")->required();
  residue->add_option("-o,--out", o.out_path, "output file");
  common(residue, false);

  auto* verify = app.add_subcommand("verify", "check a coloring file for nontrivial monochromatic instances");
  verify->add_option("file", o.file, "coloring file")->required();
  auto* fast = verify->add_flag("--fast", o.fast, "normalized translate scan (prime coset colorings only)");
  auto* brute = verify->add_flag("--brute", o.brute, "exhaustive scan (default)");
  fast->excludes(brute);
  common(verify, true);

  auto* search = app.add_subcommand("search", "sweep primes for avoiding residue colorings");
  search->add_option("--r", o.r, "number of colors")->required();
  search->add_option("--bound", o.bound, "largest prime to try")->required();
  search->add_flag("--all", o.all, "list every prime checked");
  common(search, true);

  auto* enumerate = app.add_subcommand("enumerate", "all avoiding colorings of Z_m up to color permutation");
  enumerate->add_option("--m", o.m, "modulus")->required();
  enumerate->add_option("--r", o.r, "number of colors")->required();
  enumerate->add_flag("--wildcard-zero", o.wildcard_zero, "leave cell 0 arbitrary");
  enumerate->add_option("--budget", o.budget, "maximum r^(m-1)");
  enumerate->add_option("-o,--out", o.out_path, "output file");
  common(enumerate, true);

  auto* tens = app.add_subcommand("tensor", "product of two wildcard-0 colorings");
  tens->add_option("first", o.file, "coloring of Z_m1")->required();
  tens->add_option("second", o.file2, "coloring of Z_m2")->required();
  tens->add_option("-o,--out", o.out_path, "output file");
  common(tens, true);

  auto* unroll = app.add_subcommand("unroll", "emit the coloring of 1..n unrolled from a Z_m coloring");
  unroll->add_option("file", o.file, "coloring file")->required();
  unroll->add_option("--n", o.n, "length")->required()->check(CLI::NonNegativeNumber);
  unroll->add_flag("--periodic", o.periodic, "color l by l mod m instead");
  unroll->add_option("-o,--out", o.out_path, "output file");

  auto* count = app.add_subcommand("count", "count monochromatic instances in 1..n");
  count->add_option("--n", o.n_list, "n, or an ascending comma list");
  count->add_option("--unrolled", o.unrolled_file, "unrolled coloring file");
  count->add_option("--periodic", o.periodic_file, "periodic coloring file");
  count->add_option("--cyclic", o.cyclic_file, "count in Z_m itself");
  count->add_flag("--solid", o.solid, "one color");
  count->add_option("--blocks", o.block_sizes, "relative block sizes, or 'twelve'");
  count->add_option("--block-colors", o.block_colors, "block colors (default alternating 0,1)");
  count->add_flag("--timing", o.timing, "report elapsed time");
  common(count, true);

  auto* coeff = app.add_subcommand("coeff", "exact leading n^2 coefficients");
  coeff->add_option("--mode", o.mode, "periodic | unrolled | random | percent")->required();
  coeff->add_option("file", o.file, "coloring file");
  coeff->add_option("--r", o.r, "number of colors");
  coeff->add_option("--m", o.m, "modulus");
  common(coeff, true);

  auto* blocks = app.add_subcommand("blocks", "emit a block coloring of 1..n");
  blocks->add_option("--sizes", o.block_sizes, "relative sizes (default: the twelve-block coloring)");
  blocks->add_option("--colors", o.block_colors, "block colors (default alternating 0,1)");
  blocks->add_option("--n", o.n, "length")->required()->check(CLI::NonNegativeNumber);
  blocks->add_option("-o,--out", o.out_path, "output file");

  auto* table = app.add_subcommand("table", "re-verify the table of best known moduli");
  table->add_option("--limit", o.limit, "largest modulus to verify (default 50000)");
  table->add_flag("--brute", o.brute, "also brute-force product entries up to 25000");
  common(table, false);

  auto* average = app.add_subcommand("average", "mean monochromatic count over all r^n colorings");
  average->add_option("--n", o.n, "length")->required()->check(CLI::NonNegativeNumber);
  average->add_option("--r", o.r, "number of colors")->required()->check(CLI::PositiveNumber);
  average->add_flag("--exhaustive", o.exhaustive, "also average by enumerating every coloring");
  common(average, true);

  std::vector<std::string> argv_store{"apfree"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*residue) return cmd_residue(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*search) return cmd_search(o, out);
    if (*enumerate) return cmd_enumerate(o, out);
    if (*tens) return cmd_tensor(o, out);
    if (*unroll) return cmd_unroll(o, out);
    if (*count) return cmd_count(o, out);
    if (*coeff) return cmd_coeff(o, out);
    if (*blocks) return cmd_blocks(o, out);
    if (*table) return cmd_table(o, out);
    if (*average) return cmd_average(o, out);
  } catch (const NotAvoiding& e) {
    err << "error: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kUsage;
  } catch (const LimitError& e) {
    err << "limit exceeded: " << e.what() << '\n';
    return kLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace apfree::cli
