// nusq: decisions, witnesses, sieves and named checks for sums of three
// nonunit squares, the ternary forms f and g, and polygonal numbers.
//
// Exit codes: 0 pass / decomposable, 1 negative / mismatch, 2 usage,
// 3 environment (I/O, checkpoint).

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "nusq/genus.hpp"
#include "nusq/nonunit.hpp"
#include "nusq/polygonal.hpp"
#include "nusq/sieve.hpp"
#include "nusq/ternary.hpp"
#include "nusq/verify.hpp"

using namespace nusq;
using json = nlohmann::json;

namespace {

constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEnvironment = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

u64 parse_u64(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError(std::string("bad ") + what + ": '" + s + "'");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw UsageError(std::string("bad ") + what + ": '" + s + "'");
  }
}

// "LO..HI" or "HI" (meaning 1..HI).
std::pair<u64, u64> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) return {1, parse_u64(s, "range")};
  const u64 lo = parse_u64(s.substr(0, dots), "range start");
  const u64 hi = parse_u64(s.substr(dots + 2), "range end");
  if (lo > hi) throw UsageError("range start exceeds range end");
  return {lo, hi};
}

std::set<int> parse_residues(const std::string& s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const u64 r = parse_u64(item, "residue");
    if (r > 4) throw UsageError("residues are taken mod 5");
    out.insert(static_cast<int>(r));
  }
  if (out.empty()) throw UsageError("empty residue list");
  return out;
}

json triple_json(const Triple& t) { return json::array({t.x, t.y, t.z}); }

std::string triple_text(const Triple& t) {
  return "(" + std::to_string(t.x) + ", " + std::to_string(t.y) + ", " + std::to_string(t.z) + ")";
}

std::string args_text(const std::vector<i64>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

struct PolyFlags {
  int m = 3;
  int k = 3;
  bool nonzero = false;
};

void add_poly_flags(CLI::App* cmd, PolyFlags& f) {
  cmd->add_option("--m", f.m, "gonality m >= 3")->check(CLI::Range(3, 1000000));
  cmd->add_option("--k", f.k, "number of terms k >= 1")->check(CLI::Range(1, 1000));
  cmd->add_flag("--nonzero", f.nonzero, "exclude terms equal to 0");
}

// ---------------------------------------------------------------------------

int cmd_decide(const std::string& problem, u64 n, const PolyFlags& pf, const std::string& format) {
  json out = {{"n", n}, {"problem", problem}};
  bool yes = false;
  std::string text;
  if (problem == "squares3") {
    const auto t = canonical_triple_search(n, [](i64) { return true; });
    yes = t.has_value();
    if (t) {
      out["witness"] = triple_json(*t);
      text = triple_text(*t);
    }
  } else if (problem == "nonunit3") {
    const auto s = nonunit_status(n);
    out["in_s3"] = s.in_s3;
    yes = s.in_s3_nonunit;
    if (s.witness) {
      out["witness"] = triple_json(*s.witness);
      text = triple_text(*s.witness);
    }
  } else if (problem == "polygonal") {
    const PolygonalProblem prob{pf.m, pf.k, pf.nonzero};
    out["m"] = pf.m;
    out["k"] = pf.k;
    out["nonzero"] = pf.nonzero;
    const auto args = decompose_polygonal(n, prob);
    yes = args.has_value();
    if (args) {
      json values = json::array();
      for (i64 x : *args) values.push_back(polygonal_value(pf.m, x));
      out["witness"] = *args;
      out["values"] = values;
      text = args_text(*args);
    }
  } else {
    throw UsageError("unknown problem '" + problem + "' (squares3, nonunit3, polygonal)");
  }
  out["decomposable"] = yes;
  if (format == "json") {
    std::cout << out.dump() << '\n';
  } else {
    std::cout << n << ": " << (yes ? text : "none") << '\n';
  }
  return yes ? 0 : kExitNegative;
}

int cmd_lift(u64 m, const std::string& format) {
  const auto w = nine_m_lift(m);
  if (format == "json") {
    json out = {{"m", m}, {"lift", w.has_value()}};
    if (w) {
      out["input"] = triple_json(w->input);
      out["output"] = triple_json(w->output);
      out["raw"] = triple_json(w->raw);
      out["variant"] = to_string(w->variant);
    }
    std::cout << out.dump() << '\n';
  } else if (w) {
    std::cout << "9*" << m << ": " << triple_text(w->output) << " via " << to_string(w->variant) << " from "
              << triple_text(w->input) << '\n';
  } else {
    std::cout << "9*" << m << ": none\n";
  }
  return w ? 0 : kExitNegative;
}

int cmd_verify(const std::string& id, const RunConfig& cfg, const std::string& format, bool timing) {
  if (id == "list") {
    for (const auto& c : theorem_registry()) {
      std::cout << c.id << "  (default max " << c.default_max << ")  " << c.description << '\n';
    }
    return 0;
  }
  if (id == "all") {
    bool all = true;
    for (const auto& c : theorem_registry()) {
      const auto report = run_verify(c.id, cfg);
      all = all && report.pass;
      if (format == "json") std::cout << report.to_json(timing).dump() << '\n';
      else if (format == "csv") std::cout << report.to_csv();
      else std::cout << report.to_text(timing);
    }
    return all ? 0 : kExitNegative;
  }
  try {
    find_check(id);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto report = run_verify(id, cfg);
  if (format == "json") std::cout << report.to_json(timing).dump(2) << '\n';
  else if (format == "csv") std::cout << report.to_csv();
  else std::cout << report.to_text(timing);
  return report.pass ? 0 : kExitNegative;
}

struct SieveFlags {
  std::string target;
  std::string range;
  std::string residues;
  PolyFlags poly;
  unsigned threads = 1;
  u64 chunk = u64{1} << 18;
  std::string checkpoint;
  std::string from_checkpoint;
  std::string format = "json";
  bool no_timing = false;
};

int cmd_sieve(const SieveFlags& f) {
  const auto [lo, hi] = parse_range(f.range);
  SieveOptions opts;
  opts.threads = std::max(1u, f.threads);
  opts.chunk_size = std::max<u64>(1, f.chunk);
  if (!f.from_checkpoint.empty()) {
    opts.checkpoint_path = f.from_checkpoint;
    opts.resume = true;
  } else {
    opts.checkpoint_path = f.checkpoint;
  }
  const bool json_out = f.format == "json";
  if (json_out) {
    opts.on_chunk = [](const json& chunk) { std::cout << chunk.dump() << '\n' << std::flush; };
  }
  SieveReport report;
  if (f.target == "nonunit") {
    std::optional<std::set<int>> residues;
    if (!f.residues.empty()) residues = parse_residues(f.residues);
    report = sieve_nonunit_exceptions(lo, hi, residues, opts);
  } else if (f.target == "form-f" || f.target == "form-g") {
    report = genus_exception_sieve(f.target == "form-f" ? FormId::f : FormId::g, lo, hi, opts);
  } else if (f.target == "polygonal") {
    report = polygonal_sieve(PolygonalProblem{f.poly.m, f.poly.k, f.poly.nonzero}, lo, hi, opts);
  } else {
    throw UsageError("unknown sieve target '" + f.target + "' (nonunit, form-f, form-g, polygonal)");
  }
  if (json_out) {
    json summary = report.to_json(!f.no_timing);
    summary["summary"] = true;
    std::cout << summary.dump() << '\n';
  } else {
    std::cout << report.to_csv(!f.no_timing);
  }
  return 0;
}

int cmd_report_genus(u64 max, unsigned threads) {
  const QSeries tf = theta_coeffs(form(FormId::f), max, threads);
  const QSeries tg = theta_coeffs(form(FormId::g), max, threads);
  std::cout << "n,r_f,r_g,genus_avg_exact,genus_avg_analytic,phi\n";
  for (u64 n = 1; n <= max; ++n) {
    const Rational avg = weighted_genus_average(static_cast<u64>(tf[n]), static_cast<u64>(tg[n]));
    std::string analytic;
    if (is_genus_eligible(n)) analytic = r_gen_f(n).exact.str();
    std::cout << n << ',' << tf[n] << ',' << tg[n] << ',' << avg.str() << ',' << analytic << ','
              << (tg[n] - tf[n]) / 2 << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nusq: sums of three nonunit squares, ternary forms and polygonal numbers"};
  app.require_subcommand(1);

  // decide
  std::string problem, format = "text";
  std::string n_text;
  PolyFlags decide_poly;
  auto* decide = app.add_subcommand("decide", "decide and witness one integer");
  decide->add_option("problem", problem, "squares3 | nonunit3 | polygonal")->required();
  decide->add_option("n", n_text, "nonnegative integer")->required();
  add_poly_flags(decide, decide_poly);
  decide->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  // polygonal decompose / sieve
  auto* poly = app.add_subcommand("polygonal", "polygonal decompositions and exceptional sets");
  poly->require_subcommand(1);
  PolyFlags poly_flags;
  std::string poly_n;
  auto* poly_decompose = poly->add_subcommand("decompose", "decompose one integer");
  poly_decompose->add_option("n", poly_n)->required();
  add_poly_flags(poly_decompose, poly_flags);
  poly_decompose->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  auto* poly_sieve = poly->add_subcommand("sieve", "exceptions in [1, max]");
  u64 poly_max = 1000;
  bool poly_no_timing = false;
  std::string poly_format = "json";
  add_poly_flags(poly_sieve, poly_flags);
  poly_sieve->add_option("--max", poly_max)->required();
  poly_sieve->add_option("--format", poly_format)->check(CLI::IsMember({"json", "csv"}));
  poly_sieve->add_flag("--no-timing", poly_no_timing);

  // lift
  std::string lift_m;
  auto* lift = app.add_subcommand("lift", "write 9m as x^2 + y^2 + z^2 with xyz != 0 (mod 3), no unit squares");
  lift->add_option("m", lift_m)->required();
  lift->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  // verify
  std::string verify_id;
  RunConfig cfg;
  u64 verify_p = 0;
  std::string verify_format = "text";
  bool verify_no_timing = false;
  auto* verify = app.add_subcommand("verify", "run a named check (ID, 'list' or 'all')");
  verify->add_option("id", verify_id)->required();
  verify->add_option("--max", cfg.max_bound, "bound (default per check)");
  verify->add_option("--threads", cfg.threads)->check(CLI::Range(1u, 1024u));
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--p", verify_p, "prime for prop-2.3");
  verify->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json", "csv"}));
  verify->add_flag("--no-timing", verify_no_timing);

  // sieve
  SieveFlags sf;
  auto* sieve = app.add_subcommand("sieve", "stream an exceptional-set sieve as JSON lines");
  sieve->add_option("target", sf.target, "nonunit | form-f | form-g | polygonal")->required();
  sieve->add_option("range", sf.range, "LO..HI or HI")->required();
  sieve->add_option("--residues", sf.residues, "nonunit only: residues mod 5, e.g. 0,1,4");
  add_poly_flags(sieve, sf.poly);
  sieve->add_option("--threads", sf.threads)->check(CLI::Range(1u, 1024u));
  sieve->add_option("--chunk", sf.chunk, "chunk size");
  sieve->add_option("--checkpoint", sf.checkpoint, "write progress to PATH");
  sieve->add_option("--from-checkpoint", sf.from_checkpoint, "resume from (and keep writing) PATH");
  sieve->add_option("--format", sf.format)->check(CLI::IsMember({"json", "csv"}));
  sieve->add_flag("--no-timing", sf.no_timing, "omit timing fields");

  // report
  std::string report_kind;
  u64 report_max = 100;
  unsigned report_threads = 1;
  auto* report = app.add_subcommand("report", "tabular reports");
  report->add_option("kind", report_kind, "genus")->required()->check(CLI::IsMember({"genus"}));
  report->add_option("--max", report_max)->required();
  report->add_option("--threads", report_threads)->check(CLI::Range(1u, 1024u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*decide) return cmd_decide(problem, parse_u64(n_text, "n"), decide_poly, format);
    if (*poly_decompose) return cmd_decide("polygonal", parse_u64(poly_n, "n"), poly_flags, format);
    if (*poly_sieve) {
      SieveFlags f;
      f.target = "polygonal";
      f.range = "1.." + std::to_string(poly_max);
      f.poly = poly_flags;
      f.format = poly_format;
      f.no_timing = poly_no_timing;
      return cmd_sieve(f);
    }
    if (*lift) return cmd_lift(parse_u64(lift_m, "m"), format);
    if (*verify) {
      if (verify_p) cfg.prime = verify_p;
      if (cfg.prime && (*cfg.prime < 3 || !is_prime(*cfg.prime))) throw UsageError("--p must be an odd prime");
      return cmd_verify(verify_id, cfg, verify_format, !verify_no_timing);
    }
    if (*sieve) return cmd_sieve(sf);
    if (*report) return cmd_report_genus(report_max, report_threads);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitEnvironment;
  } catch (const CheckpointMismatch& e) {
    std::cerr << "checkpoint error: " << e.what() << '\n';
    return kExitEnvironment;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitEnvironment;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEnvironment;
  }
  return kExitUsage;
}
