#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "subperm/subperm.hpp"

namespace fs = std::filesystem;
using namespace subperm;
using verify::Json;

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  Json doc;
  Table table;
  int exit_code = 0;
};

struct RunConfig {
  std::string command;
  std::string measure = "e1";
  int n = 0;
  int r = 2;
  std::string m;
  std::string method = "exact";
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  std::uint64_t suite_samples = verify::SuiteConfig{}.mc_samples;
  std::uint64_t suite_seed = verify::SuiteConfig{}.seed;
  std::uint64_t budget = OracleOptions{}.budget;
  unsigned threads = 0;
  std::string format = "json";
  std::string output;
  std::string target = "q2";
  std::string grid;
  int mmax = 0;
  std::string term = "I";
  std::string suite = "all";
  int start = 0;
  int holdout = 2;
  double tolerance = 0.35;
  int j = 1;
  std::string rows;
  std::string a;
  std::string q;
  std::string rational;

  OracleOptions oracle() const { return {budget, threads}; }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw DomainError("not an integer: '" + s + "'");
  return v;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  for (const auto& t : split(s, ',')) out.push_back(parse_int(t));
  return out;
}

std::vector<long> parse_grid(const std::string& s) {
  std::vector<long> out;
  for (int v : parse_ints(s)) out.push_back(v);
  return out;
}

// "2..4,3" -> {2,3}, {3,3}, {4,3}, deduplicated as unordered tuples.
std::vector<std::vector<int>> expand_ranges(const std::string& s) {
  std::vector<std::pair<int, int>> axes;
  for (const auto& t : split(s, ',')) {
    const auto dots = t.find("..");
    if (dots == std::string::npos) {
      const int v = parse_int(t);
      axes.emplace_back(v, v);
    } else {
      axes.emplace_back(parse_int(t.substr(0, dots)), parse_int(t.substr(dots + 2)));
    }
  }
  std::vector<std::vector<int>> out;
  std::set<std::vector<int>> seen;
  std::vector<int> cur(axes.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == axes.size()) {
      auto key = cur;
      std::sort(key.begin(), key.end());
      if (seen.insert(key).second) out.push_back(cur);
      return;
    }
    for (int v = axes[k].first; v <= axes[k].second; ++v) {
      cur[k] = v;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

MeasureKind parse_measure(const std::string& s) {
  if (s == "e1") return MeasureKind::E1SumOfPermutations;
  if (s == "e") return MeasureKind::EUniformRegular01;
  if (s == "eb") return MeasureKind::EBBernoulli;
  throw DomainError("unknown measure '" + s + "'");
}

Json spec_json(const MomentSpec& s) { return Json{{"n", s.n}, {"r", s.r}, {"m", s.m}}; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

Json config_json(const RunConfig& c) {
  Json out{{"command", c.command}};
  const auto& cmd = c.command;
  if (cmd == "moment") {
    out["measure"] = c.measure;
    out["n"] = c.n;
    out["r"] = c.r;
    out["m"] = c.m;
    out["method"] = c.method;
    if (c.method == "mc") {
      out["samples"] = c.samples;
      out["seed"] = c.seed;
    }
  } else if (cmd == "reconstruct") {
    out["r"] = c.r;
    out["m"] = c.m;
    out["target"] = c.target;
    out["start"] = c.start;
    out["holdout"] = c.holdout;
  } else if (cmd == "verify") {
    out["suite"] = c.suite;
    out["measure"] = c.measure;
    out["r"] = c.r;
    out["m"] = c.m;
    out["grid"] = c.grid;
    out["mmax"] = c.mmax;
    out["tolerance"] = c.tolerance;
    out["samples"] = c.suite_samples;
    out["seed"] = c.suite_seed;
    out["start"] = c.start;
    out["holdout"] = c.holdout;
    out["rational"] = c.rational;
  } else if (cmd == "formulas") {
    out["term"] = c.term;
    out["n"] = c.n;
    out["r"] = c.r;
    out["m"] = c.m;
    out["j"] = c.j;
    out["rows"] = c.rows;
    out["a"] = c.a;
    out["q"] = c.q;
  }
  out["budget"] = c.budget;
  out["format"] = c.format;
  return out;
}

Json envelope(const RunConfig& c) {
  return Json{{"tool", "subperm"}, {"version", version}, {"config", config_json(c)}};
}

// ---- moment ----

Output cmd_moment(const RunConfig& c) {
  const MeasureKind measure = parse_measure(c.measure);
  const MomentSpec spec{c.n, c.r, parse_ints(c.m)};
  spec.validate();
  Output out;
  out.doc = envelope(c);
  Json result{{"spec", spec_json(spec)}};
  std::string method;

  if (c.method == "mc") {
    method = "monte-carlo";
    const auto est = monte_carlo_moment(measure, spec, c.samples, c.seed, c.threads);
    result["mean"] = est.mean;
    result["std_error"] = est.std_error;
    result["samples"] = est.samples;
    out.table = {{"measure", "n", "r", "m", "method", "mean", "std_error", "samples"},
                 {{c.measure, std::to_string(c.n), std::to_string(c.r), c.m, method, Json(est.mean).dump(),
                   Json(est.std_error).dump(), std::to_string(est.samples)}}};
  } else {
    ExactRational value;
    switch (measure) {
    case MeasureKind::E1SumOfPermutations:
      if (c.method == "exact") {
        method = method_name(OracleMethod::CycleReduced);
        value = e1_exact(spec, c.oracle()).value;
      } else if (c.method == "naive") {
        method = method_name(OracleMethod::Naive);
        value = e1_exact_naive(spec, c.oracle()).value;
      } else {
        throw DomainError("method '" + c.method + "' is not available for e1");
      }
      break;
    case MeasureKind::EUniformRegular01: {
      if (c.method != "exact" && c.method != "tiny-enum")
        throw DomainError("method '" + c.method + "' is not available for e");
      method = method_name(OracleMethod::TinyEnum);
      UniformTinyOptions opts;
      opts.oracle = c.oracle();
      value = e_uniform_exact_tiny(spec, opts).value;
      break;
    }
    case MeasureKind::EBBernoulli:
      if (c.method != "exact") throw DomainError("method '" + c.method + "' is not available for eb");
      if (spec.m.size() == 1) {
        method = "closed-form";
        value = eb_expectation_single(spec.n, spec.r, spec.m[0]);
      } else if (spec.m.size() == 2) {
        method = "support-pairs";
        value = eb_product_exact_tiny(spec.n, spec.r, spec.m[0], spec.m[1], c.oracle());
      } else {
        throw DomainError("eb product moments take at most two factors");
      }
      break;
    }
    result["value"] = to_string(value);
    out.table = {{"measure", "n", "r", "m", "method", "value"},
                 {{c.measure, std::to_string(c.n), std::to_string(c.r), c.m, method, to_string(value)}}};
  }
  out.doc["method"] = method;
  out.doc["result"] = std::move(result);
  return out;
}

// ---- reconstruct ----

Output cmd_reconstruct(const RunConfig& c) {
  verify::NodePolicy policy;
  policy.start = c.start;
  policy.holdout = c.holdout;
  verify::MomentCache cache(c.oracle());
  Output out;
  out.doc = envelope(c);
  out.doc["method"] = c.r <= 2 ? "polynomial-interpolation" : "rational-reconstruction";
  out.table.header = {"m", "target", "power", "coefficient", "held_out_verified"};
  Json results = Json::array();
  for (const auto& m : expand_ranges(c.m)) {
    verify::ReconstructionResult res;
    if (c.target == "single") {
      if (m.size() != 1) throw DomainError("target 'single' takes one order in --m");
      res = verify::reconstruct_single(c.r, m[0], policy, cache);
    } else if (c.target == "q1" || c.target == "q2") {
      if (m.size() != 2) throw DomainError("targets q1 and q2 take two orders in --m");
      auto both = verify::reconstruct_q1_q2(c.r, m[0], m[1], policy, cache);
      res = c.target == "q1" ? std::move(both.q1) : std::move(both.q2);
    } else {
      throw DomainError("unknown target '" + c.target + "'");
    }
    Json item = verify::to_json(res);
    item["target"] = c.target;
    const std::string mm = verify::detail::join(m);
    if (const auto* p = res.polynomial()) {
      for (std::size_t k = 0; k < p->coeffs().size(); ++k)
        out.table.rows.push_back({mm, c.target, std::to_string(k), to_string(p->coeffs()[k]),
                                  res.held_out_verified ? "true" : "false"});
      if (p->is_zero()) out.table.rows.push_back({mm, c.target, "0", "0", res.held_out_verified ? "true" : "false"});
    } else {
      const auto& f = std::get<RationalFunctionQ>(res.model);
      for (std::size_t k = 0; k < f.numerator().coeffs().size(); ++k)
        out.table.rows.push_back({mm, c.target, "num:" + std::to_string(k), to_string(f.numerator().coeffs()[k]),
                                  res.held_out_verified ? "true" : "false"});
      for (std::size_t k = 0; k < f.denominator().coeffs().size(); ++k)
        out.table.rows.push_back({mm, c.target, "den:" + std::to_string(k), to_string(f.denominator().coeffs()[k]),
                                  res.held_out_verified ? "true" : "false"});
    }
    results.push_back(std::move(item));
  }
  out.doc["results"] = std::move(results);
  return out;
}

// ---- verify ----

verify::SuiteConfig suite_config(const RunConfig& c, bool given_r, bool given_m, bool given_grid) {
  verify::SuiteConfig cfg;
  cfg.oracle = c.oracle();
  cfg.nodes.start = c.start;
  cfg.nodes.holdout = c.holdout;
  cfg.slope_tolerance = c.tolerance;
  cfg.mc_samples = std::max<std::uint64_t>(c.suite_samples, 2);
  cfg.seed = c.suite_seed;
  const auto m = parse_ints(c.m);
  const auto grid = parse_grid(c.grid);
  const bool override_case = given_r || given_m || given_grid;

  if (c.suite == "factorization" && override_case) {
    verify::FactorizationCase fc;
    fc.measure = parse_measure(c.measure);
    fc.r = c.r;
    fc.m = given_m ? m : std::vector<int>{2, 2};
    fc.grid = given_grid ? grid : std::vector<long>{8, 16, 32};
    cfg.factorization = {fc};
  }
  if (c.suite == "cancellation" && override_case) {
    const auto mm = given_m ? m : std::vector<int>{2, 2};
    cfg.cancellation = {{c.r, mm, given_grid ? grid : std::vector<long>{10, 20, 40}}};
    cfg.first_order = {{c.r, mm, {16, 32, 64}}};
  }
  if (c.suite == "series" && given_m) cfg.series_orders = m;
  if (c.suite == "degree" || c.suite == "all") {
    if (given_r) cfg.degree_r = c.r;
    if (c.mmax > 0) {
      cfg.degree.m_max = c.mmax;
      cfg.degree.max_total = 2 * c.mmax;
    }
  }
  if (!c.rational.empty()) {
    for (const auto& pair : expand_ranges(c.rational)) {
      if (pair.size() != 2) throw DomainError("--rational takes pairs m1,m2");
      cfg.rational_pairs.emplace_back(pair[0], pair[1]);
    }
  }
  return cfg;
}

Output cmd_verify(const RunConfig& c, bool given_r, bool given_m, bool given_grid) {
  const auto cfg = suite_config(c, given_r, given_m, given_grid);
  const auto reports = verify::run_suite(c.suite, cfg);
  Output out;
  out.doc = envelope(c);
  out.doc["method"] = "suite";
  Json list = Json::array();
  out.table.header = {"claim_id", "verdict"};
  for (const auto& r : reports) {
    list.push_back(verify::to_json(r));
    out.table.rows.push_back({r.claim_id, std::string(verify::verdict_name(r.verdict))});
  }
  out.exit_code = verify::exit_code(reports);
  out.doc["exit_code"] = out.exit_code;
  out.doc["reports"] = std::move(list);
  return out;
}

// ---- formulas ----

CompositionMatrix parse_rows(const std::string& s) {
  CompositionMatrix rows;
  for (const auto& row : split(s, ';')) {
    const auto parts = parse_ints(row);
    Composition c;
    c.parts = parts;
    c.total = std::accumulate(parts.begin(), parts.end(), 0);
    rows.push_back(std::move(c));
  }
  return rows;
}

Output cmd_formulas(const RunConfig& c) {
  Output out;
  out.doc = envelope(c);
  out.doc["method"] = "closed-form";
  const MomentSpec spec{c.n, c.r, parse_ints(c.m)};
  Json value;
  Json input_out = spec_json(spec);
  const std::string& t = c.term;
  if (t == "I" || t == "II" || t == "III" || t == "IV") {
    const TermValue v = t == "I" ? term_I(spec) : t == "II" ? term_II(spec) : t == "III" ? term_III(spec) : term_IV(spec);
    value = to_string(v.value);
    out.doc["applicable"] = v.applicable;
  } else if (t == "alpha" || t == "kernel-ratio") {
    const auto rows = parse_rows(c.rows);
    value = to_string(t == "alpha" ? alpha_first_order(spec.m, rows, spec.n) : kernel_ratio(spec.m, rows, spec.n));
    input_out["rows"] = c.rows;
  } else if (t == "series") {
    if (spec.m.size() != 1) throw DomainError("series takes one order in --m");
    const auto s = series_coeffs(c.r, spec.m[0]);
    value = Json{{"a", to_string(s.a)}, {"b", to_string(s.b)}, {"c", to_string(s.c)}};
    input_out = Json{{"r", c.r}, {"m", spec.m[0]}};
  } else if (t == "A1" || t == "A2" || t == "A3" || t == "A4") {
    if (spec.m.size() != 1) throw DomainError("identities take one order in --m");
    const auto id = t == "A1" ? MultinomialIdentity::A1
                    : t == "A2" ? MultinomialIdentity::A2
                    : t == "A3" ? MultinomialIdentity::A3
                                : MultinomialIdentity::A4;
    const auto sides = multinomial_identity_check(id, spec.m[0], c.r);
    value = Json{{"lhs", to_string(sides.lhs)}, {"rhs", to_string(sides.rhs)}, {"equal", sides.lhs == sides.rhs}};
    input_out = Json{{"r", c.r}, {"m", spec.m[0]}};
  } else if (t == "symmetry") {
    if (spec.m.size() != 1) throw DomainError("symmetry takes one order in --m");
    value = to_string(symmetry_identity_residual(c.n, c.r, spec.m[0], c.j));
    input_out = Json{{"n", c.n}, {"r", c.r}, {"m", spec.m[0]}, {"j", c.j}};
  } else if (t == "lemma") {
    std::vector<ExactRational> a;
    for (const auto& s : split(c.a, ',')) a.push_back(parse_rational(s));
    std::vector<long> q;
    for (int v : parse_ints(c.q)) q.push_back(v);
    const auto res = stirling_lemma_residual(LemmaInput(a, q, c.n));
    value = Json{{"actual", res.actual}, {"predicted", to_string(res.predicted)}, {"residual", res.residual}};
    input_out = Json{{"n", c.n}, {"a", c.a}, {"q", c.q}};
  } else {
    throw DomainError("unknown term '" + t + "'");
  }
  out.doc["term"] = t;
  out.doc["input"] = input_out;
  out.doc["value"] = value;
  if (value.is_object()) {
    out.table.header = {"term", "key", "value"};
    for (const auto& [k, v] : value.items()) out.table.rows.push_back({t, k, cell(v)});
  } else {
    out.table = {{"term", "input", "value"}, {{t, input_out.dump(), cell(value)}}};
  }
  return out;
}

// ---- emission ----

std::string render(const Output& out, const std::string& format) {
  std::ostringstream s;
  if (format == "json") {
    s << out.doc.dump(2) << '\n';
  } else if (format == "csv") {
    s << "# subperm " << version << ' ' << out.doc["config"].dump() << '\n';
    for (std::size_t i = 0; i < out.table.header.size(); ++i) s << (i ? "," : "") << csv_field(out.table.header[i]);
    s << '\n';
    for (const auto& row : out.table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << csv_field(row[i]);
      s << '\n';
    }
  } else {
    s << "subperm " << version << ' ' << out.doc["config"].dump() << '\n';
    std::vector<std::size_t> width(out.table.header.size(), 0);
    auto measure = [&](const std::vector<std::string>& row) {
      for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
    };
    measure(out.table.header);
    for (const auto& row : out.table.rows) measure(row);
    auto print = [&](const std::vector<std::string>& row) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        s << row[i];
        if (i + 1 < row.size()) s << std::string(width[i] - row[i].size() + 2, ' ');
      }
      s << '\n';
    };
    print(out.table.header);
    for (const auto& row : out.table.rows) print(row);
  }
  return s.str();
}

void emit(const std::string& text, const RunConfig& c) {
  if (c.output.empty() || c.output == "-") {
    std::cout << text;
    return;
  }
  fs::path path(c.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("SUBPERM_OUTPUT_DIR"); dir && *dir) path = fs::path(dir) / path;
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DomainError("cannot open output file " + path.string());
  file << text;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and sampled moments of sub-permanents of random permutation-sum matrices"};
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--budget", c.budget, "work budget in kernel evaluations")->envname("SUBPERM_BUDGET");
    sub->add_option("--threads", c.threads, "worker threads (0: all cores)");
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--output", c.output, "output file (relative paths go under SUBPERM_OUTPUT_DIR)");
  };

  auto* moment = app.add_subcommand("moment", "E(prod perm_{m_i}) for one ensemble");
  moment->add_option("--measure", c.measure)->check(CLI::IsMember({"e1", "e", "eb"}));
  moment->add_option("--n", c.n)->required();
  moment->add_option("--r", c.r)->required();
  moment->add_option("--m", c.m, "orders, comma separated")->required();
  moment->add_option("--method", c.method)->check(CLI::IsMember({"exact", "naive", "tiny-enum", "mc"}));
  moment->add_option("--samples", c.samples);
  moment->add_option("--seed", c.seed);
  common(moment);

  auto* reconstruct = app.add_subcommand("reconstruct", "exact Q1, Q2 or single moment as a function of n");
  reconstruct->add_option("--r", c.r)->required();
  reconstruct->add_option("--m", c.m, "orders; a..b expands to a range")->required();
  reconstruct->add_option("--target", c.target)->check(CLI::IsMember({"q1", "q2", "single"}));
  reconstruct->add_option("--start", c.start, "first node (0: m1+m2+2)");
  reconstruct->add_option("--holdout", c.holdout, "held-out nodes");
  common(reconstruct);

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("suite", c.suite)->check(CLI::IsMember(verify::suite_names()));
  auto* opt_r = verify_cmd->add_option("--r", c.r);
  auto* opt_m = verify_cmd->add_option("--m", c.m);
  auto* opt_grid = verify_cmd->add_option("--grid", c.grid, "n values, comma separated");
  verify_cmd->add_option("--measure", c.measure)->check(CLI::IsMember({"e1", "e", "eb"}));
  verify_cmd->add_option("--mmax", c.mmax, "largest order in the degree scan");
  verify_cmd->add_option("--tolerance", c.tolerance, "slope tolerance");
  verify_cmd->add_option("--samples", c.suite_samples, "Monte Carlo samples per case");
  verify_cmd->add_option("--seed", c.suite_seed);
  verify_cmd->add_option("--start", c.start);
  verify_cmd->add_option("--holdout", c.holdout);
  verify_cmd->add_option("--rational", c.rational, "r = 3 rational reconstruction pairs, e.g. 2,2");
  common(verify_cmd);

  auto* formulas = app.add_subcommand("formulas", "closed-form terms and identities");
  formulas->add_option("--term", c.term)
      ->check(CLI::IsMember({"I", "II", "III", "IV", "alpha", "kernel-ratio", "series", "A1", "A2", "A3", "A4",
                             "symmetry", "lemma"}));
  formulas->add_option("--n", c.n);
  formulas->add_option("--r", c.r);
  formulas->add_option("--m", c.m);
  formulas->add_option("--j", c.j, "colour index for symmetry");
  formulas->add_option("--rows", c.rows, "colour splits, rows separated by ';'");
  formulas->add_option("--a", c.a, "lemma coefficients");
  formulas->add_option("--q", c.q, "lemma shifts");
  common(formulas);

  CLI11_PARSE(app, argc, argv);

  Output out;
  try {
    if (moment->parsed()) {
      c.command = "moment";
      out = cmd_moment(c);
    } else if (reconstruct->parsed()) {
      c.command = "reconstruct";
      out = cmd_reconstruct(c);
    } else if (verify_cmd->parsed()) {
      c.command = "verify";
      out = cmd_verify(c, opt_r->count() > 0, opt_m->count() > 0, opt_grid->count() > 0);
    } else {
      c.command = "formulas";
      out = cmd_formulas(c);
    }
  } catch (const std::exception& e) {
    const auto* err = dynamic_cast<const Error*>(&e);
    Json doc = envelope(c);
    doc["error"] = Json{{"kind", err ? std::string(err->kind()) : std::string("InvalidArgument")}, {"message", e.what()}};
    std::cerr << "error: " << e.what() << '\n';
    try {
      emit(doc.dump(2) + "\n", c);
    } catch (const std::exception&) {
      std::cout << doc.dump(2) << '\n';
    }
    return dynamic_cast<const BudgetExceeded*>(&e) ? 2 : 1;
  }
  emit(render(out, c.format), c);
  return out.exit_code;
}
