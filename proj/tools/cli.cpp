#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nup/constructions.hpp"
#include "nup/proof_checker.hpp"
#include "nup/report.hpp"
#include "nup/search.hpp"
#include "nup/set_file.hpp"
#include "nup/word.hpp"

namespace nup {

namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kTextWitnesses = 10;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  int k = 0;
  std::optional<std::int64_t> p;
  std::optional<std::int64_t> q;
  std::string json_path;
  unsigned threads = 0;

  TFamilySpec spec() const { return {k, p, q}; }
};

void add_family_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--k", c.k, "group parameter k >= 1")->required();
  cmd->add_option("--p", c.p, "odd p >= 1 (with --q)");
  cmd->add_option("--q", c.q, "odd q >= 1 with 2^k | q - 1 (with --p)");
}

void add_output_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--json", c.json_path, "write a JSON report to PATH ('-' for stdout)");
  cmd->add_option("--threads", c.threads, "worker cap, 0 = available parallelism")
      ->envname("NUP_THREADS");
}

json report_header(const std::string& command) {
  return {{"tool", "nup"}, {"version", NUP_VERSION}, {"command", command}};
}

void emit_json(const std::string& path, const json& report, std::ostream& out) {
  if (path.empty()) return;
  if (path == "-") {
    out << report.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << report.dump(2) << '\n';
}

std::string factor_text(const GroupSet& set, std::uint32_t i) {
  const Group g(set.params());
  std::string s = g.to_string(set[i]);
  if (set.has_labels()) s += " [" + set.labels()[i] + "]";
  return s;
}

json witness_json(const GroupSet& set, const UniqueProduct& u) {
  const Group g(set.params());
  json w{{"product", g.to_string(u.product)},
         {"left", g.to_string(set[u.factors.left])},
         {"right", g.to_string(set[u.factors.right])}};
  if (set.has_labels()) {
    w["left_label"] = set.labels()[u.factors.left];
    w["right_label"] = set.labels()[u.factors.right];
  }
  return w;
}

// ---- verify

struct VerifyArgs {
  Common c;
  std::string set_path;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const unsigned threads = resolve_threads(a.c.threads);
  std::optional<ConstructedSet> built;
  GroupSet set{GroupParams(a.c.k)};
  std::size_t duplicates = 0;
  std::optional<std::int64_t> formula;
  std::string name;

  if (!a.set_path.empty()) {
    if (a.c.p || a.c.q) throw UsageError("--set cannot be combined with --p/--q");
    MakeSetResult r = read_set_file(a.set_path, GroupParams(a.c.k));
    duplicates = r.duplicates_removed;
    set = std::move(r.set);
    name = a.set_path;
    if (set.empty()) throw ParameterError("set file '" + a.set_path + "' has no elements");
  } else {
    const TFamilySpec spec = a.c.spec();
    built.emplace(build(spec));
    set = built->set();
    duplicates = built->duplicates();
    formula = cardinality_formula(spec);
    name = spec.describe();
  }

  const FactorizationTable square = product_table(set, set, threads);
  const std::vector<UniqueProduct> uniques = unique_products(square);
  const bool ok = uniques.empty();

  out << "set " << name << ": " << set.size() << " elements";
  if (formula) out << " (formula " << *formula << ", " << (*formula == static_cast<std::int64_t>(set.size()) ? "match" : "MISMATCH") << ")";
  out << ", " << duplicates << " duplicates removed\n";
  out << "square: " << square.total_pairs() << " products, " << square.size() << " distinct\n";
  out << "unique products: " << uniques.size() << '\n';
  for (std::size_t i = 0; i < uniques.size() && i < kTextWitnesses; ++i) {
    const auto& u = uniques[i];
    out << "  " << Group(set.params()).to_string(u.product) << " = " << factor_text(set, u.factors.left)
        << " * " << factor_text(set, u.factors.right) << '\n';
  }
  if (uniques.size() > kTextWitnesses) out << "  ... " << uniques.size() - kTextWitnesses << " more\n";
  out << (ok ? "result: non-unique product set\n" : "result: has uniquely represented products\n");

  json report = report_header("verify");
  json params = built ? spec_to_json(a.c.spec()) : json{{"k", a.c.k}, {"set", a.set_path}};
  params["threads"] = threads;
  report["parameters"] = std::move(params);
  report["set_size"] = set.size();
  report["formula_size"] = formula ? json(*formula) : json(nullptr);
  report["duplicates"] = duplicates;
  report["pairs"] = square.total_pairs();
  report["product_size"] = square.size();
  report["unique_count"] = uniques.size();
  report["nonunique"] = ok;
  json w = json::array();
  for (const auto& u : uniques) w.push_back(witness_json(set, u));
  report["witnesses"] = std::move(w);
  report["exit_status"] = ok ? 0 : 1;
  emit_json(a.c.json_path, report, out);
  return ok ? 0 : 1;
}

// ---- check

struct CheckArgs {
  Common c;
  bool verbose = false;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const unsigned threads = resolve_threads(a.c.threads);
  const TFamilySpec spec = a.c.spec();
  const TheoremSummary s = verify_theorem(spec, threads);
  const std::size_t total = s.claims.size();
  const bool ok = s.claims_failed == 0 && s.claims_typo_suspect == 0 && s.coverage.complete() &&
                  s.uniques.empty();

  out << "set " << spec.describe() << ": " << s.set_size << " elements, square " << s.product_size
      << " distinct of " << s.pairs << " products, " << s.unique_count() << " unique\n";
  print_claims_summary(out, s.claims, a.verbose);
  out << "claims: " << total << " total, " << s.claims_passed << " pass, " << s.claims_failed
      << " fail, " << s.claims_typo_suspect << " typo-suspect\n";
  out << "coverage: " << s.coverage.pairs_covered << '/' << s.coverage.pairs_total << " pairs, "
      << s.coverage.entries_covered << '/' << s.coverage.entries_total << " products";
  if (s.coverage.unsound_pairs) out << ", " << s.coverage.unsound_pairs << " UNSOUND";
  out << '\n';
  if (!s.consistent()) out << "inconsistent: claims and coverage pass but unique products exist\n";
  out << "result: " << (ok ? "all claims pass" : "claims not all passing") << '\n';

  json report = report_header("check");
  json params = spec_to_json(spec);
  params["threads"] = threads;
  report["parameters"] = std::move(params);
  report["set_size"] = s.set_size;
  report["formula_size"] = s.formula_size;
  report["duplicates"] = s.duplicates;
  report["pairs"] = s.pairs;
  report["product_size"] = s.product_size;
  report["unique_count"] = s.unique_count();
  report["claims_summary"] = {{"total", total},
                              {"pass", s.claims_passed},
                              {"fail", s.claims_failed},
                              {"typo_suspect", s.claims_typo_suspect}};
  report["coverage"] = to_json(s.coverage);
  report["consistent"] = s.consistent();
  report["claims"] = claims_to_json(s.claims);
  report["exit_status"] = ok ? 0 : 1;
  emit_json(a.c.json_path, report, out);
  return ok ? 0 : 1;
}

// ---- eval

struct EvalArgs {
  int k = 0;
  std::string word;
  bool classify = false;
  bool sigma = false;
  std::string json_path;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const Group g(a.k);
  const NormalForm w = g.eval(a.word);
  out << g.to_string(w) << '\n';
  json report = report_header("eval");
  report["parameters"] = {{"k", a.k}, {"word", a.word}};
  report["normal_form"] = g.to_string(w);
  report["fields"] = {{"u", w.u}, {"v", w.v}, {"alpha", w.alpha}, {"syllables", w.syllables},
                      {"beta", w.beta}};
  if (a.classify) {
    const char* c = to_string(g.classify(w));
    out << "class: " << c << '\n';
    report["class"] = c;
  }
  if (a.sigma) {
    const Abelianization ab = g.abelianization(w);
    out << "sigma_a: " << std::showpos << sigma_a(w) << " sigma_b: " << sigma_b(w)
        << std::noshowpos << '\n';
    out << "abelianization: a^" << ab.a_mod4 << " (mod 4), b^" << ab.b_mod2M << " (mod "
        << 2 * g.modulus() << ")\n";
    report["sigma_a"] = sigma_a(w);
    report["sigma_b"] = sigma_b(w);
    report["abelianization"] = {{"a_mod4", ab.a_mod4}, {"b_mod2M", ab.b_mod2M}};
  }
  emit_json(a.json_path, report, out);
  return 0;
}

// ---- search

struct SearchArgs {
  std::string config_path;
  SearchConfig cfg;
  std::string neighborhood = "swap-one";
  std::string init = "random";
  std::string out_path;
  std::string json_path;
  unsigned threads = 0;
};

Neighborhood parse_neighborhood(const std::string& s) {
  if (s == "swap-one") return Neighborhood::SwapOne;
  if (s == "mutate-one") return Neighborhood::MutateOne;
  throw ParameterError("unknown neighborhood '" + s + "' (swap-one or mutate-one)");
}

InitMode parse_init(const std::string& s) {
  if (s == "random") return InitMode::Random;
  if (s == "construction") return InitMode::Construction;
  throw ParameterError("unknown init mode '" + s + "' (random or construction)");
}

// Config file keys mirror the flag names; flags given on the command line win.
void apply_config_file(const std::string& path, const CLI::App& cmd, SearchArgs& a) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParameterError("config '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ParameterError("config '" + path + "' must be a JSON object");
  auto given = [&](const std::string& flag) { return cmd.count("--" + flag) > 0; };
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      std::string flag = key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      if (given(flag)) continue;
      const json& v = it.value();
      if (key == "k") a.cfg.k = v.get<int>();
      else if (key == "size") a.cfg.size = v.get<std::size_t>();
      else if (key == "max_len") a.cfg.max_len = v.get<int>();
      else if (key == "symmetric") a.cfg.symmetric = v.get<bool>();
      else if (key == "seed") a.cfg.seed = v.get<std::uint64_t>();
      else if (key == "budget") a.cfg.budget = v.get<std::uint64_t>();
      else if (key == "restarts") a.cfg.restarts = v.get<std::size_t>();
      else if (key == "t0") a.cfg.t0 = v.get<double>();
      else if (key == "cooling") a.cfg.cooling = v.get<double>();
      else if (key == "neighborhood") a.neighborhood = v.get<std::string>();
      else if (key == "init") a.init = v.get<std::string>();
      else throw ParameterError("config '" + path + "': unknown key '" + key + "'");
    }
  } catch (const json::type_error& e) {
    throw ParameterError("config '" + path + "': " + e.what());
  }
}

int cmd_search(SearchArgs& a, const CLI::App& cmd, std::ostream& out) {
  if (!a.config_path.empty()) apply_config_file(a.config_path, cmd, a);
  a.cfg.neighborhood = parse_neighborhood(a.neighborhood);
  a.cfg.init = parse_init(a.init);
  a.cfg.threads = resolve_threads(a.threads);
  const SearchResult r = run_search(a.cfg);
  const bool ok = r.best_score == 0;

  out << "search k=" << a.cfg.k << " size=" << a.cfg.size << " seed=" << a.cfg.seed << ": best score "
      << r.best_score << " after " << r.iterations << " iterations (restart " << r.best_restart
      << ")\n";
  std::ostringstream header;
  header << "search k=" << a.cfg.k << " size=" << a.cfg.size << " seed=" << a.cfg.seed
         << " score=" << r.best_score;
  if (a.out_path.empty()) {
    write_set(out, r.best, header.str());
  } else {
    write_set_file(a.out_path, r.best, header.str());
    out << "wrote " << a.out_path << '\n';
  }

  json report = report_header("search");
  json params = search_config_to_json(a.cfg);
  params["threads"] = a.cfg.threads;
  report["parameters"] = std::move(params);
  report["result"] = to_json(r);
  report["exit_status"] = ok ? 0 : 1;
  emit_json(a.json_path, report, out);
  return ok ? 0 : 1;
}

// ---- export-set

struct ExportArgs {
  Common c;
  std::string out_path;
  bool no_labels = false;
};

int cmd_export(const ExportArgs& a, std::ostream& out) {
  const TFamilySpec spec = a.c.spec();
  const ConstructedSet cs = build(spec);
  GroupSet set = cs.set();
  if (a.no_labels) set = make_set(set.params(), set.elements()).set;
  const std::string header = spec.describe() + ": " + std::to_string(set.size()) + " elements";
  if (a.out_path.empty() || a.out_path == "-") {
    write_set(out, set, header);
  } else {
    write_set_file(a.out_path, set, header);
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmetic and non-unique product set verification in P_k", "nup"};
  app.set_version_flag("--version", std::string("nup ") + NUP_VERSION);
  app.require_subcommand(1);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check that the square of a set has no unique product");
  add_family_options(verify_cmd, verify.c);
  verify_cmd->add_option("--set", verify.set_path, "verify a set file instead of T");
  add_output_options(verify_cmd, verify.c);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Run the structured claim suite");
  add_family_options(check_cmd, check.c);
  add_output_options(check_cmd, check.c);
  check_cmd->add_flag("--verbose", check.verbose, "list every claim");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Print the normal form of a word");
  eval_cmd->add_option("--k", eval.k, "group parameter k >= 1")->required();
  eval_cmd->add_option("word", eval.word, "word in a, b, A, B with ^exponents")->required();
  eval_cmd->add_flag("--classify", eval.classify, "print elliptic or hyperbolic");
  eval_cmd->add_flag("--sigma", eval.sigma, "print the parity homomorphisms and abelianization");
  eval_cmd->add_option("--json", eval.json_path, "write a JSON report to PATH ('-' for stdout)");

  SearchArgs search;
  auto* search_cmd = app.add_subcommand("search", "Annealing search for non-unique product sets");
  search_cmd->add_option("--config", search.config_path, "JSON config file");
  search_cmd->add_option("--k", search.cfg.k, "group parameter k >= 1");
  search_cmd->add_option("--size", search.cfg.size, "set size");
  search_cmd->add_option("--max-len", search.cfg.max_len, "word length cap for candidates");
  search_cmd->add_flag("--symmetric", search.cfg.symmetric, "keep S = S^-1");
  search_cmd->add_option("--seed", search.cfg.seed, "master seed");
  search_cmd->add_option("--budget", search.cfg.budget, "total iterations");
  search_cmd->add_option("--restarts", search.cfg.restarts, "independent restarts");
  search_cmd->add_option("--t0", search.cfg.t0, "initial temperature");
  search_cmd->add_option("--cooling", search.cfg.cooling, "geometric cooling factor");
  search_cmd->add_option("--neighborhood", search.neighborhood, "swap-one or mutate-one");
  search_cmd->add_option("--init", search.init, "random or construction");
  search_cmd->add_option("--out", search.out_path, "write the best set to a set file");
  search_cmd->add_option("--json", search.json_path, "write a JSON report to PATH ('-' for stdout)");
  search_cmd->add_option("--threads", search.threads, "parallel restarts, 0 = available")
      ->envname("NUP_THREADS");

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export-set", "Write T or T(p, q) as a set file");
  add_family_options(export_cmd, exp.c);
  export_cmd->add_option("--out", exp.out_path, "output path (default stdout)");
  export_cmd->add_flag("--no-labels", exp.no_labels, "omit slice labels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  int status = 2;
  try {
    if (*verify_cmd) status = cmd_verify(verify, out);
    else if (*check_cmd) status = cmd_check(check, out);
    else if (*eval_cmd) status = cmd_eval(eval, out);
    else if (*search_cmd) status = cmd_search(search, *search_cmd, out);
    else if (*export_cmd) status = cmd_export(exp, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (*eval_cmd) err << "  " << eval.word << "\n  " << std::string(e.position(), ' ') << "^\n";
    return 2;
  } catch (const SetFileError& e) {
    err << "error: " << verify.set_path << ": " << e.what() << '\n';
    return 2;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  err << "elapsed " << std::fixed << std::setprecision(3) << secs << " s\n";
  return status;
}

}  // namespace nup
