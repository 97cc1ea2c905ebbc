#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hcomm/algebra_io.hpp"
#include "hcomm/commutator.hpp"
#include "hcomm/congruence.hpp"
#include "hcomm/corpus.hpp"
#include "hcomm/day.hpp"
#include "hcomm/error.hpp"
#include "hcomm/kiss.hpp"
#include "hcomm/recursion.hpp"
#include "hcomm/relation.hpp"
#include "hcomm/verify.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace hcomm;
using json = nlohmann::json;

namespace {

enum Exit { ok = 0, falsified = 1, unmet = 2, resource = 3, usage = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --theorem accepts these numbers as well as the check names.
std::map<std::string, std::string> const aliases = {
    {"2.2", "rotation"},      {"2.3", "centrality-transfer"},
    {"2.5", "composition"},   {"2.7", "tc-hyper"},
    {"2.8", "nested"},        {"2.9", "almost-2"},
    {"2.10", "almost-n"},     {"2.11", "glue"},
    {"3.2", "completion-2"},  {"3.3", "kiss-lemma"},
    {"3.5", "completion"},    {"4.1", "shift"},
    {"4.2", "membership"},    {"4.3", "shared-delta"},
    {"4.4", "clone-slice"},
};

std::string alias_of(std::string const& check) {
  for (auto const& [k, v] : aliases) {
    if (v == check) {
      return k;
    }
  }
  return "";
}

struct Input {
  FiniteAlgebra alg;
  std::string bytes;
  std::string source;
};

// A file path, or the name of a built-in algebra.
Input load_input(std::string const& arg) {
  if (fs::exists(arg)) {
    auto bytes = read_file(arg);
    auto alg = parse_algebra(bytes, arg);
    return {std::move(alg), std::move(bytes), arg};
  }
  try {
    auto alg = corpus::builtin_algebra(arg);
    auto bytes = write_algebra(alg);
    return {std::move(alg), std::move(bytes), arg};
  } catch (InvalidArgument const&) {
    throw UsageError("no such file or built-in algebra: " + arg);
  }
}

struct Witnesses {
  std::vector<Congruence> lattice;
  std::optional<Term> malcev;
  std::optional<std::vector<Term>> day;
  std::optional<Term> kiss;
  bool cached = false;
};

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json to_json(Witnesses const& w, std::uint64_t hash, TermSearchCaps caps) {
  json j;
  j["hash"] = hex(hash);
  j["caps"] = {{"depth", caps.depth_cap}, {"count", caps.count_cap}};
  j["congruences"] = json::array();
  for (auto const& c : w.lattice) {
    j["congruences"].push_back(c.to_string());
  }
  j["malcev"] = w.malcev ? json(w.malcev->to_string()) : json(nullptr);
  if (w.day) {
    j["day"] = json::array();
    for (auto const& t : *w.day) {
      j["day"].push_back(t.to_string());
    }
  } else {
    j["day"] = nullptr;
  }
  j["kiss"] = w.kiss ? json(w.kiss->to_string()) : json(nullptr);
  return j;
}

std::optional<Witnesses> from_json(json const& j, std::size_t size, std::uint64_t hash,
                                   TermSearchCaps caps) {
  if (j.value("hash", "") != hex(hash) || j["caps"].value("depth", 0u) != caps.depth_cap ||
      j["caps"].value("count", 0u) != caps.count_cap) {
    return std::nullopt;
  }
  Witnesses w;
  w.cached = true;
  for (auto const& c : j["congruences"]) {
    w.lattice.push_back(Congruence::parse(size, c.get<std::string>()));
  }
  if (!j["malcev"].is_null()) {
    w.malcev = Term::parse(j["malcev"].get<std::string>());
  }
  if (!j["day"].is_null()) {
    std::vector<Term> d;
    for (auto const& t : j["day"]) {
      d.push_back(Term::parse(t.get<std::string>()));
    }
    w.day = std::move(d);
  }
  if (!j["kiss"].is_null()) {
    w.kiss = Term::parse(j["kiss"].get<std::string>());
  }
  return w;
}

Witnesses compute_witnesses(FiniteAlgebra const& alg, TermSearchCaps caps,
                            ClosureOptions closure) {
  Witnesses w;
  w.lattice = all_congruences(alg);
  if (auto p = find_malcev_term(alg, caps)) {
    w.malcev = p->term;
  }
  auto day = find_day_terms(alg, caps);
  if (day.sequence) {
    w.day = day.sequence->terms;
    CommutatorCache cache(alg, closure);
    auto const kiss = find_kiss2(cache, caps);
    w.kiss = kiss.q2;
  }
  return w;
}

// Witnesses for the input, through <cache_dir>/<name>.cache.json when a
// cache directory is given. A cache whose hash or caps differ is rebuilt.
Witnesses witnesses_for(Input const& in, std::string const& cache_dir, TermSearchCaps caps,
                        ClosureOptions closure) {
  std::uint64_t const hash = content_hash(in.bytes);
  fs::path path;
  if (!cache_dir.empty()) {
    path = fs::path(cache_dir) / (in.alg.name() + ".cache.json");
    if (fs::exists(path)) {
      try {
        if (auto w = from_json(json::parse(read_file(path)), in.alg.size(), hash, caps)) {
          return *w;
        }
      } catch (std::exception const&) {
      }
    }
  }
  auto w = compute_witnesses(in.alg, caps, closure);
  if (!path.empty()) {
    fs::create_directories(path.parent_path());
    std::ofstream(path) << to_json(w, hash, caps).dump(2) << "\n";
  }
  return w;
}

// "0" and "1" are the least and greatest congruences, "c<i>" is line i of
// the congruences command; anything else is read as a partition.
Congruence parse_theta(std::string const& token, FiniteAlgebra const& alg,
                       std::vector<Congruence> const& lat) {
  if (token == "0") {
    return Congruence::identity(alg.size());
  }
  if (token == "1") {
    return Congruence::total(alg.size());
  }
  if (token.size() > 1 && token[0] == 'c' &&
      std::all_of(token.begin() + 1, token.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    std::size_t const i = std::stoul(token.substr(1));
    if (i >= lat.size()) {
      throw UsageError("unknown congruence '" + token + "' (the lattice has " +
                       std::to_string(lat.size()) + " elements)");
    }
    return lat[i];
  }
  Congruence c = Congruence::identity(alg.size());
  try {
    c = Congruence::parse(alg.size(), token);
  } catch (ParseError const&) {
    throw UsageError("unknown congruence '" + token + "'");
  }
  if (!is_compatible(alg, c)) {
    throw UsageError("'" + token + "' is not a congruence of " + alg.name());
  }
  return c;
}

std::vector<Congruence> parse_thetas(std::vector<std::string> const& tokens,
                                     FiniteAlgebra const& alg,
                                     std::vector<Congruence> const& lat) {
  std::vector<Congruence> out;
  for (auto const& t : tokens) {
    out.push_back(parse_theta(t, alg, lat));
  }
  return out;
}

std::string theta_name(Congruence const& t, std::vector<Congruence> const& lat) {
  if (t.is_identity()) {
    return "0";
  }
  if (t.is_total()) {
    return "1";
  }
  return "c" + std::to_string(std::find(lat.begin(), lat.end(), t) - lat.begin());
}

std::string theta_names(std::vector<Congruence> const& thetas,
                        std::vector<Congruence> const& lat) {
  std::string s;
  for (auto const& t : thetas) {
    s += (s.empty() ? "" : " ") + theta_name(t, lat);
  }
  return s;
}

struct Common {
  std::size_t depth_cap = 3;
  std::size_t count_cap = 50000;
  std::size_t member_cap = std::size_t{1} << 20;
  std::string cache_dir;

  TermSearchCaps caps() const { return {depth_cap, count_cap}; }
  ClosureOptions closure() const {
    ClosureOptions o;
    o.member_cap = member_cap;
    return o;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--depth-cap", c.depth_cap, "Term search depth cap")->capture_default_str();
  cmd->add_option("--count-cap", c.count_cap, "Term search count cap")->capture_default_str();
  cmd->add_option("--member-cap", c.member_cap, "Relation size cap")->capture_default_str();
  cmd->add_option("--cache-dir", c.cache_dir, "Directory for cached witnesses");
}

int cmd_congruences(std::string const& file) {
  auto const in = load_input(file);
  for (auto const& c : all_congruences(in.alg)) {
    std::cout << c.to_string() << "\n";
  }
  return ok;
}

int cmd_commutator(std::string const& file, std::vector<std::string> const& tokens,
                   std::string const& mode, Common const& common) {
  auto const in = load_input(file);
  auto const lat = all_congruences(in.alg);
  auto const thetas = parse_thetas(tokens, in.alg, lat);
  if (thetas.size() < 2) {
    throw UsageError("a commutator needs at least two congruences");
  }
  IndexSet const shape = IndexSet::range(thetas.size());
  std::optional<Congruence> tc;
  std::optional<Congruence> hyper;
  if (mode != "hyper") {
    tc = tc_commutator(in.alg, shape, thetas, common.closure());
    std::cout << "tc: " << tc->to_string() << "\n";
  }
  if (mode != "tc") {
    hyper = hypercommutator(in.alg, shape, thetas, common.closure());
    std::cout << "hyper: " << hyper->to_string() << "\n";
  }
  if (mode != "both") {
    return ok;
  }
  auto const w = witnesses_for(in, common.cache_dir, common.caps(), common.closure());
  bool const day = w.day && make_day_sequence(in.alg, *w.day).verified;
  if (!day) {
    std::cout << "equality not asserted: no Day terms within the search caps\n";
    return ok;
  }
  if (*tc == *hyper) {
    return ok;
  }
  for (Element a = 0; a < in.alg.size(); ++a) {
    for (Element b = 0; b < in.alg.size(); ++b) {
      if (tc->related(a, b) != hyper->related(a, b)) {
        std::cout << "witness: <" << a << "," << b << "> is in "
                  << (tc->related(a, b) ? "tc" : "hyper") << " only\n";
        return falsified;
      }
    }
  }
  return falsified;
}

int cmd_delta(std::string const& file, std::vector<std::string> const& tokens,
              std::string const& via, std::vector<std::size_t> q, std::string const& out,
              Common const& common) {
  auto const in = load_input(file);
  auto const lat = all_congruences(in.alg);
  auto const thetas = parse_thetas(tokens, in.alg, lat);
  if (thetas.empty()) {
    throw UsageError("give at least one congruence");
  }
  IndexSet const shape = IndexSet::range(thetas.size());
  std::optional<CubeRelation> rel;
  if (via == "direct") {
    rel = delta(in.alg, shape, thetas, common.closure());
  } else {
    if (q.empty()) {
      for (std::size_t p = 0; p + 1 < thetas.size() && p < 2; ++p) {
        q.push_back(p);
      }
    }
    for (auto p : q) {
      if (p >= thetas.size()) {
        throw UsageError("--q position " + std::to_string(p) + " is outside the shape");
      }
    }
    rel = delta_via_glue_recursion(in.alg, shape, thetas, IndexSet(q), common.closure());
  }
  std::string const text = write_relation(*rel, theta_names(thetas, lat));
  if (out.empty()) {
    std::cout << text;
    return ok;
  }
  // Written only once the relation is complete.
  fs::path const tmp = out + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    f << text;
    if (!f) {
      throw UsageError("cannot write " + out);
    }
  }
  fs::rename(tmp, out);
  return ok;
}

int cmd_terms(std::string const& file, Common const& common) {
  auto const in = load_input(file);
  auto const w = witnesses_for(in, common.cache_dir, common.caps(), common.closure());
  std::cout << "algebra: " << in.alg.name() << " (size " << in.alg.size() << ", "
            << w.lattice.size() << " congruences)\n";
  std::cout << "malcev: " << (w.malcev ? w.malcev->to_string() : "none") << "\n";
  if (w.day) {
    std::cout << "day: k=" << w.day->size() - 1 << "\n";
    for (std::size_t i = 0; i < w.day->size(); ++i) {
      std::cout << "  m" << i << " = " << (*w.day)[i].to_string() << "\n";
    }
  } else {
    std::cout << "day: none\n";
  }
  std::cout << "kiss: " << (w.kiss ? w.kiss->to_string() : "none") << "\n";
  return ok;
}

int cmd_corpus(std::vector<std::string> const& files, std::string const& export_dir,
               Common const& common) {
  if (!export_dir.empty()) {
    fs::create_directories(export_dir);
    std::vector<FiniteAlgebra> all;
    for (auto const& e : corpus::builtin()) {
      all.push_back(e.algebra);
    }
    for (auto const& x : {corpus::z4_with_negation(), corpus::z4_ring(),
                          corpus::z2sq_with_ternary_sum(), corpus::z2sq_ring()}) {
      all.push_back(x);
    }
    for (auto const& alg : all) {
      save_algebra(alg, fs::path(export_dir) / (alg.name() + ".json"));
      std::cout << (fs::path(export_dir) / (alg.name() + ".json")).string() << "\n";
    }
    return ok;
  }
  std::vector<std::string> names = files;
  if (names.empty()) {
    for (auto const& e : corpus::builtin()) {
      names.push_back(e.name);
    }
  }
  for (auto const& f : names) {
    auto const in = load_input(f);
    auto const w = witnesses_for(in, common.cache_dir, common.caps(), common.closure());
    std::cout << in.alg.name() << "  size " << in.alg.size() << "  congruences "
              << w.lattice.size() << "  hash " << hex(content_hash(in.bytes)) << "  malcev "
              << (w.malcev ? "yes" : "no") << "  day "
              << (w.day ? "k=" + std::to_string(w.day->size() - 1) : std::string("none"))
              << "  kiss " << (w.kiss ? "yes" : "no") << "\n";
  }
  return ok;
}

// Comparison algebras for the shared-Delta check of built-in groups.
std::vector<FiniteAlgebra> default_others(FiniteAlgebra const& alg) {
  if (alg == corpus::cyclic_group(4)) {
    return {corpus::z4_with_negation(), corpus::z4_ring()};
  }
  if (alg == corpus::cyclic_product(2, 2)) {
    return {corpus::z2sq_with_ternary_sum(), corpus::z2sq_ring()};
  }
  return {};
}

int cmd_verify(std::string const& file, std::vector<std::string> const& theorems,
               VerifyOptions opts, std::vector<std::string> const& others,
               std::string const& nesting, Common const& common) {
  auto const in = load_input(file);
  std::vector<std::string> checks;
  for (auto const& t : theorems) {
    auto const it = aliases.find(t);
    std::string const name = it != aliases.end() ? it->second : t;
    auto const& known = Verifier::check_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw UsageError("unknown theorem or check '" + t + "'");
    }
    checks.push_back(name);
  }
  if (checks.empty()) {
    checks = Verifier::check_names();
  }
  if (nesting == "suffix") {
    opts.nesting = {NestingShape::suffix};
  } else if (nesting == "prefix") {
    opts.nesting = {NestingShape::prefix};
  }
  for (auto const& o : others) {
    opts.others.push_back(load_input(o).alg);
  }
  if (others.empty()) {
    opts.others = default_others(in.alg);
  }
  opts.caps = common.caps();
  opts.closure = common.closure();
  auto const w = witnesses_for(in, common.cache_dir, common.caps(), common.closure());
  opts.day_terms = w.day;
  opts.kiss_term = w.kiss;

  Verifier v(in.alg, opts);
  std::cout << "algebra " << in.alg.name() << " (size " << in.alg.size() << ", "
            << v.lattice().size() << " congruences, hash " << hex(content_hash(in.bytes))
            << ")\n";
  std::cout << "options max-n " << opts.max_n << ", budget " << opts.budget << ", seed "
            << opts.seed << ", exhaustive limit " << opts.exhaustive_limit << ", clone arity "
            << opts.clone_arity << ", nesting " << nesting << "\n";
  for (std::size_t i = 0; i < v.lattice().size(); ++i) {
    std::cout << "theta " << i << " (" << theta_name(v.lattice()[i], v.lattice())
              << ") = " << v.lattice()[i].to_string() << "\n";
  }
  int code = ok;
  for (auto const& name : checks) {
    auto const t0 = std::chrono::steady_clock::now();
    auto const r = v.run(name);
    double const secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string const tag = alias_of(name);
    std::cout << name << (tag.empty() ? "" : " [" + tag + "]") << ": " << to_string(r.status)
              << " (" << r.instances << " instances, " << r.checked << " checks, "
              << (r.exhaustive ? "exhaustive" : "partly sampled") << ")\n";
    for (auto const& d : r.details) {
      std::cout << "  " << d << "\n";
    }
    if (!r.witness.empty()) {
      std::cout << "  witness: " << r.witness << "\n";
    }
    std::cerr << name << ": " << secs << " s\n";
    if (r.status == CheckStatus::fail) {
      code = falsified;
    } else if (r.status == CheckStatus::hypothesis_unmet && code == ok) {
      code = unmet;
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher commutators and Delta relations of finite algebras"};
  app.require_subcommand(1);
  Common common;

  std::string file;
  std::vector<std::string> tokens;

  auto* congruences = app.add_subcommand("congruences", "Print the congruence lattice");
  congruences->add_option("algebra", file, "Algebra file or built-in name")->required();

  std::string mode = "both";
  auto* commutator = app.add_subcommand("commutator", "Term condition and hypercommutator");
  commutator->add_option("algebra", file, "Algebra file or built-in name")->required();
  commutator->add_option("thetas", tokens, "Congruences: 0, 1, c<i> or a partition '0 2|1 3'")
      ->required();
  auto* tc_flag = commutator->add_flag("--tc", "Term condition commutator only");
  auto* hyper_flag = commutator->add_flag("--hyper", "Hypercommutator only");
  auto* both_flag = commutator->add_flag("--both", "Both; fails if they differ (default)");
  tc_flag->excludes(hyper_flag)->excludes(both_flag);
  hyper_flag->excludes(both_flag);
  add_common(commutator, common);

  std::string via = "direct";
  std::string out;
  std::vector<std::size_t> q;
  auto* delta_cmd = app.add_subcommand("delta", "Write a Delta relation");
  delta_cmd->add_option("algebra", file, "Algebra file or built-in name")->required();
  delta_cmd->add_option("thetas", tokens, "Congruences: 0, 1, c<i> or a partition '0 2|1 3'")
      ->required();
  delta_cmd->add_option("--via", via, "direct or glue")
      ->check(CLI::IsMember({"direct", "glue"}))
      ->capture_default_str();
  delta_cmd->add_option("--q", q, "Cut directions for --via glue (default 0 1)")->delimiter(',');
  delta_cmd->add_option("--out", out, "Output file (stdout when absent)");
  add_common(delta_cmd, common);

  auto* terms = app.add_subcommand("terms", "Search Mal'cev, Day and Kiss terms");
  terms->add_option("algebra", file, "Algebra file or built-in name")->required();
  add_common(terms, common);

  std::vector<std::string> files;
  std::string export_dir;
  auto* corpus_cmd = app.add_subcommand("corpus", "Summarize algebras and fill caches");
  corpus_cmd->add_option("algebras", files, "Algebra files or built-in names (default: all)");
  corpus_cmd->add_option("--export", export_dir, "Write the built-in algebras to a directory");
  add_common(corpus_cmd, common);

  VerifyOptions vopts;
  std::vector<std::string> theorems;
  std::vector<std::string> others;
  std::string nesting = "both";
  auto* verify = app.add_subcommand("verify", "Run property suites");
  verify->add_option("algebra", file, "Algebra file or built-in name")->required();
  verify->add_option("--theorem", theorems, "Result number (e.g. 2.7) or check name");
  verify->add_option("--budget", vopts.budget, "Samples for sampled checks")
      ->capture_default_str();
  verify->add_option("--seed", vopts.seed, "Sampling seed")->capture_default_str();
  verify->add_option("--max-n", vopts.max_n, "Largest dimension")
      ->check(CLI::Range(1, 6))
      ->capture_default_str();
  verify->add_option("--exhaustive-limit", vopts.exhaustive_limit,
                     "Enumerate up to this many candidates before sampling")
      ->capture_default_str();
  verify->add_option("--clone-arity", vopts.clone_arity, "Polymorphism arity bound")
      ->check(CLI::Range(0, 3))
      ->capture_default_str();
  verify->add_option("--nesting", nesting, "suffix, prefix or both")
      ->check(CLI::IsMember({"suffix", "prefix", "both"}))
      ->capture_default_str();
  verify->add_option("--other", others, "Comparison algebra for shared-delta");
  add_common(verify, common);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  auto const t0 = std::chrono::steady_clock::now();
  int code = ok;
  try {
    if (*congruences) {
      code = cmd_congruences(file);
    } else if (*commutator) {
      code = cmd_commutator(file, tokens, *tc_flag ? "tc" : *hyper_flag ? "hyper" : "both",
                            common);
    } else if (*delta_cmd) {
      code = cmd_delta(file, tokens, via, q, out, common);
    } else if (*terms) {
      code = cmd_terms(file, common);
    } else if (*corpus_cmd) {
      code = cmd_corpus(files, export_dir, common);
    } else if (*verify) {
      code = cmd_verify(file, theorems, vopts, others, nesting, common);
    }
  } catch (UsageError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = usage;
  } catch (ParseError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = usage;
  } catch (HypothesisUnmet const& e) {
    std::cerr << "hypothesis unmet: " << e.what() << "\n";
    code = unmet;
  } catch (PreconditionViolation const& e) {
    std::cerr << "hypothesis unmet: " << e.what() << "\n";
    code = unmet;
  } catch (ResourceError const& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    code = resource;
  } catch (InvalidArgument const& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = usage;
  }
  double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "wall time " << secs << " s\n";
  return code;
}
