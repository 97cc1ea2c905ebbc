// One PASS/FAIL line per acceptance criterion. Usage:
//   acceptance <path to hcomm binary> <data directory>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hcomm/clone.hpp"
#include "hcomm/commutator.hpp"
#include "hcomm/congruence.hpp"
#include "hcomm/corpus.hpp"
#include "hcomm/day.hpp"
#include "hcomm/error.hpp"
#include "hcomm/kiss.hpp"
#include "hcomm/relation.hpp"
#include "hcomm/verify.hpp"

using namespace hcomm;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, std::string const& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED " + what);
    }
  }
  void note(std::string s) { notes.push_back(std::move(s)); }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double secs) {
  std::ostringstream o;
  o.precision(3);
  o << secs << " s";
  return o.str();
}

std::vector<corpus::Entry> modular_entries() {
  std::vector<corpus::Entry> out;
  for (auto const& e : corpus::builtin()) {
    if (e.name != "Set2") {
      out.push_back(e);
    }
  }
  return out;
}

// Runs one verifier check and folds it into the outcome.
CheckResult expect_pass(Outcome& out, Verifier& v, std::string const& check) {
  auto const r = v.run(check);
  out.require(r.status == CheckStatus::pass,
              v.algebra().name() + " " + check + ": " + to_string(r.status) + " " + r.witness);
  return r;
}

// Commutator subgroup by closing the set of commutators under products.
Congruence commutator_subgroup_oracle(FiniteAlgebra const& g) {
  auto const& mul = g.operation("mul");
  auto const& inv = g.operation("inv");
  Element const one = g.operation("e")[0];
  auto const m = [&](Element a, Element b) {
    Element args[] = {a, b};
    return mul.apply(args);
  };
  std::set<Element> sub{one};
  for (Element a = 0; a < g.size(); ++a) {
    for (Element b = 0; b < g.size(); ++b) {
      sub.insert(m(m(inv[a], inv[b]), m(a, b)));
    }
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Element> cur(sub.begin(), sub.end());
    for (auto a : cur) {
      for (auto b : cur) {
        grew = sub.insert(m(a, b)).second || grew;
      }
    }
  }
  // Cosets a N.
  std::vector<std::vector<Element>> blocks;
  std::vector<bool> seen(g.size(), false);
  for (Element a = 0; a < g.size(); ++a) {
    if (seen[a]) {
      continue;
    }
    std::vector<Element> block;
    for (auto s : sub) {
      Element const x = m(a, s);
      if (!seen[x]) {
        seen[x] = true;
        block.push_back(x);
      }
    }
    blocks.push_back(block);
  }
  return Congruence::from_blocks(g.size(), blocks);
}

Outcome criterion_1() {
  Outcome out;
  for (auto const& e : corpus::builtin()) {
    auto const t0 = Clock::now();
    bool const malcev = find_malcev_term(e.algebra).has_value();
    auto const day = find_day_terms(e.algebra);
    double const secs = since(t0);
    if (e.is_group) {
      out.require(malcev, e.name + " has no Mal'cev term");
    }
    if (e.is_lattice) {
      out.require(!malcev, e.name + " has a Mal'cev term");
    }
    bool const want_day = e.name != "Set2";
    out.require(day.sequence.has_value() == want_day,
                e.name + (want_day ? " has no Day terms" : " has Day terms"));
    if (day.sequence) {
      out.require(day.sequence->verified, e.name + " Day terms do not verify");
    }
    out.require(secs < 60, e.name + " took " + fmt(secs));
    out.note(e.name + ": malcev " + (malcev ? "yes" : "no") + ", day " +
             (day.sequence ? "k=" + std::to_string(day.sequence->k()) : std::string("none")) +
             ", " + fmt(secs));
  }
  return out;
}

Outcome criterion_2() {
  Outcome out;
  for (auto const& e : corpus::builtin()) {
    if (!e.is_group) {
      continue;
    }
    auto const t0 = Clock::now();
    auto const one = Congruence::total(e.algebra.size());
    std::vector<Congruence> const thetas{one, one};
    auto const tc = tc_commutator(e.algebra, IndexSet{0, 1}, thetas);
    double const secs = since(t0);
    auto const oracle = commutator_subgroup_oracle(e.algebra);
    out.require(tc == oracle, e.name + ": [1,1] = " + tc.to_string() + ", oracle " +
                                  oracle.to_string());
    out.require(secs < 10, e.name + " took " + fmt(secs));
    out.note(e.name + ": [1,1] = " + tc.to_string() + " (" + fmt(secs) + ")");
  }
  return out;
}

// Criteria 3 and 4 share the verifier runs.
std::vector<std::pair<std::string, std::size_t>> tc_instances() {
  std::vector<std::pair<std::string, std::size_t>> out;
  for (auto const& e : modular_entries()) {
    out.emplace_back(e.name, e.name == "Z2" ? 4 : 3);
  }
  return out;
}

Outcome criterion_3() {
  Outcome out;
  auto const t0 = Clock::now();
  for (auto const& [name, max_n] : tc_instances()) {
    VerifyOptions o;
    o.max_n = max_n;
    Verifier v(corpus::builtin_algebra(name), o);
    auto const r = expect_pass(out, v, "tc-hyper");
    out.note(name + ": " + std::to_string(r.checked) + " tuples up to n=" +
             std::to_string(max_n));
  }
  double const secs = since(t0);
  out.require(secs < 1800, "total " + fmt(secs));
  out.note("total " + fmt(secs));
  return out;
}

Outcome criterion_4() {
  Outcome out;
  for (auto const& [name, max_n] : tc_instances()) {
    VerifyOptions o;
    o.max_n = max_n;
    Verifier v(corpus::builtin_algebra(name), o);
    auto const r = expect_pass(out, v, "nested");
    std::string line = name + ":";
    for (auto const& d : r.details) {
      line += " [" + d + "]";
    }
    out.note(line);
  }
  return out;
}

Outcome criterion_5() {
  Outcome out;
  for (std::string name : {"Z2", "Z4", "Z2xZ2", "L2"}) {
    VerifyOptions o;
    o.max_n = 3;
    Verifier v(corpus::builtin_algebra(name), o);
    auto const r = expect_pass(out, v, "glue");
    out.require(r.checked == 3 * v.lattice().size() * v.lattice().size() * v.lattice().size(),
                name + ": expected every tuple and every Q of size 2");
    out.note(name + ": " + std::to_string(r.checked) + " identical serializations");
  }
  return out;
}

Outcome criterion_6() {
  Outcome out;
  for (std::string name : {"Z2", "Z4"}) {
    VerifyOptions o;
    o.max_n = 3;
    Verifier v(corpus::builtin_algebra(name), o);
    for (std::string check : {"rotation", "centrality-transfer", "composition"}) {
      auto const r = expect_pass(out, v, check);
      out.note(name + " " + check + ": " + std::to_string(r.checked) + " checks");
    }
  }
  return out;
}

Outcome criterion_7() {
  Outcome out;
  for (auto const& e : modular_entries()) {
    VerifyOptions o;
    o.max_n = 2;
    Verifier v(e.algebra, o);
    auto const* tower = v.tower();
    out.require(tower != nullptr, e.name + " has no Kiss term");
    if (!tower) {
      continue;
    }
    // The identities, checked here independently of the library predicate.
    std::size_t const n = e.algebra.size();
    bool ids = true;
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        Element a[] = {x, x, y, y};
        Element b[] = {x, y, x, y};
        ids = ids && tower->q2_table().apply(a) == y && tower->q2_table().apply(b) == y;
      }
    }
    out.require(ids, e.name + ": Kiss identities");
    if (n <= 3) {
      expect_pass(out, v, "completion-2");
      auto const r = expect_pass(out, v, "kiss-lemma");
      out.note(e.name + ": q2 = " + tower->q2().to_string() + ", lemma on " +
               std::to_string(r.checked) + " square pairs");
    }
    auto const r2 = expect_pass(out, v, "completion");
    out.require(r2.exhaustive, e.name + ": completion at n=2 was sampled");
    out.note(e.name + " n=2: " + std::to_string(r2.checked) + " qualifying cubes, exhaustive");
  }
  for (std::string name : {"Z4", "Z2xZ2", "B2x2"}) {
    auto const alg = corpus::builtin_algebra(name);
    CommutatorCache cache(alg);
    auto const kiss = find_kiss2(cache);
    out.require(kiss.q2.has_value(), name + " has no Kiss term");
    if (!kiss.q2) {
      continue;
    }
    KissTower const tower(alg, *kiss.q2);
    auto const lat = all_congruences(alg);
    CompletionOptions opts;
    opts.exhaustive_limit = 0;
    opts.samples = 10000;
    opts.seed = 1;
    std::size_t sampled = 0;
    std::size_t tuples = 0;
    for (auto const& a : lat) {
      for (auto const& b : lat) {
        for (auto const& c : lat) {
          std::vector<Congruence> const t{a, b, c};
          auto const rep = check_kiss_completion(cache, tower, t, opts);
          out.require(rep.holds, name + " n=3: " +
                                     (rep.witness ? rep.witness->to_string() : std::string()));
          sampled += rep.checked;
          ++tuples;
        }
      }
    }
    out.require(sampled >= 10000, name + ": only " + std::to_string(sampled) + " samples");
    out.note(name + " n=3: " + std::to_string(sampled) + " sampled qualifying cubes over " +
             std::to_string(tuples) + " tuples, seed 1");
  }
  return out;
}

Outcome criterion_8() {
  Outcome out;
  for (std::string name : {"Z2", "Z3", "L2"}) {
    VerifyOptions o;
    o.max_n = 3;
    Verifier v(corpus::builtin_algebra(name), o);
    auto const r = expect_pass(out, v, "membership");
    out.require(r.exhaustive, name + ": membership was sampled");
    out.note(name + ": " + std::to_string(r.checked) + " cubes compared");
  }
  // Z2, both thetas total: the even-weight squares.
  auto const z2 = corpus::cyclic_group(2);
  CommutatorCache cache(z2);
  KissTower const tower(z2, *find_kiss2(cache).q2);
  std::vector<Congruence> const one{Congruence::total(2), Congruence::total(2)};
  std::size_t passing = 0;
  bool even = true;
  for (std::uint32_t code = 0; code < 16; ++code) {
    std::vector<Element> l = {code & 1, code >> 1 & 1, code >> 2 & 1, code >> 3 & 1};
    bool const in = delta_membership(cache, tower, one, Cube(IndexSet{0, 1}, l));
    passing += in;
    even = even && in == ((l[0] ^ l[1] ^ l[2] ^ l[3]) == 0);
  }
  out.require(passing == 8 && even, "Z2 n=2: " + std::to_string(passing) + " of 16 pass");
  out.note("Z2 n=2 all-1: " + std::to_string(passing) + " of 16 squares, the even-weight ones");
  return out;
}

Outcome criterion_9() {
  Outcome out;
  for (std::string name : {"Z2", "Z3", "L2", "Set2"}) {
    VerifyOptions o;
    o.max_n = 3;
    Verifier v(corpus::builtin_algebra(name), o);
    auto const r = expect_pass(out, v, "shift");
    out.note(name + ": " + std::to_string(r.checked) + " shifted cubes");
  }
  return out;
}

Outcome criterion_10() {
  Outcome out;
  auto const t0 = Clock::now();
  struct Case {
    std::string name;
    std::size_t max_n;
  };
  for (auto const& c : std::vector<Case>{{"Z2", 3}, {"Z3", 2}, {"L2", 3}, {"Z4", 2},
                                         {"Z2xZ2", 2}}) {
    VerifyOptions o;
    o.max_n = c.max_n;
    Verifier v(corpus::builtin_algebra(c.name), o);
    auto const r = expect_pass(out, v, "clone-slice");
    std::string line = c.name + ":";
    for (auto const& d : r.details) {
      line += " [" + d + "]";
    }
    out.note(line);
    // Byte-level comparison of Delta for one instance per algebra.
    auto const& lat = v.lattice();
    std::vector<Congruence> const t(2, lat.back());
    auto const rep = greatest_clone_slice(v.algebra(), *v.day(), t);
    auto const b = slice_algebra("slice", v.algebra().size(), rep.slices);
    out.require(write_relation(delta(b, IndexSet{0, 1}, t), "1 1") ==
                    write_relation(delta(v.algebra(), IndexSet{0, 1}, t), "1 1"),
                c.name + ": slice Delta(1,1) serializes differently");
  }
  struct Pair {
    FiniteAlgebra a;
    FiniteAlgebra b;
  };
  for (auto const& p : std::vector<Pair>{{corpus::cyclic_group(4), corpus::z4_with_negation()},
                                         {corpus::cyclic_group(4), corpus::z4_ring()},
                                         {corpus::cyclic_product(2, 2),
                                          corpus::z2sq_with_ternary_sum()},
                                         {corpus::cyclic_product(2, 2), corpus::z2sq_ring()}}) {
    VerifyOptions o;
    o.max_n = 3;
    o.others = {p.b};
    Verifier v(p.a, o);
    auto const r = expect_pass(out, v, "shared-delta");
    out.require(r.instances == 2, p.b.name() + " was not compared");
    out.note(r.details.back());
  }
  double const secs = since(t0);
  out.require(secs < 600, "total " + fmt(secs));
  out.note("total " + fmt(secs));
  return out;
}

std::string run_capture(std::string const& cmd, int& status) {
  std::string out;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    out.append(buf.data(), got);
  }
  status = pclose(pipe);
  return out;
}

Outcome criterion_11(std::string const& cli, std::string const& data) {
  Outcome out;
  if (cli.empty()) {
    out.require(false, "no CLI path given");
    return out;
  }
  std::string const z4 = data + "/Z4.json";
  std::string const z2 = data + "/Z2.json";
  std::vector<std::string> const commands = {
      cli + " congruences " + z4,
      cli + " congruences S3",
      cli + " commutator S3 1 1 --both",
      cli + " commutator " + z2 + " 1 1 1 --both",
      cli + " delta " + z2 + " 1 1",
      cli + " delta Z4 1 1 c1 --via direct",
      cli + " delta Z4 1 1 c1 --via glue --q 0,1",
      cli + " terms " + z4,
      cli + " terms L2",
      cli + " corpus",
      cli + " verify " + z4 + " --theorem 2.7 --theorem 3.5 --theorem 4.2",
      cli + " verify L2 --budget 500 --seed 7",
      cli + " verify Set2 --theorem 2.7 --theorem 4.1",
  };
  std::string glue_out, direct_out;
  for (auto const& cmd : commands) {
    int s1 = 0, s2 = 0;
    auto const a = run_capture(cmd, s1);
    auto const b = run_capture(cmd, s2);
    out.require(a == b && s1 == s2, "differs between runs: " + cmd);
    out.require(!a.empty(), "no output: " + cmd);
    if (cmd.find("--via glue") != std::string::npos) {
      glue_out = a;
    }
    if (cmd.find("--via direct") != std::string::npos) {
      direct_out = a;
    }
  }
  out.require(glue_out == direct_out, "delta --via glue and --via direct differ");
  out.note(std::to_string(commands.size()) + " commands, two runs each, byte-identical stdout");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string const cli = argc > 1 ? argv[1] : "";
  std::string const data = argc > 2 ? argv[2] : "data";
  std::vector<std::pair<std::string, std::function<Outcome()>>> const criteria = {
      {"Day and Mal'cev term search", criterion_1},
      {"binary commutator against the commutator subgroup", criterion_2},
      {"term condition commutator equals hypercommutator", criterion_3},
      {"nested commutator inequality, every split", criterion_4},
      {"Delta by glue recursion, byte-identical", criterion_5},
      {"rotation, centrality transfer and composition suites", criterion_6},
      {"Kiss term suite", criterion_7},
      {"Delta membership criterion against enumeration", criterion_8},
      {"Delta shifting", criterion_9},
      {"clone slice and shared Delta", criterion_10},
      {"CLI determinism", [&] { return criterion_11(cli, data); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto const t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (std::exception const& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << " ("
              << fmt(since(t0)) << ")\n";
    for (auto const& n : o.notes) {
      std::cout << "    " << n << "\n";
    }
    std::cout.flush();
  }
  return failures == 0 ? 0 : 1;
}
