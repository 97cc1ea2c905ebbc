#include "hcomm/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "hcomm/clone.hpp"
#include "hcomm/error.hpp"
#include "hcomm/recursion.hpp"

namespace hcomm {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::hypothesis_unmet:
      return "hypothesis unmet";
  }
  return "?";
}

struct Verifier::Impl {
  FiniteAlgebra alg;
  VerifyOptions opt;
  CommutatorCache cache;
  std::optional<std::vector<Congruence>> lattice;
  bool day_searched = false;
  std::optional<DaySequence> day;
  bool kiss_searched = false;
  std::optional<KissTower> tower;

  Impl(FiniteAlgebra a, VerifyOptions o)
      : alg(std::move(a)), opt(std::move(o)), cache(alg, opt.closure) {}
};

namespace {

using Labels = std::vector<Element>;
using Tuple = std::vector<Congruence>;

std::vector<Tuple> theta_tuples(std::vector<Congruence> const& lat, std::size_t n) {
  std::vector<Tuple> out;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    Tuple t;
    for (auto p : pick) {
      t.push_back(lat[p]);
    }
    out.push_back(std::move(t));
    std::size_t i = 0;
    while (i < n && ++pick[i] == lat.size()) {
      pick[i++] = 0;
    }
    if (i == n) {
      return out;
    }
  }
}

std::string tuple_name(std::vector<Congruence> const& lat, std::span<Congruence const> t) {
  std::string s;
  for (auto const& c : t) {
    auto const it = std::find(lat.begin(), lat.end(), c);
    if (!s.empty()) {
      s += ' ';
    }
    s += std::to_string(it - lat.begin());
  }
  return s;
}

std::string labels_text(std::span<Element const> l) {
  std::string s;
  for (std::size_t v = 0; v < l.size(); ++v) {
    s += (v ? "," : "") + std::to_string(l[v]);
  }
  return s;
}

void fail(CheckResult& r, std::string witness) {
  if (r.status != CheckStatus::fail) {
    r.status = CheckStatus::fail;
    r.witness = std::move(witness);
  }
}

bool failed(CheckResult const& r) { return r.status == CheckStatus::fail; }

CheckResult unmet(std::string name, std::string why) {
  CheckResult r;
  r.name = std::move(name);
  r.status = CheckStatus::hypothesis_unmet;
  r.witness = std::move(why);
  return r;
}

// Vertex of corner (a, b) in (i, j) coordinates of the square at base h.
Vertex corner(Vertex h, std::size_t pi, std::size_t pj, unsigned a, unsigned b) {
  if (pi < pj) {
    return insert_bit(insert_bit(h, pi, a), pj, b);
  }
  return insert_bit(insert_bit(h, pj, b), pi, a);
}

// All i-lines (supporting ones when `supporting`) are delta-pairs.
bool lines_related(std::span<Element const> l, std::size_t n, std::size_t p,
                   Congruence const& d, bool supporting) {
  Vertex const bases = Vertex{1} << (n - 1);
  for (Vertex g = 0; g < bases; ++g) {
    if (supporting && g == bases - 1) {
      continue;
    }
    if (!d.related(l[insert_bit(g, p, 0)], l[insert_bit(g, p, 1)])) {
      return false;
    }
  }
  return true;
}

std::vector<Labels> member_labels(CubeRelation const& r) {
  std::vector<Labels> out(r.size(), Labels(r.vertex_count()));
  for (std::size_t t = 0; t < r.size(); ++t) {
    r.labels_of(t, out[t]);
  }
  return out;
}

// Tolerances exercised by the rotation and centrality suites.
std::vector<std::pair<std::string, CubeRelation>> candidate_tolerances(CommutatorCache& cache,
                                                                       Tuple const& t,
                                                                       bool compositions) {
  std::vector<std::pair<std::string, CubeRelation>> out;
  auto const& m = cache.m(t);
  out.emplace_back("M", m);
  if (compositions) {
    for (std::size_t l = 0; l < t.size(); ++l) {
      out.emplace_back("M o" + std::to_string(l), directional_compose(m, l));
    }
  }
  out.emplace_back("Delta", cache.delta(t));
  return out;
}

void rotation_suite(DaySequence const& day, std::vector<Congruence> const& lat,
                    CubeRelation const& rel, std::string const& where, CheckResult& r) {
  std::size_t const n = rel.dimension();
  std::size_t const m = rel.vertex_count();
  std::size_t const k1 = day.tables.size();
  std::vector<Labels> rots(k1, Labels(m));
  Vertex const bases = Vertex{1} << (n - 2);
  for (auto const& g : member_labels(rel)) {
    for (std::size_t pi = 0; pi < n && !failed(r); ++pi) {
      for (std::size_t pj = 0; pj < n && !failed(r); ++pj) {
        if (pi == pj) {
          continue;
        }
        std::string const at = where + " cube " + labels_text(g) + " (i,j)=(" +
                               std::to_string(pi) + "," + std::to_string(pj) + ")";
        for (std::size_t e = 0; e < k1; ++e) {
          shift_rotation_labels(day.tables[e], pi, pj, g, rots[e]);
          ++r.checked;
          if (!rel.contains_labels(rots[e])) {
            fail(r, at + ": rotation " + std::to_string(e) + " leaves the relation");
          }
        }
        for (auto const& d : lat) {
          for (Vertex h = 0; h < bases; ++h) {
            auto const v = [&](unsigned a, unsigned b) { return corner(h, pi, pj, a, b); };
            if (!d.related(g[v(0, 0)], g[v(1, 0)])) {
              continue;
            }
            bool const pivot = d.related(g[v(0, 1)], g[v(1, 1)]);
            bool every = true;
            for (auto const& rot : rots) {
              every = every && d.related(rot[v(1, 0)], rot[v(1, 1)]);
            }
            ++r.checked;
            if (pivot != every) {
              fail(r, at + ": pivot transfer fails at square base " + std::to_string(h) +
                          " for " + d.to_string());
            }
          }
          for (bool supporting : {true, false}) {
            if (!lines_related(g, n, pi, d, supporting)) {
              continue;
            }
            for (auto const& rot : rots) {
              ++r.checked;
              if (!lines_related(rot, n, pj, d, supporting)) {
                fail(r, at + ": " + (supporting ? "supporting" : "cross-section") +
                            " lines not transferred for " + d.to_string());
              }
            }
          }
        }
        if (n < 3) {
          continue;
        }
        // Rotating commutes with taking l-faces.
        Labels f0(m / 2), f1(m / 2), r0(m / 2), r1(m / 2);
        for (std::size_t pl = 0; pl < n; ++pl) {
          if (pl == pi || pl == pj) {
            continue;
          }
          std::size_t const fi = pi - (pi > pl);
          std::size_t const fj = pj - (pj > pl);
          for (Vertex w = 0; w < m / 2; ++w) {
            f0[w] = g[insert_bit(w, pl, 0)];
            f1[w] = g[insert_bit(w, pl, 1)];
          }
          for (std::size_t e = 0; e < k1; ++e) {
            shift_rotation_labels(day.tables[e], fi, fj, f0, r0);
            shift_rotation_labels(day.tables[e], fi, fj, f1, r1);
            bool same = true;
            for (Vertex w = 0; w < m / 2; ++w) {
              same = same && rots[e][insert_bit(w, pl, 0)] == r0[w] &&
                     rots[e][insert_bit(w, pl, 1)] == r1[w];
            }
            ++r.checked;
            if (!same) {
              fail(r, at + ": rotation " + std::to_string(e) + " does not commute with " +
                          std::to_string(pl) + "-faces");
            }
          }
        }
      }
    }
    if (failed(r)) {
      return;
    }
    // Paths of rotations rot_{t,t+1}.
    std::function<void(Labels const&, std::size_t)> walk = [&](Labels const& c, std::size_t len) {
      ++r.checked;
      if (!rel.contains_labels(c)) {
        fail(r, where + " cube " + labels_text(g) + ": a rotation path of length " +
                    std::to_string(len) + " leaves the relation");
        return;
      }
      Vertex const low = (Vertex{1} << len) - 1;
      for (Vertex b = 0; b < (Vertex{1} << (n - 1)); ++b) {
        if ((b & low) != low && c[insert_bit(b, len, 0)] != c[insert_bit(b, len, 1)]) {
          fail(r, where + " cube " + labels_text(g) + ": a rotation path of length " +
                      std::to_string(len) + " has a nonconstant cross-section line");
          return;
        }
      }
      if (len + 1 >= n) {
        return;
      }
      Labels next(m);
      for (std::size_t e = 0; e < k1 && !failed(r); ++e) {
        shift_rotation_labels(day.tables[e], len, len + 1, c, next);
        walk(next, len + 1);
      }
    };
    walk(g, 0);
    if (failed(r)) {
      return;
    }
  }
}

CheckResult check_rotation(Verifier& v) {
  auto const* day = v.day();
  if (!day) {
    return unmet("rotation", "no Day terms within the search caps");
  }
  CheckResult r;
  r.name = "rotation";
  auto const& lat = v.lattice();
  for (std::size_t n = 2; n <= v.options().max_n; ++n) {
    std::size_t before = r.checked;
    for (auto const& t : theta_tuples(lat, n)) {
      ++r.instances;
      for (auto const& [label, rel] : candidate_tolerances(v.cache(), t, false)) {
        rotation_suite(*day, lat, rel, label + "(" + tuple_name(lat, t) + ")", r);
        if (failed(r)) {
          return r;
        }
      }
    }
    r.details.push_back("n=" + std::to_string(n) + ": " + std::to_string(r.checked - before) +
                        " implications");
  }
  return r;
}

CheckResult check_centrality_transfer(Verifier& v) {
  if (!v.day()) {
    return unmet("centrality-transfer", "no Day terms within the search caps");
  }
  CheckResult r;
  r.name = "centrality-transfer";
  auto const& lat = v.lattice();
  for (std::size_t n = 2; n <= v.options().max_n; ++n) {
    std::size_t central = 0;
    std::size_t total = 0;
    for (auto const& t : theta_tuples(lat, n)) {
      ++r.instances;
      for (auto const& [label, rel] : candidate_tolerances(v.cache(), t, true)) {
        for (auto const& d : lat) {
          auto const rep = has_centrality(rel, d);
          ++r.checked;
          ++total;
          bool const any = std::find(rep.passed.begin(), rep.passed.end(), true) != rep.passed.end();
          central += rep.all_passed();
          if (any && !rep.all_passed()) {
            fail(r, label + "(" + tuple_name(lat, t) + ") is central for " + d.to_string() +
                        " in some but not all directions");
            return r;
          }
        }
      }
    }
    r.details.push_back("n=" + std::to_string(n) + ": " + std::to_string(central) + " of " +
                        std::to_string(total) + " (relation, delta) pairs central");
  }
  return r;
}

CheckResult check_composition(Verifier& v) {
  if (!v.day()) {
    return unmet("composition", "no Day terms within the search caps");
  }
  CheckResult r;
  r.name = "composition";
  auto const& lat = v.lattice();
  auto const& alg = v.algebra();
  for (std::size_t n = 2; n <= v.options().max_n; ++n) {
    std::size_t applied = 0;
    for (auto const& t : theta_tuples(lat, n)) {
      ++r.instances;
      for (auto const& [label, rel] : candidate_tolerances(v.cache(), t, true)) {
        for (auto const& d : lat) {
          if (!has_centrality(rel, d).all_passed()) {
            continue;
          }
          for (std::size_t l = 0; l < n; ++l) {
            auto const comp = directional_compose(rel, l);
            ++r.checked;
            ++applied;
            if (!is_n_tolerance(alg, comp) || !has_centrality(comp, d).all_passed()) {
              fail(r, label + "(" + tuple_name(lat, t) + ") composed in direction " +
                          std::to_string(l) + " loses " + d.to_string() + "-centrality");
              return r;
            }
          }
        }
      }
    }
    r.details.push_back("n=" + std::to_string(n) + ": " + std::to_string(applied) +
                        " compositions of central tolerances");
  }
  return r;
}

CheckResult check_tc_hyper(Verifier& v) {
  auto const* day = v.day();
  if (!day) {
    return unmet("tc-hyper", "no Day terms within the search caps");
  }
  CheckResult r;
  r.name = "tc-hyper";
  auto const& lat = v.lattice();
  for (std::size_t n = 2; n <= v.options().max_n; ++n) {
    std::size_t nonzero = 0;
    std::size_t count = 0;
    for (auto const& t : theta_tuples(lat, n)) {
      ++r.instances;
      ++r.checked;
      ++count;
      auto const cmp = check_tc_equals_hyper(v.cache(), *day, t);
      nonzero += !cmp.tc.is_identity();
      if (!cmp.equal) {
        fail(r, "thetas " + tuple_name(lat, t) + ": tc " + cmp.tc.to_string() + ", hyper " +
                    cmp.hyper.to_string());
        return r;
      }
    }
    r.details.push_back("n=" + std::to_string(n) + ": " + std::to_string(count) + " tuples, " +
                        std::to_string(nonzero) + " with a nonzero commutator");
  }
  return r;
}

CheckResult check_nested(Verifier& v) {
  auto const* day = v.day();
  if (!day) {
    return unmet("nested", "no Day terms within the search caps");
  }
  CheckResult r;
  r.name = "nested";
  auto const& lat = v.lattice();
  for (std::size_t n = 3; n <= v.options().max_n; ++n) {
    auto const tuples = theta_tuples(lat, n);
    r.instances += tuples.size();
    for (auto shape : v.options().nesting) {
      std::size_t const lo = shape == NestingShape::suffix ? 1 : 2;
      std::size_t const hi = shape == NestingShape::suffix ? n - 2 : n - 1;
      for (std::size_t split = lo; split <= hi; ++split) {
        std::size_t strict = 0;
        for (auto const& t : tuples) {
          auto const rep = check_hc8(v.cache(), *day, t, split, shape);
          ++r.checked;
          strict += rep.nested != rep.flat;
          if (!rep.holds) {
            fail(r, std::string(shape == NestingShape::suffix ? "suffix" : "prefix") +
                        " split " + std::to_string(split) + ", thetas " + tuple_name(lat, t) +
                        ": nested " + rep.nested.to_string() + ", flat " + rep.flat.to_string());
            return r;
          }
        }
        r.details.push_back("n=" + std::to_string(n) + " " +
                            (shape == NestingShape::suffix ? "suffix" : "prefix") + " split " +
                            std::to_string(split) + ": holds on " +
                            std::to_string(tuples.size()) + " tuples, strict on " +
                            std::to_string(strict));
      }
    }
  }
  if (r.details.empty()) {
    r.details.push_back("needs max_n >= 3");
  }
  return r;
}

// Tolerances transitive in one direction (not yet known to be congruences).
std::vector<std::pair<std::string, CubeRelation>> almost_candidates(CommutatorCache& cache,
                                                                    Tuple const& t) {
  std::vector<std::pair<std::string, CubeRelation>> out;
  auto const& m = cache.m(t);
  out.emplace_back("M", m);
  for (std::size_t l = 0; l < t.size(); ++l) {
    out.emplace_back("M o" + std::to_string(l), directional_compose(m, l));
  }
  return out;
}

CheckResult check_almost_2(Verifier& v) {
  if (!v.day()) {
    return unmet("almost-2", "no Day terms within the search caps");
  }
  CheckResult r;
  r.name = "almost-2";
  auto const& lat = v.lattice();
  auto const& alg = v.algebra();
  std::size_t applicable = 0;
  std::size_t skipped = 0;
  for (auto const& t : theta_tuples(lat, 2)) {
    ++r.instances;
    for (auto const& [label, rel] : almost_candidates(v.cache(), t)) {
      bool hyp = false;
      for (std::size_t k = 0; k < 2 && !hyp; ++k) {
        hyp = is_transitive(rel, k) && is_n_congruence(alg, face_relation(rel, k, 0));
      }
      if (!hyp || !is_n_tolerance(alg, rel)) {
        ++skipped;
        continue;
      }
      ++applicable;
      ++r.checked;
      if (!is_n_congruence(alg, rel)) {
        fail(r, label + "(" + tuple_name(lat, t) + ") meets the hypotheses but is not transitive");
        return r;
      }
    }
  }
  r.details.push_back(std::to_string(applicable) + " tolerances meet the hypotheses, " +
                      std::to_string(skipped) + " do not");
  return r;
}

CheckResult check_almost_n(Verifier& v) {
  if (!v.day()) {
    return unmet("almost-n", "no Day terms within the search caps");
  }
  CheckResult r;
  r.name = "almost-n";
  auto const& lat = v.lattice();
  auto const& alg = v.algebra();
  for (std::size_t n = 2; n <= v.options().max_n; ++n) {
    std::size_t applicable = 0;
    std::size_t skipped = 0;
    for (auto const& t : theta_tuples(lat, n)) {
      ++r.instances;
      for (auto const& [label, rel] : almost_candidates(v.cache(), t)) {
        bool promoted = false;
        try {
          promoted = promote_almost_congruence(alg, rel);
        } catch (PreconditionViolation const&) {
          ++skipped;
          continue;
        }
        ++applicable;
        ++r.checked;
        if (!promoted) {
          fail(r, label + "(" + tuple_name(lat, t) + ") meets the hypotheses but is not an " +
                      std::to_string(n) + "-congruence");
          return r;
        }
      }
    }
    r.details.push_back("n=" + std::to_string(n) + ": " + std::to_string(applicable) +
                        " tolerances meet the hypotheses, " + std::to_string(skipped) +
                        " do not");
  }
  return r;
}

CheckResult check_glue(Verifier& v) {
  if (!v.day()) {
    return unmet("glue", "no Day terms within the search caps");
  }
  CheckResult r;
  r.name = "glue";
  auto const& lat = v.lattice();
  auto const& alg = v.algebra();
  for (std::size_t n = 3; n <= v.options().max_n; ++n) {
    IndexSet const shape = IndexSet::range(n);
    std::size_t compared = 0;
    for (auto const& t : theta_tuples(lat, n)) {
      ++r.instances;
      std::string const names = tuple_name(lat, t);
      std::string const direct = write_relation(v.cache().delta(t), names);
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::size_t const q_size = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (q_size < 2 || q_size >= n) {
          continue;
        }
        std::vector<std::size_t> q;
        for (std::size_t p = 0; p < n; ++p) {
          if (mask >> p & 1) {
            q.push_back(p);
          }
        }
        IndexSet const qs(q);
        auto const glued = delta_via_glue_recursion(alg, shape, t, qs, v.options().closure);
        ++r.checked;
        ++compared;
        if (write_relation(glued, names) != direct) {
          fail(r, "thetas " + names + ", Q " + qs.to_string() + ": " +
                      std::to_string(glued.size()) + " members against " +
                      std::to_string(v.cache().delta(t).size()));
          return r;
        }
      }
    }
    r.details.push_back("n=" + std::to_string(n) + ": " + std::to_string(compared) +
                        " serializations identical");
  }
  if (r.details.empty()) {
    r.details.push_back("needs max_n >= 3");
  }
  return r;
}

CheckResult kiss_unmet(std::string name, Verifier& v) {
  if (!v.day()) {
    return unmet(std::move(name), "no Day terms within the search caps");
  }
  return unmet(std::move(name), "no Kiss term within the search caps");
}

// (2)-dimensional squares drawn from rect(alpha, beta) for every pair.
template <class F>
void for_each_rect(std::vector<Congruence> const& lat, std::size_t size, F&& body) {
  for (auto const& a : lat) {
    for (auto const& b : lat) {
      body(a, b, rect(size, a, b));
    }
  }
}

CheckResult check_completion_2(Verifier& v) {
  auto const* tower = v.tower();
  if (!tower) {
    return kiss_unmet("completion-2", v);
  }
  CheckResult r;
  r.name = "completion-2";
  auto const& lat = v.lattice();
  if (!kiss_identities_hold(tower->q2_table())) {
    fail(r, "q2(x,x,y,y) = q2(x,y,x,y) = y fails for " + tower->q2().to_string());
    return r;
  }
  r.details.push_back("identities hold on all " + std::to_string(v.algebra().size() *
                                                                 v.algebra().size()) +
                      " pairs");
  ++r.checked;
  for_each_rect(lat, v.algebra().size(), [&](auto const& a, auto const& b, auto const& sq) {
    if (failed(r)) {
      return;
    }
    ++r.instances;
    Tuple const t{a, b};
    auto const& d = v.cache().delta(t);
    for (auto const& l : member_labels(sq)) {
      Labels c = l;
      c[3] = tower->evaluate(l);
      ++r.checked;
      if (!d.contains_labels(c)) {
        fail(r, "square " + labels_text(l) + " of rect(" + a.to_string() + ", " +
                    b.to_string() + ") completes outside Delta");
        return;
      }
    }
  });
  return r;
}

CheckResult check_kiss_lemma(Verifier& v) {
  auto const* tower = v.tower();
  if (!tower) {
    return kiss_unmet("kiss-lemma", v);
  }
  CheckResult r;
  r.name = "kiss-lemma";
  auto const& lat = v.lattice();
  auto const& q2 = tower->q2_table();
  for_each_rect(lat, v.algebra().size(), [&](auto const& a, auto const& b, auto const& sq) {
    if (failed(r)) {
      return;
    }
    ++r.instances;
    Tuple const t{a, b};
    auto const& d = v.cache().delta(t);
    // Delta members grouped by their (x, u) corners.
    std::map<std::pair<Element, Element>, std::vector<Labels>> by_left;
    for (auto const& l : member_labels(d)) {
      by_left[{l[0], l[2]}].push_back(l);
    }
    for (auto const& l : member_labels(sq)) {
      for (auto const& w : by_left[{l[0], l[2]}]) {
        Element args[] = {w[1], l[1], w[3], l[3]};
        Labels const c{l[0], l[1], l[2], q2.apply(args)};
        ++r.checked;
        if (!d.contains_labels(c)) {
          fail(r, "rect square " + labels_text(l) + " with Delta square " + labels_text(w) +
                      " for (" + a.to_string() + ", " + b.to_string() + ")");
          return;
        }
      }
    }
  });
  return r;
}

CheckResult check_completion(Verifier& v) {
  auto const* tower = v.tower();
  if (!tower) {
    return kiss_unmet("completion", v);
  }
  CheckResult r;
  r.name = "completion";
  auto const& lat = v.lattice();
  CompletionOptions opts;
  opts.exhaustive_limit = v.options().exhaustive_limit;
  opts.samples = v.options().budget;
  opts.seed = v.options().seed;
  for (std::size_t n = 2; n <= v.options().max_n; ++n) {
    std::size_t before = r.checked;
    bool exhaustive = true;
    for (auto const& t : theta_tuples(lat, n)) {
      ++r.instances;
      auto const rep = check_kiss_completion(v.cache(), *tower, t, opts);
      r.checked += rep.checked;
      exhaustive = exhaustive && rep.exhaustive;
      if (!rep.holds) {
        fail(r, "thetas " + tuple_name(lat, t) + ": " +
                    (rep.witness ? rep.witness->to_string() : std::string("?")) +
                    " completes outside Delta");
        return r;
      }
    }
    r.exhaustive = r.exhaustive && exhaustive;
    r.details.push_back("n=" + std::to_string(n) + ": " + std::to_string(r.checked - before) +
                        " qualifying cubes" + (exhaustive ? "" : " (sampled)"));
  }
  return r;
}

CheckResult check_shift(Verifier& v) {
  CheckResult r;
  r.name = "shift";
  auto const& lat = v.lattice();
  std::size_t const size = v.algebra().size();
  for (std::size_t n = 1; n <= v.options().max_n; ++n) {
    IndexSet const shape = IndexSet::range(n);
    std::size_t applied = 0;
    for (auto const& t : theta_tuples(lat, n)) {
      ++r.instances;
      auto const& d = v.cache().delta(t);
      for (auto const& c : d.members()) {
        for (Element q = 0; q < size; ++q) {
          if (!d.contains(commutator_cube(shape, c.one_label(), q))) {
            continue;
          }
          ++r.checked;
          ++applied;
          auto const shifted = delta_shift(d, c, q);
          if (!d.contains(shifted)) {
            fail(r, "thetas " + tuple_name(lat, t) + ": " + c.to_string() + " shifted to " +
                        std::to_string(q) + " leaves Delta");
            return r;
          }
        }
      }
    }
    r.details.push_back("n=" + std::to_string(n) + ": " + std::to_string(applied) + " shifts");
  }
  return r;
}

CheckResult check_membership(Verifier& v) {
  auto const* tower = v.tower();
  if (!tower) {
    return kiss_unmet("membership", v);
  }
  CheckResult r;
  r.name = "membership";
  auto const& lat = v.lattice();
  std::size_t const size = v.algebra().size();
  for (std::size_t n = 2; n <= v.options().max_n; ++n) {
    IndexSet const shape = IndexSet::range(n);
    CubeCodec const codec(size, std::size_t{1} << n);
    bool const all = codec.code_space() <= v.options().exhaustive_limit;
    r.exhaustive = r.exhaustive && all;
    std::size_t before = r.checked;
    std::size_t members = 0;
    std::mt19937_64 rng(v.options().seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, codec.code_space() - 1);
    for (auto const& t : theta_tuples(lat, n)) {
      ++r.instances;
      auto const& d = v.cache().delta(t);
      auto const test = [&](std::uint64_t code) {
        Labels l(codec.vertex_count());
        codec.decode(code, l);
        bool const direct = d.contains_code(code);
        bool const via = delta_membership(v.cache(), *tower, t, Cube(shape, l));
        ++r.checked;
        members += direct;
        if (direct != via) {
          fail(r, "thetas " + tuple_name(lat, t) + ": cube " + labels_text(l) +
                      (direct ? " is in Delta but fails the criterion"
                              : " passes the criterion outside Delta"));
        }
        return !failed(r);
      };
      if (all) {
        for (std::uint64_t code = 0; code < codec.code_space(); ++code) {
          if (!test(code)) {
            return r;
          }
        }
        continue;
      }
      for (auto code : d.codes()) {
        if (!test(code)) {
          return r;
        }
      }
      for (std::size_t s = 0; s < v.options().budget; ++s) {
        if (!test(pick(rng))) {
          return r;
        }
      }
    }
    r.details.push_back("n=" + std::to_string(n) + ": " + std::to_string(r.checked - before) +
                        " cubes, " + std::to_string(members) + " in Delta" +
                        (all ? "" : " (members plus sampled cubes)"));
  }
  return r;
}

CheckResult check_shared_delta_suite(Verifier& v) {
  auto const* day = v.day();
  if (!day) {
    return unmet("shared-delta", "no Day terms within the search caps");
  }
  CheckResult r;
  r.name = "shared-delta";
  auto const& alg = v.algebra();
  auto const& lat = v.lattice();
  std::vector<FiniteAlgebra> bs{alg};
  bs.insert(bs.end(), v.options().others.begin(), v.options().others.end());
  std::size_t usable = 0;
  for (auto const& b : bs) {
    if (b.size() != alg.size()) {
      r.details.push_back(b.name() + ": different universe, skipped");
      continue;
    }
    std::vector<Congruence> shared;
    for (auto const& c : lat) {
      if (is_compatible(b, c)) {
        shared.push_back(c);
      }
    }
    std::size_t equal = 0;
    std::size_t count = 0;
    try {
      for (std::size_t n = 2; n <= std::min<std::size_t>(v.options().max_n, 3); ++n) {
        for (auto const& t : theta_tuples(shared, n)) {
          auto const rep = check_shared_delta(alg, b, *day, t);
          ++r.checked;
          ++count;
          equal += rep.deltas_equal;
          if (!rep.biconditional()) {
            fail(r, b.name() + ", thetas " + tuple_name(lat, t) + ": commutators " +
                        (rep.commutators_equal ? "agree" : "differ") + ", Deltas " +
                        (rep.deltas_equal ? "agree" : "differ"));
            return r;
          }
        }
      }
    } catch (HypothesisUnmet const& e) {
      r.details.push_back(b.name() + ": " + e.what());
      continue;
    }
    ++usable;
    ++r.instances;
    r.details.push_back(b.name() + ": " + std::to_string(count) + " tuples over " +
                        std::to_string(shared.size()) + " shared congruences, Deltas equal on " +
                        std::to_string(equal));
  }
  if (usable == 0) {
    r.status = CheckStatus::hypothesis_unmet;
    r.witness = "no comparison algebra shares the Day terms";
  }
  return r;
}

CheckResult check_clone_slice(Verifier& v) {
  auto const* day = v.day();
  if (!day) {
    return unmet("clone-slice", "no Day terms within the search caps");
  }
  CheckResult r;
  r.name = "clone-slice";
  auto const& lat = v.lattice();
  auto const& alg = v.algebra();
  std::size_t const top = std::min<std::size_t>(v.options().max_n, alg.size() == 2 ? 3 : 2);
  for (std::size_t n = 2; n <= top; ++n) {
    std::size_t before = r.checked;
    std::vector<std::string> over_cap;
    for (auto const& t : theta_tuples(lat, n)) {
      ++r.instances;
      std::optional<CloneSliceReport> got;
      try {
        got = greatest_clone_slice(alg, *day, t, v.options().clone_arity);
      } catch (ResourceError const&) {
        over_cap.push_back(tuple_name(lat, t));
        r.exhaustive = false;
        continue;
      }
      ++r.checked;
      auto const& rep = *got;
      if (!rep.all_passed()) {
        std::string what = !rep.day_terms_preserve           ? "a Day term is not a polymorphism"
                           : !rep.basic_operations_included ? "a basic operation is missing"
                           : !rep.thetas_compatible         ? "a theta is not compatible"
                           : !rep.delta_reproduced          ? "Delta is not reproduced"
                                                            : "a commutator differs";
        fail(r, "thetas " + tuple_name(lat, t) + ": " + what);
        return r;
      }
    }
    std::string line = "n=" + std::to_string(n) + ": " + std::to_string(r.checked - before) +
                       " tuples, arity <= " + std::to_string(v.options().clone_arity);
    if (!over_cap.empty()) {
      line += "; polymorphism cap exceeded for";
      for (auto const& name : over_cap) {
        line += " (" + name + ")";
      }
    }
    r.details.push_back(line);
  }
  if (r.checked == 0 && !r.exhaustive) {
    throw ResourceError("polymorphism cap exceeded on every theta tuple; lower the arity bound");
  }
  return r;
}

using CheckFn = CheckResult (*)(Verifier&);

std::vector<std::pair<std::string, CheckFn>> const& registry() {
  static std::vector<std::pair<std::string, CheckFn>> const table = {
      {"rotation", check_rotation},
      {"centrality-transfer", check_centrality_transfer},
      {"composition", check_composition},
      {"tc-hyper", check_tc_hyper},
      {"nested", check_nested},
      {"almost-2", check_almost_2},
      {"almost-n", check_almost_n},
      {"glue", check_glue},
      {"completion-2", check_completion_2},
      {"kiss-lemma", check_kiss_lemma},
      {"completion", check_completion},
      {"shift", check_shift},
      {"membership", check_membership},
      {"shared-delta", check_shared_delta_suite},
      {"clone-slice", check_clone_slice},
  };
  return table;
}

}  // namespace

Verifier::Verifier(FiniteAlgebra alg, VerifyOptions options)
    : impl_(std::make_unique<Impl>(std::move(alg), std::move(options))) {}

Verifier::~Verifier() = default;

std::vector<std::string> const& Verifier::check_names() {
  static std::vector<std::string> const names = [] {
    std::vector<std::string> out;
    for (auto const& [name, fn] : registry()) {
      out.push_back(name);
    }
    return out;
  }();
  return names;
}

CheckResult Verifier::run(std::string const& name) {
  for (auto const& [n, fn] : registry()) {
    if (n == name) {
      return fn(*this);
    }
  }
  throw InvalidArgument("unknown check '" + name + "'");
}

FiniteAlgebra const& Verifier::algebra() const { return impl_->alg; }

VerifyOptions const& Verifier::options() const { return impl_->opt; }

std::vector<Congruence> const& Verifier::lattice() {
  if (!impl_->lattice) {
    impl_->lattice = all_congruences(impl_->alg);
  }
  return *impl_->lattice;
}

DaySequence const* Verifier::day() {
  if (!impl_->day_searched) {
    impl_->day_searched = true;
    if (impl_->opt.day_terms) {
      bool known = true;
      for (auto const& t : *impl_->opt.day_terms) {
        known = known && t.variable_bound() <= 4;
      }
      if (known) {
        try {
          auto seq = make_day_sequence(impl_->alg, *impl_->opt.day_terms);
          if (seq.verified) {
            impl_->day = std::move(seq);
          }
        } catch (InvalidArgument const&) {
        }
      }
    }
    if (!impl_->day) {
      impl_->day = find_day_terms(impl_->alg, impl_->opt.caps).sequence;
    }
  }
  return impl_->day ? &*impl_->day : nullptr;
}

KissTower const* Verifier::tower() {
  if (!impl_->kiss_searched) {
    impl_->kiss_searched = true;
    if (day() && impl_->opt.kiss_term && impl_->opt.kiss_term->variable_bound() <= 4) {
      try {
        auto const t = term_table(impl_->alg, *impl_->opt.kiss_term, 4);
        if (kiss_identities_hold(t) && !kiss_property_violation(impl_->cache, t)) {
          impl_->tower.emplace(impl_->alg, *impl_->opt.kiss_term);
        }
      } catch (InvalidArgument const&) {
      }
    }
    if (day() && !impl_->tower) {
      auto const res = find_kiss2(impl_->cache, impl_->opt.caps);
      if (res.q2) {
        impl_->tower.emplace(impl_->alg, *res.q2);
      }
    }
  }
  return impl_->tower ? &*impl_->tower : nullptr;
}

CommutatorCache& Verifier::cache() { return impl_->cache; }

}  // namespace hcomm
