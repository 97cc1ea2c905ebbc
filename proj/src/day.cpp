#include "hcomm/day.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "hcomm/error.hpp"

namespace hcomm {

namespace {

std::string pattern_text(ArgumentPattern const& p) {
  static char const* const names[] = {"x", "y", "z", "w"};
  std::string out = "(";
  for (std::size_t i = 0; i < 4; ++i) {
    out += (i ? "," : "") + std::string(p[i] < 4 ? names[p[i]] : "?");
  }
  return out + ")";
}

std::size_t variables_in(ArgumentPattern const& p) {
  return *std::max_element(p.begin(), p.end()) + 1;
}

// The values of m on all assignments of the pattern's variables.
std::vector<Element> signature(OperationTable const& m, ArgumentPattern const& p) {
  std::size_t const n = m.size();
  std::size_t const v = variables_in(p);
  std::size_t const count = checked_pow(n, v);
  std::vector<Element> vars(v);
  std::vector<Element> args(4);
  std::vector<Element> out(count);
  for (std::size_t t = 0; t < count; ++t) {
    OperationTable::unflatten(t, n, vars);
    for (std::size_t c = 0; c < 4; ++c) {
      args[c] = vars[p[c]];
    }
    out[t] = m[OperationTable::flat_index(args, n)];
  }
  return out;
}

bool satisfies_fixed(OperationTable const& m, ArgumentPattern const& p, std::size_t target) {
  std::size_t const n = m.size();
  std::size_t const v = std::max(variables_in(p), target + 1);
  std::size_t const count = checked_pow(n, v);
  std::vector<Element> vars(v);
  std::vector<Element> args(4);
  for (std::size_t t = 0; t < count; ++t) {
    OperationTable::unflatten(t, n, vars);
    for (std::size_t c = 0; c < 4; ++c) {
      args[c] = vars[p[c]];
    }
    if (m[OperationTable::flat_index(args, n)] != vars[target]) {
      return false;
    }
  }
  return true;
}

OperationTable projection(std::size_t n, std::size_t i) {
  std::vector<Element> t(n * n * n * n);
  std::vector<Element> args(4);
  for (std::size_t r = 0; r < t.size(); ++r) {
    OperationTable::unflatten(r, n, args);
    t[r] = args[i];
  }
  return OperationTable("x" + std::to_string(i), 4, n, std::move(t));
}

}  // namespace

std::string DayScheme::describe() const {
  std::string out = "m_0 = x" + std::to_string(first) + "; m_k = x" + std::to_string(last);
  for (auto const& [p, t] : fixed) {
    out += "; m_i" + pattern_text(p) + " = x" + std::to_string(t);
  }
  out += "; m_i" + pattern_text(even_link) + " = m_i+1" + pattern_text(even_link) + " (i even)";
  out += "; m_i" + pattern_text(odd_link) + " = m_i+1" + pattern_text(odd_link) + " (i odd)";
  return out;
}

DayScheme standard_day_scheme() {
  DayScheme s;
  s.first = 0;
  s.last = 3;
  s.fixed = {{{0, 1, 1, 0}, 0}};
  s.even_link = {0, 0, 1, 1};
  s.odd_link = {0, 1, 1, 2};
  return s;
}

bool satisfies_day_scheme(std::span<OperationTable const> m, DayScheme const& scheme) {
  if (m.empty()) {
    return false;
  }
  std::size_t const n = m[0].size();
  for (auto const& t : m) {
    if (t.arity() != 4 || t.size() != n) {
      return false;
    }
  }
  if (!m.front().same_function(projection(n, scheme.first)) ||
      !m.back().same_function(projection(n, scheme.last))) {
    return false;
  }
  for (auto const& t : m) {
    for (auto const& [p, target] : scheme.fixed) {
      if (!satisfies_fixed(t, p, target)) {
        return false;
      }
    }
  }
  for (std::size_t i = 0; i + 1 < m.size(); ++i) {
    auto const& link = i % 2 == 0 ? scheme.even_link : scheme.odd_link;
    if (signature(m[i], link) != signature(m[i + 1], link)) {
      return false;
    }
  }
  return true;
}

DaySequence make_day_sequence(FiniteAlgebra const& alg, std::vector<Term> terms,
                              DayScheme const& scheme) {
  DaySequence out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    out.tables.push_back(term_table(alg, terms[i], 4, "m" + std::to_string(i)));
  }
  out.terms = std::move(terms);
  out.verified = satisfies_day_scheme(out.tables, scheme);
  return out;
}

std::optional<TermOperation> find_malcev_term(FiniteAlgebra const& alg, TermSearchCaps caps) {
  std::size_t const n = alg.size();
  std::optional<TermOperation> found;
  for_each_term_operation(alg, 3, caps, [&](TermOperation const& op) {
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        Element a[] = {x, x, y};
        Element b[] = {y, x, x};
        if (op.table.apply(a) != y || op.table.apply(b) != y) {
          return true;
        }
      }
    }
    found = op;
    return false;
  });
  return found;
}

DaySearchResult find_day_terms(FiniteAlgebra const& alg, TermSearchCaps caps,
                               DayScheme const& scheme) {
  DaySearchResult result;
  if (auto p = find_malcev_term(alg, caps)) {
    std::vector<Term> terms{
        Term::variable(0),
        p->term.substitute(std::vector{Term::variable(1), Term::variable(2), Term::variable(3)}),
        Term::variable(3)};
    auto seq = make_day_sequence(alg, std::move(terms), scheme);
    if (seq.verified) {
      result.malcev = p->term;
      result.sequence = std::move(seq);
      return result;
    }
  }

  // Candidate nodes: 4-ary term operations meeting every fixed identity.
  std::vector<TermOperation> nodes;
  result.enumeration = for_each_term_operation(alg, 4, caps, [&](TermOperation const& op) {
    for (auto const& [p, target] : scheme.fixed) {
      if (!satisfies_fixed(op.table, p, target)) {
        return true;
      }
    }
    nodes.push_back(op);
    return true;
  });

  std::size_t const n = alg.size();
  auto const first = projection(n, scheme.first);
  auto const last = projection(n, scheme.last);
  std::size_t start = nodes.size();
  std::size_t goal = nodes.size();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (start == nodes.size() && nodes[i].table.same_function(first)) {
      start = i;
    }
    if (goal == nodes.size() && nodes[i].table.same_function(last)) {
      goal = i;
    }
  }
  if (start == nodes.size() || goal == nodes.size()) {
    return result;
  }

  // Neighbours share a link signature; index nodes by signature per parity.
  std::array<std::vector<std::vector<Element>>, 2> sig;
  std::array<std::map<std::vector<Element>, std::vector<std::size_t>>, 2> by_sig;
  for (std::size_t parity = 0; parity < 2; ++parity) {
    auto const& link = parity == 0 ? scheme.even_link : scheme.odd_link;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      sig[parity].push_back(signature(nodes[i].table, link));
      by_sig[parity][sig[parity].back()].push_back(i);
    }
  }

  // Breadth-first search over (node, parity of its index); the first time
  // the goal is entered gives a shortest sequence.
  std::size_t const states = 2 * nodes.size();
  std::vector<std::size_t> parent(states, states);
  std::vector<bool> seen(states, false);
  std::vector<std::size_t> queue{2 * start};
  seen[2 * start] = true;
  std::size_t reached = states;
  for (std::size_t head = 0; head < queue.size() && reached == states; ++head) {
    std::size_t const s = queue[head];
    std::size_t const node = s / 2;
    std::size_t const parity = s % 2;
    for (auto next : by_sig[parity][sig[parity][node]]) {
      std::size_t const t = 2 * next + (1 - parity);
      if (seen[t]) {
        continue;
      }
      seen[t] = true;
      parent[t] = s;
      if (next == goal) {
        reached = t;
        break;
      }
      queue.push_back(t);
    }
  }
  if (reached == states) {
    return result;
  }
  std::vector<Term> terms;
  for (std::size_t s = reached; s != states; s = parent[s]) {
    terms.push_back(nodes[s / 2].term);
  }
  std::reverse(terms.begin(), terms.end());
  auto seq = make_day_sequence(alg, std::move(terms), scheme);
  if (seq.verified) {
    result.sequence = std::move(seq);
  }
  return result;
}

ShiftingReport shifting_lemma_check(FiniteAlgebra const& alg, std::size_t sample_cap,
                                    std::uint64_t seed) {
  auto const lat = all_congruences(alg, 4096);
  std::size_t const n = alg.size();
  std::size_t const c = lat.size();
  ShiftingReport report;
  auto test = [&](std::size_t a, std::size_t b, std::size_t d, Element x, Element y, Element u,
                  Element v) {
    ++report.checked;
    auto const& al = lat[a];
    auto const& be = lat[b];
    auto const& de = lat[d];
    if (al.related(x, y) && al.related(u, v) && be.related(x, u) && be.related(y, v) &&
        de.related(u, v) && !de.related(x, y)) {
      report.holds = false;
      report.congruences = {a, b, d};
      report.elements = {x, y, u, v};
    }
  };
  std::vector<std::array<std::size_t, 3>> triples;
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t b = 0; b < c; ++b) {
      auto const m = meet(lat[a], lat[b]);
      for (std::size_t d = 0; d < c; ++d) {
        if (m.leq(lat[d])) {
          triples.push_back({a, b, d});
        }
      }
    }
  }
  std::size_t const per = n * n * n * n;
  if (triples.size() * per <= sample_cap) {
    for (auto const& [a, b, d] : triples) {
      for (std::size_t t = 0; t < per && report.holds; ++t) {
        test(a, b, d, static_cast<Element>(t % n), static_cast<Element>(t / n % n),
             static_cast<Element>(t / n / n % n), static_cast<Element>(t / n / n / n));
      }
    }
    return report;
  }
  report.exhaustive = false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_triple(0, triples.size() - 1);
  std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
  auto block_of = [&](Congruence const& c, Element a) {
    std::vector<Element> out;
    for (Element b = 0; b < n; ++b) {
      if (c.related(a, b)) {
        out.push_back(b);
      }
    }
    return out;
  };
  auto choose = [&](std::vector<Element> const& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  // Sample inside the hypothesis: y ~alpha x, u ~beta x, v in [y]_beta ^ [u]_alpha.
  for (std::size_t s = 0; s < sample_cap && report.holds; ++s) {
    auto const& [a, b, d] = triples[pick_triple(rng)];
    Element const x = pick(rng);
    Element const y = choose(block_of(lat[a], x));
    Element const u = choose(block_of(lat[b], x));
    std::vector<Element> vs;
    for (Element v = 0; v < n; ++v) {
      if (lat[b].related(y, v) && lat[a].related(u, v)) {
        vs.push_back(v);
      }
    }
    if (vs.empty()) {
      continue;
    }
    test(a, b, d, x, y, u, choose(vs));
  }
  return report;
}

void shift_rotation_labels(OperationTable const& m_e, std::size_t pi, std::size_t pj,
                           std::span<Element const> in, std::span<Element> out) {
  std::size_t const n = m_e.size();
  Vertex const bi = Vertex{1} << pi;
  Vertex const bj = Vertex{1} << pj;
  for (Vertex f = 0; f < in.size(); ++f) {
    Element const a0 = in[f | bj];
    Element const a1 = in[f];
    Element const a2 = in[f & ~bi];
    Element const a3 = in[(f & ~bi) | bj];
    out[f] = m_e[a0 + n * (a1 + n * (a2 + n * a3))];
  }
}

Cube shift_rotation(DaySequence const& day, std::size_t e, std::size_t i, std::size_t j,
                    Cube const& c) {
  if (e >= day.tables.size()) {
    throw InvalidArgument("Day sequence has no term m_" + std::to_string(e));
  }
  if (i == j) {
    throw InvalidArgument("shift rotation needs two distinct directions");
  }
  std::size_t const pi = c.shape().position(i);
  std::size_t const pj = c.shape().position(j);
  std::vector<Element> out(c.vertex_count());
  shift_rotation_labels(day.tables[e], pi, pj, c.labels(), out);
  return Cube(c.shape(), std::move(out));
}

Cube rotate_along_path(DaySequence const& day, Cube const& c, std::span<std::size_t const> d) {
  if (d.size() >= c.dimension()) {
    throw InvalidArgument("rotation path of length " + std::to_string(d.size()) +
                          " on a cube of dimension " + std::to_string(c.dimension()));
  }
  Cube out = c;
  for (std::size_t t = 0; t < d.size(); ++t) {
    out = shift_rotation(day, d[t], c.shape()[t], c.shape()[t + 1], out);
  }
  return out;
}

}  // namespace hcomm
