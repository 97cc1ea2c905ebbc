#include "hcomm/kiss.hpp"

#include <random>

#include "hcomm/day.hpp"
#include "hcomm/error.hpp"

namespace hcomm {

namespace {

std::vector<Congruence> without(std::span<Congruence const> thetas, std::size_t p) {
  std::vector<Congruence> out;
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    if (k != p) {
      out.push_back(thetas[k]);
    }
  }
  return out;
}

Element q2_at(OperationTable const& q, Element a, Element b, Element c, Element d) {
  std::size_t const n = q.size();
  return q[a + n * (b + n * (c + n * d))];
}

}  // namespace

CubeRelation rect(std::size_t carrier_size, Congruence const& alpha, Congruence const& beta) {
  std::size_t const n = carrier_size;
  std::vector<std::uint64_t> codes;
  for (Element d = 0; d < n; ++d) {
    for (Element c = 0; c < n; ++c) {
      for (Element b = 0; b < n; ++b) {
        for (Element a = 0; a < n; ++a) {
          if (alpha.related(a, b) && alpha.related(c, d) && beta.related(a, c) &&
              beta.related(b, d)) {
            codes.push_back(a + n * (b + n * (c + n * std::uint64_t{d})));
          }
        }
      }
    }
  }
  return CubeRelation(IndexSet{0, 1}, n, std::move(codes));
}

Term build_kiss_n(Term const& q2, std::size_t n) {
  if (n < 2) {
    throw InvalidArgument("Kiss terms start at dimension 2");
  }
  if (n == 2) {
    return q2;
  }
  Term const prev = build_kiss_n(q2, n - 1);
  std::size_t const h = std::size_t{1} << (n - 1);
  std::vector<Term> shifted;
  for (std::size_t i = 0; i < h; ++i) {
    shifted.push_back(Term::variable(h + i));
  }
  std::vector<Term> args{prev, Term::variable(h - 1), prev.substitute(shifted),
                         Term::variable(2 * h - 1)};
  return q2.substitute(args);
}

KissTower::KissTower(FiniteAlgebra const& alg, Term q2)
    : q2_(std::move(q2)), table_(term_table(alg, q2_, 4, "q2")) {}

Term const& KissTower::term(std::size_t n) {
  auto it = terms_.find(n);
  if (it == terms_.end()) {
    it = terms_.emplace(n, build_kiss_n(q2_, n)).first;
  }
  return it->second;
}

Element KissTower::evaluate(std::span<Element const> labels) const {
  std::size_t const m = labels.size();
  if (m < 4 || (m & (m - 1)) != 0) {
    throw InvalidArgument("Kiss terms take 2^n arguments with n >= 2, got " + std::to_string(m));
  }
  if (m == 4) {
    return q2_at(table_, labels[0], labels[1], labels[2], labels[3]);
  }
  std::size_t const h = m / 2;
  return q2_at(table_, evaluate(labels.first(h)), labels[h - 1], evaluate(labels.subspan(h)),
               labels[m - 1]);
}

bool kiss_identities_hold(OperationTable const& q2) {
  for (Element x = 0; x < q2.size(); ++x) {
    for (Element y = 0; y < q2.size(); ++y) {
      if (q2_at(q2, x, x, y, y) != y || q2_at(q2, x, y, x, y) != y) {
        return false;
      }
    }
  }
  return true;
}

std::optional<KissPropertyWitness> kiss_property_violation(CommutatorCache& cache,
                                                           OperationTable const& q2) {
  auto const lat = all_congruences(cache.algebra());
  std::size_t const n = q2.size();
  for (auto const& alpha : lat) {
    for (auto const& beta : lat) {
      std::vector const pair{alpha, beta};
      auto const& comm = cache.tc(pair);
      for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
          if (!alpha.related(a, b)) {
            continue;
          }
          for (Element c = 0; c < n; ++c) {
            if (!beta.related(a, c)) {
              continue;
            }
            std::vector<Element> ds;
            for (Element d = 0; d < n; ++d) {
              if (alpha.related(c, d) && beta.related(b, d)) {
                ds.push_back(d);
              }
            }
            for (auto d : ds) {
              for (auto d2 : ds) {
                if (!comm.related(q2_at(q2, a, b, c, d), q2_at(q2, a, b, c, d2))) {
                  return KissPropertyWitness{alpha, beta, {a, b, c, d, d2}};
                }
              }
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

KissSearchResult find_kiss2(CommutatorCache& cache, TermSearchCaps caps) {
  auto const& alg = cache.algebra();
  KissSearchResult result;
  auto accept = [&](OperationTable const& t) {
    return kiss_identities_hold(t) && !kiss_property_violation(cache, t);
  };
  if (auto p = find_malcev_term(alg, caps)) {
    auto q = p->term.substitute(std::vector{Term::variable(2), Term::variable(0), Term::variable(1)});
    if (accept(term_table(alg, q, 4))) {
      result.q2 = std::move(q);
      result.from_malcev = true;
      return result;
    }
  }
  result.enumeration = for_each_term_operation(alg, 4, caps, [&](TermOperation const& op) {
    if (accept(op.table)) {
      result.q2 = op.term;
      return false;
    }
    return true;
  });
  return result;
}

Cube complete_cube(KissTower const& tower, Cube const& c) {
  std::vector<Element> l(c.labels().begin(), c.labels().end());
  l.back() = tower.evaluate(c.labels());
  return Cube(c.shape(), std::move(l));
}

bool faces_in_lower_deltas(CommutatorCache& cache, std::span<Congruence const> thetas,
                           std::span<Element const> labels) {
  std::size_t const n = thetas.size();
  std::vector<Element> face(labels.size() / 2);
  for (std::size_t p = 0; p < n; ++p) {
    auto const& lower = cache.delta(without(thetas, p));
    for (unsigned j = 0; j < 2; ++j) {
      for (Vertex g = 0; g < face.size(); ++g) {
        face[g] = labels[insert_bit(g, p, j)];
      }
      if (!lower.contains_labels(face)) {
        return false;
      }
    }
  }
  return true;
}

CompletionReport check_kiss_completion(CommutatorCache& cache, KissTower const& tower,
                                       std::span<Congruence const> thetas,
                                       CompletionOptions options) {
  std::size_t const n = thetas.size();
  if (n < 2) {
    throw InvalidArgument("completion needs at least two congruences");
  }
  IndexSet const shape = IndexSet::range(n);
  auto const& target = cache.delta(thetas);
  // Both faces in the top direction lie in this lower Delta.
  auto const& base = cache.delta(without(thetas, n - 1));
  std::size_t const half = base.vertex_count();
  CompletionReport report;
  std::vector<Element> l(2 * half);
  auto test = [&](std::size_t s, std::size_t t) {
    base.labels_of(s, std::span(l).first(half));
    base.labels_of(t, std::span(l).subspan(half));
    if (!faces_in_lower_deltas(cache, thetas, l)) {
      return false;
    }
    ++report.checked;
    Cube const c(shape, l);
    if (!target.contains(complete_cube(tower, c))) {
      report.holds = false;
      report.witness = c;
    }
    return true;
  };
  std::size_t const m = base.size();
  if (m * m <= options.exhaustive_limit) {
    for (std::size_t t = 0; t < m && report.holds; ++t) {
      for (std::size_t s = 0; s < m && report.holds; ++s) {
        test(s, t);
      }
    }
    return report;
  }
  report.exhaustive = false;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  std::size_t const attempts = options.samples * 1000;
  for (std::size_t a = 0; a < attempts && report.checked < options.samples && report.holds; ++a) {
    std::size_t const s = pick(rng);
    test(s, pick(rng));
  }
  return report;
}

Cube delta_shift(CubeRelation const& r, Cube const& c, Element q) {
  if (!r.contains(c)) {
    throw PreconditionViolation("cube " + c.to_string() + " is not a member");
  }
  Element const top = c.labels().back();
  if (!r.contains(commutator_cube(c.shape(), top, q))) {
    throw PreconditionViolation("com(" + std::to_string(top) + "," + std::to_string(q) +
                                ") is not a member");
  }
  std::vector<Element> l(c.labels().begin(), c.labels().end());
  l.back() = q;
  return Cube(c.shape(), std::move(l));
}

bool delta_membership(CommutatorCache& cache, KissTower const& tower,
                      std::span<Congruence const> thetas, Cube const& c) {
  if (thetas.size() < 2 || c.dimension() != thetas.size()) {
    throw InvalidArgument("need one congruence per direction and at least two");
  }
  return faces_in_lower_deltas(cache, thetas, c.labels()) &&
         cache.tc(thetas).related(c.labels().back(), tower.evaluate(c.labels()));
}

}  // namespace hcomm
