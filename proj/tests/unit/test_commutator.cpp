#include <algorithm>
#include <set>

#include "doctest.h"
#include "hcomm/commutator.hpp"
#include "hcomm/corpus.hpp"
#include "hcomm/error.hpp"
#include "hcomm/recursion.hpp"

using namespace hcomm;

namespace {

Element op2(FiniteAlgebra const& g, Element a, Element b) {
  Element args[] = {a, b};
  return g.operation("mul").apply(args);
}

// Cosets of the subgroup generated by all a^-1 b^-1 a b.
Congruence commutator_subgroup(FiniteAlgebra const& g) {
  auto const& inv = g.operation("inv");
  Element const e = g.operation("e")[0];
  std::set<Element> sub{e};
  for (Element a = 0; a < g.size(); ++a) {
    for (Element b = 0; b < g.size(); ++b) {
      sub.insert(op2(g, op2(g, inv[a], inv[b]), op2(g, a, b)));
    }
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (auto a : std::vector(sub.begin(), sub.end())) {
      for (auto b : std::vector(sub.begin(), sub.end())) {
        grew = sub.insert(op2(g, a, b)).second || grew;
      }
    }
  }
  PartitionBuilder pb(g.size());
  for (Element a = 0; a < g.size(); ++a) {
    for (auto s : sub) {
      pb.unite(a, op2(g, a, s));
    }
  }
  return pb.build();
}

// Least member of the lattice with delta-centrality in every direction.
Congruence oracle_least_central(FiniteAlgebra const& alg, CubeRelation const& r) {
  auto const lat = all_congruences(alg);
  std::vector<Congruence> central;
  for (auto const& d : lat) {
    if (has_centrality(r, d).all_passed()) {
      central.push_back(d);
    }
  }
  REQUIRE(!central.empty());
  for (auto const& c : central) {
    if (std::all_of(central.begin(), central.end(),
                    [&](Congruence const& o) { return c.leq(o); })) {
      return c;
    }
  }
  FAIL("no least central congruence");
  return lat.back();
}

template <class F>
void for_each_tuple(std::vector<Congruence> const& lat, std::size_t n, F f) {
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    std::vector<Congruence> t;
    for (auto p : pick) {
      t.push_back(lat[p]);
    }
    f(t);
    std::size_t i = 0;
    while (i < n && ++pick[i] == lat.size()) {
      pick[i++] = 0;
    }
    if (i == n) {
      return;
    }
  }
}

}  // namespace

TEST_CASE("centrality examples") {
  auto const z2 = corpus::cyclic_group(2);
  IndexSet const s{0, 1};
  auto const diag = CubeRelation::diagonal(s, 2);
  CHECK(has_centrality(diag, Congruence::identity(2)).all_passed());
  auto const full = CubeRelation::full(s, 2);
  CHECK(has_centrality(full, Congruence::total(2)).all_passed());
  auto const bad = has_centrality(full, Congruence::identity(2), 0);
  CHECK_FALSE(bad.all_passed());
  REQUIRE(bad.witness.has_value());
  CHECK(((*bad.witness)[0] == (*bad.witness)[1]));
  CHECK(((*bad.witness)[2] != (*bad.witness)[3]));
  auto const m = generate_M(z2, s, std::vector(2, Congruence::total(2)));
  CHECK(has_centrality(m, Congruence::identity(2), 0).all_passed());
  CHECK(centrality_closure(z2, diag).is_identity());
  CHECK(centrality_closure(z2, full).is_total());
  CHECK(centrality_closure(z2, m).is_identity());
}

TEST_CASE("binary commutator of groups is the commutator subgroup") {
  for (auto const& e : corpus::builtin()) {
    if (!e.is_group) {
      continue;
    }
    auto const& g = e.algebra;
    std::vector const ones(2, Congruence::total(g.size()));
    CHECK(tc_commutator(g, IndexSet{0, 1}, ones) == commutator_subgroup(g));
  }
  auto const s3 = corpus::symmetric_group_3();
  std::vector const ones(2, Congruence::total(6));
  CHECK(tc_commutator(s3, IndexSet{0, 1}, ones).to_string() == "0 1 2|3 4 5");
  CHECK_THROWS_AS(tc_commutator(s3, IndexSet{0}, std::vector(1, Congruence::total(6))),
                  InvalidArgument);
}

TEST_CASE("fixpoint matches the least central congruence") {
  for (auto const& alg : {corpus::cyclic_group(2), corpus::cyclic_group(4),
                          corpus::chain_lattice(2), corpus::bare_set(2),
                          corpus::symmetric_group_3()}) {
    auto const lat = all_congruences(alg);
    for (std::size_t n = 2; n <= (alg.size() <= 2 ? 3u : 2u); ++n) {
      IndexSet const s = IndexSet::range(n);
      for_each_tuple(lat, n, [&](std::vector<Congruence> const& t) {
        auto const m = generate_M(alg, s, t);
        auto const d = delta(alg, s, t);
        CHECK(centrality_closure(alg, m) == oracle_least_central(alg, m));
        CHECK(centrality_closure(alg, d) == oracle_least_central(alg, d));
      });
    }
  }
}

TEST_CASE("commutator laws") {
  for (auto const& alg : {corpus::cyclic_group(4), corpus::symmetric_group_3(),
                          corpus::chain_lattice(3), corpus::cyclic_product(2, 2)}) {
    auto const lat = all_congruences(alg);
    CommutatorCache cache(alg);
    for_each_tuple(lat, 2, [&](std::vector<Congruence> const& t) {
      auto const& c = cache.tc(t);
      CHECK(c.leq(meet(t[0], t[1])));
      CHECK(c.leq(cache.hyper(t)));
      std::vector const swapped{t[1], t[0]};
      CHECK(cache.tc(swapped) == c);
      for (auto const& bigger : lat) {
        if (t[0].leq(bigger)) {
          std::vector const up{bigger, t[1]};
          CHECK(c.leq(cache.tc(up)));
        }
      }
      for (Element x = 0; x < alg.size(); ++x) {
        for (Element y = 0; y < alg.size(); ++y) {
          CHECK(commutator_membership(cache.delta(t), x, y) == c.related(x, y));
        }
      }
    });
  }
}

TEST_CASE("ternary commutators") {
  auto const z2 = corpus::cyclic_group(2);
  std::vector const ones(3, Congruence::total(2));
  IndexSet const s = IndexSet::range(3);
  CHECK(tc_commutator(z2, s, ones).is_identity());
  CHECK_FALSE(commutator_membership(z2, s, ones, 0, 1));
  CHECK(commutator_membership(z2, s, ones, 1, 1));

  auto const z4 = corpus::cyclic_group(4);
  auto const day = find_day_terms(z4).sequence.value();
  CommutatorCache cache(z4);
  auto const lat = all_congruences(z4);
  for (std::size_t n = 2; n <= 3; ++n) {
    for_each_tuple(lat, n, [&](std::vector<Congruence> const& t) {
      CHECK(check_tc_equals_hyper(cache, day, t).equal);
    });
  }
  auto const l2 = corpus::chain_lattice(2);
  CommutatorCache lc(l2);
  auto const lday = find_day_terms(l2).sequence.value();
  for_each_tuple(all_congruences(l2), 2, [&](std::vector<Congruence> const& t) {
    CHECK(check_tc_equals_hyper(lc, lday, t).equal);
  });
  CHECK_THROWS_AS(check_tc_equals_hyper(lc, DaySequence{}, ones), HypothesisUnmet);
}

TEST_CASE("nested commutators") {
  auto const s3 = corpus::symmetric_group_3();
  auto const day = find_day_terms(s3).sequence.value();
  CommutatorCache cache(s3);
  std::vector const ones(3, Congruence::total(6));
  auto const suffix = check_hc8(cache, day, ones, 1);
  CHECK(suffix.holds);
  CHECK(suffix.inner.to_string() == "0 1 2|3 4 5");
  auto const prefix = check_hc8(cache, day, ones, 2, NestingShape::prefix);
  CHECK(prefix.holds);
  CHECK_THROWS_AS(check_hc8(cache, day, ones, 2), InvalidArgument);
  CHECK_THROWS_AS(check_hc8(cache, day, ones, 1, NestingShape::prefix), InvalidArgument);
}

TEST_CASE("glue recursion") {
  auto const z2 = corpus::cyclic_group(2);
  IndexSet const s = IndexSet::range(3);
  std::vector const ones(3, Congruence::total(2));
  auto const direct = delta(z2, s, ones);
  CHECK(direct.size() == 16);
  CHECK(delta_via_glue_recursion(z2, s, ones, IndexSet{0, 1}) == direct);
  CHECK(delta_via_glue_recursion(z2, s, ones, IndexSet{}) == direct);
  std::vector const zeros(3, Congruence::identity(2));
  CHECK(delta_via_glue_recursion(z2, s, zeros, IndexSet{1, 2}) ==
        CubeRelation::diagonal(s, 2));
  for (auto const& alg : {corpus::cyclic_group(3), corpus::chain_lattice(2)}) {
    auto const lat = all_congruences(alg);
    for_each_tuple(lat, 3, [&](std::vector<Congruence> const& t) {
      auto const d = delta(alg, s, t);
      for (auto const& q : {IndexSet{0, 1}, IndexSet{0, 2}, IndexSet{1, 2}}) {
        CHECK(delta_via_glue_recursion(alg, s, t, q) == d);
      }
    });
  }
}

TEST_CASE("almost congruences") {
  for (auto const& alg : {corpus::cyclic_group(2), corpus::cyclic_group(4)}) {
    auto const lat = all_congruences(alg);
    for_each_tuple(lat, 2, [&](std::vector<Congruence> const& t) {
      CHECK(promote_almost_congruence(alg, delta(alg, IndexSet{0, 1}, t)));
    });
    CHECK(promote_almost_congruence(alg, CubeRelation::diagonal(IndexSet{0, 1}, alg.size())));
  }
  auto const z2 = corpus::cyclic_group(2);
  IndexSet const s{0, 1};
  auto const partial = CubeRelation::from_cubes(
      s, 2, std::vector{Cube::constant(s, 0), Cube(s, {0, 1, 0, 1})});
  CHECK_THROWS_AS(promote_almost_congruence(z2, partial), PreconditionViolation);
}
