#include <random>

#include "doctest.h"
#include "hcomm/corpus.hpp"
#include "hcomm/error.hpp"
#include "hcomm/kiss.hpp"

using namespace hcomm;

namespace {

KissTower tower_for(CommutatorCache& cache) {
  auto const found = find_kiss2(cache);
  REQUIRE(found.q2.has_value());
  return KissTower(cache.algebra(), *found.q2);
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

TEST_CASE("rectangles") {
  CHECK(rect(2, Congruence::total(2), Congruence::total(2)).size() == 16);
  auto const zero = rect(3, Congruence::identity(3), Congruence::total(3));
  for (auto const& c : zero.members()) {
    CHECK(c[0] == c[1]);
    CHECK(c[2] == c[3]);
  }
  CHECK(zero.size() == 9);
  auto const half = Congruence::parse(4, "0 2|1 3");
  CHECK(rect(4, half, half).size() == 32);
  CHECK(rect(4, half, Congruence::identity(4)).size() == 8);
}

TEST_CASE("Kiss terms from Mal'cev terms") {
  auto const z2 = corpus::cyclic_group(2);
  CommutatorCache c2(z2);
  auto const k2 = find_kiss2(c2);
  REQUIRE(k2.q2.has_value());
  CHECK(k2.from_malcev);
  KissTower t2(z2, *k2.q2);
  for (Element a = 0; a < 2; ++a) {
    for (Element b = 0; b < 2; ++b) {
      for (Element c = 0; c < 2; ++c) {
        Element l[] = {a, b, c, 0};
        CHECK(t2.evaluate(l) == (a ^ b ^ c));
      }
    }
  }
  auto const z4 = corpus::cyclic_group(4);
  CommutatorCache c4(z4);
  KissTower t4 = tower_for(c4);
  for (Element a = 0; a < 4; ++a) {
    for (Element b = 0; b < 4; ++b) {
      for (Element c = 0; c < 4; ++c) {
        Element l[] = {a, b, c, 1};
        CHECK(t4.evaluate(l) == (c + 4 - a + b) % 4);
      }
    }
  }
  CHECK(kiss_identities_hold(t4.q2_table()));
}

TEST_CASE("lattice Kiss term") {
  auto const l2 = corpus::chain_lattice(2);
  CommutatorCache cache(l2);
  auto const k = find_kiss2(cache);
  REQUIRE(k.q2.has_value());
  CHECK_FALSE(k.from_malcev);
  CHECK(kiss_identities_hold(term_table(l2, *k.q2, 4)));
  CHECK_FALSE(kiss_property_violation(cache, term_table(l2, *k.q2, 4)).has_value());
}

TEST_CASE("the property check catches bad candidates") {
  auto const s3 = corpus::symmetric_group_3();
  CommutatorCache cache(s3);
  // x3 meets the identities but not the commutator condition in S3.
  auto const proj = term_table(s3, Term::variable(3), 4);
  CHECK(kiss_identities_hold(proj));
  CHECK(kiss_property_violation(cache, proj).has_value());
  CHECK_FALSE(kiss_identities_hold(term_table(s3, Term::variable(0), 4)));
}

TEST_CASE("higher Kiss terms") {
  auto const z2 = corpus::cyclic_group(2);
  CommutatorCache cache(z2);
  KissTower tower = tower_for(cache);
  auto const& q3 = tower.term(3);
  // q2 = p(x2,x0,x1) ignores its last argument, so x7 does not occur.
  CHECK(q3.variable_bound() <= 8);
  CHECK(term_table(z2, q3, 8).arity() == 8);
  CHECK(tower.term(4).variable_bound() <= 16);
  CHECK(term_table(z2, tower.term(4), 16).table().size() == 65536);
  CHECK(tower.term(4).symbol() == tower.q2().symbol());
  for (std::size_t t = 0; t < 256; ++t) {
    std::vector<Element> l(8);
    OperationTable::unflatten(t, 2, l);
    Element x = 0;
    for (std::size_t i = 0; i < 7; ++i) {
      x ^= l[i];
    }
    CHECK(eval_term(z2, q3, l) == x);
    CHECK(tower.evaluate(l) == x);
  }
  auto const z3 = corpus::cyclic_group(3);
  CommutatorCache c3(z3);
  KissTower t3 = tower_for(c3);
  std::mt19937 rng(3);
  for (int s = 0; s < 200; ++s) {
    std::vector<Element> l(16);
    for (auto& e : l) {
      e = rng() % 3;
    }
    CHECK(eval_term(z3, t3.term(4), l) == t3.evaluate(l));
  }
  CHECK_THROWS_AS(build_kiss_n(tower.q2(), 1), InvalidArgument);
}

TEST_CASE("cube completion") {
  auto const z2 = corpus::cyclic_group(2);
  CommutatorCache cache(z2);
  KissTower tower = tower_for(cache);
  IndexSet const s{0, 1};
  CHECK(complete_cube(tower, Cube(s, {0, 1, 1, 1})) == Cube(s, {0, 1, 1, 0}));
  CHECK(complete_cube(tower, Cube::constant(s, 1)) == Cube::constant(s, 1));
  std::vector const ones(2, Congruence::total(2));
  auto const r = check_kiss_completion(cache, tower, ones);
  CHECK(r.holds);
  CHECK(r.exhaustive);
  CHECK(r.checked == 16);
  std::vector const zeros(2, Congruence::identity(2));
  CHECK(check_kiss_completion(cache, tower, zeros).checked == 2);
}

TEST_CASE("completion lands in delta") {
  for (auto const& alg : {corpus::cyclic_group(2), corpus::cyclic_group(3),
                          corpus::chain_lattice(2), corpus::chain_lattice(3),
                          corpus::cyclic_group(4)}) {
    CommutatorCache cache(alg);
    KissTower tower = tower_for(cache);
    auto const lat = all_congruences(alg);
    for (std::size_t n = 2; n <= 3; ++n) {
      for_each_tuple(lat, n, [&](std::vector<Congruence> const& t) {
        auto const r = check_kiss_completion(cache, tower, t);
        CHECK(r.holds);
        CHECK(r.exhaustive);
      });
    }
    for (auto const& a : lat) {
      for (auto const& b : lat) {
        auto const& d = cache.delta(std::vector{a, b});
        for (auto const& c : rect(alg.size(), a, b).members()) {
          CHECK(d.contains(complete_cube(tower, c)));
        }
      }
    }
  }
}

TEST_CASE("sampled completion") {
  auto const z4 = corpus::cyclic_group(4);
  CommutatorCache cache(z4);
  KissTower tower = tower_for(cache);
  auto const lat = all_congruences(z4);
  std::vector const t{lat[2], lat[2], lat[1]};
  CompletionOptions opts;
  opts.exhaustive_limit = 0;
  opts.samples = 2000;
  auto const r = check_kiss_completion(cache, tower, t, opts);
  CHECK(r.holds);
  CHECK_FALSE(r.exhaustive);
  CHECK(r.checked == 2000);
}

TEST_CASE("delta membership by Kiss terms") {
  auto const z2 = corpus::cyclic_group(2);
  CommutatorCache cache(z2);
  KissTower tower = tower_for(cache);
  std::vector const ones(2, Congruence::total(2));
  IndexSet const s{0, 1};
  std::size_t pass = 0;
  for (std::size_t t = 0; t < 16; ++t) {
    std::vector<Element> l(4);
    OperationTable::unflatten(t, 2, l);
    Cube const c(s, l);
    bool const in = delta_membership(cache, tower, ones, c);
    CHECK(in == cache.delta(ones).contains(c));
    pass += in;
  }
  CHECK(pass == 8);
  CHECK_FALSE(delta_membership(cache, tower, ones, Cube(s, {0, 0, 0, 1})));

  for (auto const& alg : {corpus::cyclic_group(3), corpus::chain_lattice(2)}) {
    CommutatorCache c(alg);
    KissTower tw = tower_for(c);
    auto const lat = all_congruences(alg);
    for (std::size_t n = 2; n <= 3; ++n) {
      auto const all = CubeRelation::full(IndexSet::range(n), alg.size());
      for_each_tuple(lat, n, [&](std::vector<Congruence> const& t) {
        auto const& d = c.delta(t);
        for (auto const& cube : all.members()) {
          CHECK(delta_membership(c, tw, t, cube) == d.contains(cube));
        }
      });
    }
  }
}

TEST_CASE("delta shifting") {
  auto const z2 = corpus::cyclic_group(2);
  IndexSet const s{0, 1};
  auto const r = delta(z2, s, std::vector(2, Congruence::total(2)));
  Cube const g(s, {0, 1, 1, 0});
  CHECK(delta_shift(r, g, 0) == g);
  CHECK_THROWS_AS(delta_shift(r, g, 1), PreconditionViolation);
  CHECK_THROWS_AS(delta_shift(r, Cube(s, {0, 0, 0, 1}), 0), PreconditionViolation);
}
