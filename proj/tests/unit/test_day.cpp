#include "doctest.h"
#include "hcomm/corpus.hpp"
#include "hcomm/day.hpp"
#include "hcomm/error.hpp"
#include "hcomm/relation.hpp"

using namespace hcomm;

namespace {

Element m4(OperationTable const& m, Element a, Element b, Element c, Element d) {
  Element args[] = {a, b, c, d};
  return m.apply(args);
}

}  // namespace

TEST_CASE("Mal'cev terms") {
  for (auto const& alg : {corpus::cyclic_group(2), corpus::cyclic_group(4),
                          corpus::symmetric_group_3()}) {
    auto const p = find_malcev_term(alg);
    REQUIRE(p.has_value());
    for (Element x = 0; x < alg.size(); ++x) {
      for (Element y = 0; y < alg.size(); ++y) {
        Element a[] = {x, x, y};
        Element b[] = {y, x, x};
        CHECK(p->table.apply(a) == y);
        CHECK(p->table.apply(b) == y);
      }
    }
  }
  CHECK_FALSE(find_malcev_term(corpus::chain_lattice(2)).has_value());
}

TEST_CASE("Day terms") {
  auto const z4 = find_day_terms(corpus::cyclic_group(4));
  REQUIRE(z4.sequence.has_value());
  CHECK(z4.sequence->verified);
  CHECK(z4.malcev.has_value());
  CHECK(z4.sequence->k() == 2);

  for (auto const& alg : {corpus::chain_lattice(2), corpus::chain_lattice(3)}) {
    auto const l = find_day_terms(alg);
    REQUIRE(l.sequence.has_value());
    CHECK(l.sequence->verified);
    CHECK_FALSE(l.malcev.has_value());
    CHECK(satisfies_day_scheme(l.sequence->tables, standard_day_scheme()));
  }

  auto const set2 = find_day_terms(corpus::bare_set(2));
  CHECK_FALSE(set2.sequence.has_value());
  CHECK(set2.enumeration.saturated);
}

TEST_CASE("scheme check rejects broken sequences") {
  auto const z2 = corpus::cyclic_group(2);
  auto seq = find_day_terms(z2).sequence.value();
  auto tables = seq.tables;
  std::swap(tables.front(), tables.back());
  CHECK_FALSE(satisfies_day_scheme(tables, standard_day_scheme()));
  auto two = std::vector{seq.tables.front(), seq.tables.back()};
  CHECK_FALSE(satisfies_day_scheme(two, standard_day_scheme()));
}

TEST_CASE("shifting") {
  for (auto const& alg : {corpus::cyclic_group(4), corpus::chain_lattice(3),
                          corpus::symmetric_group_3(), corpus::boolean_lattice_2x2()}) {
    auto const r = shifting_lemma_check(alg);
    CHECK(r.holds);
    CHECK(r.exhaustive);
    CHECK(r.checked > 0);
  }
  auto const sampled = shifting_lemma_check(corpus::cyclic_group(4), 1000, 7);
  CHECK(sampled.holds);
  CHECK_FALSE(sampled.exhaustive);
}

TEST_CASE("shift rotation on a square") {
  for (auto const& alg : {corpus::cyclic_group(3), corpus::chain_lattice(2)}) {
    auto const day = find_day_terms(alg).sequence.value();
    IndexSet const s{0, 1};
    std::size_t const n = alg.size();
    for (std::size_t e = 0; e < day.tables.size(); ++e) {
      auto const& m = day.tables[e];
      for (std::size_t code = 0; code < n * n * n * n; ++code) {
        std::vector<Element> l(4);
        OperationTable::unflatten(code, n, l);
        Element const a = l[0], b = l[1], c = l[2], d = l[3];
        auto const r = shift_rotation(day, e, 0, 1, Cube(s, l));
        CHECK(r[0] == c);
        CHECK(r[1] == m4(m, d, b, a, c));
        CHECK(r[2] == c);
        CHECK(r[3] == m4(m, d, d, c, c));
      }
    }
    CHECK_THROWS_AS(shift_rotation(day, 99, 0, 1, Cube::constant(s, 0)), InvalidArgument);
  }
}

TEST_CASE("rotations fix constants and preserve delta") {
  auto const alg = corpus::chain_lattice(2);
  auto const day = find_day_terms(alg).sequence.value();
  IndexSet const s = IndexSet::range(3);
  for (Element a = 0; a < alg.size(); ++a) {
    auto const c = Cube::constant(s, a);
    std::size_t const d[] = {1, 0};
    CHECK(rotate_along_path(day, c, d) == c);
  }
  auto const lat = all_congruences(alg);
  auto const rel = delta(alg, s, std::vector(3, lat.back()));
  for (auto const& c : rel.members()) {
    for (std::size_t e = 0; e < day.tables.size(); ++e) {
      CHECK(rel.contains(shift_rotation(day, e, 0, 1, c)));
      CHECK(rel.contains(shift_rotation(day, e, 1, 2, c)));
    }
  }
  std::size_t const too_long[] = {0, 0, 0};
  CHECK_THROWS_AS(rotate_along_path(day, Cube::constant(s, 0), too_long), InvalidArgument);
}
