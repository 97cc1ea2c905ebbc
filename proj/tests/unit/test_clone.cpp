#include <set>

#include "doctest.h"
#include "hcomm/clone.hpp"
#include "hcomm/corpus.hpp"
#include "hcomm/error.hpp"

using namespace hcomm;

namespace {

// Every table of the arity, filtered by the direct preservation check.
std::vector<std::vector<Element>> oracle_polymorphisms(CubeRelation const& r, std::size_t k) {
  std::size_t const n = r.carrier_size();
  std::size_t const entries = checked_pow(n, k);
  std::size_t const count = checked_pow(n, entries);
  std::vector<std::vector<Element>> out;
  std::vector<Element> t(entries);
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t x = c;
    for (std::size_t e = entries; e-- > 0;) {
      t[e] = static_cast<Element>(x % n);
      x /= n;
    }
    if (preserves(r, OperationTable("f", k, n, t))) {
      out.push_back(t);
    }
  }
  return out;
}

std::vector<std::vector<Element>> as_tables(PolymorphismSet const& p) {
  std::vector<std::vector<Element>> out;
  for (auto const& op : p.operations) {
    out.emplace_back(op.table().begin(), op.table().end());
  }
  return out;
}

}  // namespace

TEST_CASE("preservation") {
  auto const z2 = corpus::cyclic_group(2);
  IndexSet const s{0, 1};
  auto const even = delta(z2, s, std::vector(2, Congruence::total(2)));
  CHECK(preserves(even, z2.operation("mul")));
  OperationTable const meet("meet", 2, 2, {0, 0, 0, 1});
  auto const w = preservation_violation(even, meet);
  REQUIRE(w.has_value());
  CHECK_FALSE(even.contains(w->image));
  CHECK(w->members.size() == 2);
}

TEST_CASE("polymorphisms match brute force") {
  auto const z2 = corpus::cyclic_group(2);
  IndexSet const s{0, 1};
  auto const even = delta(z2, s, std::vector(2, Congruence::total(2)));
  CHECK(polymorphisms(even, 1).operations.size() == 4);
  // Affine binary maps over GF(2).
  CHECK(polymorphisms(even, 2).operations.size() == 8);
  CHECK(polymorphisms(CubeRelation::diagonal(s, 2), 2).operations.size() == 16);
  CHECK(polymorphisms(even, 0).operations.size() == 2);
  for (auto const& alg : {corpus::cyclic_group(2), corpus::cyclic_group(3),
                          corpus::chain_lattice(2), corpus::bare_set(2)}) {
    auto const lat = all_congruences(alg);
    for (auto const& a : lat) {
      for (auto const& b : lat) {
        auto const r = delta(alg, s, std::vector{a, b});
        for (std::size_t k = 1; k <= (alg.size() == 2 ? 3u : 2u); ++k) {
          CHECK(as_tables(polymorphisms(r, k)) == oracle_polymorphisms(r, k));
        }
      }
    }
  }
  CHECK_THROWS_AS(polymorphisms(CubeRelation::diagonal(s, 2), 2, 5), ResourceError);
}

TEST_CASE("clone slice") {
  for (auto const& alg : {corpus::cyclic_group(2), corpus::chain_lattice(2),
                          corpus::cyclic_group(3)}) {
    auto const day = find_day_terms(alg).sequence.value();
    auto const lat = all_congruences(alg);
    auto const rep = greatest_clone_slice(alg, day, std::vector(2, lat.back()), 2);
    CHECK(rep.day_terms_preserve);
    CHECK(rep.basic_operations_included);
    CHECK(rep.thetas_compatible);
    CHECK(rep.delta_reproduced);
    CHECK(rep.commutators_agree.size() == 1);
    CHECK(rep.all_passed());
  }
  auto const z2 = corpus::cyclic_group(2);
  auto const day = find_day_terms(z2).sequence.value();
  auto const rep3 = greatest_clone_slice(z2, day, std::vector(3, Congruence::total(2)), 2);
  CHECK(rep3.commutators_agree.size() == 4);
  CHECK(rep3.all_passed());
}

TEST_CASE("shared delta") {
  auto const z4 = corpus::cyclic_group(4);
  auto const day = find_day_terms(z4).sequence.value();
  auto const lat = all_congruences(z4);
  std::vector const t{lat[1], lat[2]};
  auto const same = check_shared_delta(z4, z4, day, t);
  CHECK(same.commutators_equal);
  CHECK(same.deltas_equal);
  auto const neg = check_shared_delta(z4, corpus::z4_with_negation(), day, t);
  CHECK(neg.biconditional());
  CHECK(neg.deltas_equal);
  auto const ring = check_shared_delta(z4, corpus::z4_ring(), day, std::vector(2, lat[2]));
  CHECK(ring.biconditional());
  CHECK_FALSE(ring.commutators_equal);
  CHECK_THROWS_AS(check_shared_delta(z4, corpus::cyclic_group(2), day, t), HypothesisUnmet);
  CHECK_THROWS_AS(check_shared_delta(z4, corpus::chain_lattice(2), day, t), HypothesisUnmet);
}
