#include <algorithm>
#include <functional>

#include "doctest.h"
#include "hcomm/congruence.hpp"
#include "hcomm/corpus.hpp"
#include "hcomm/error.hpp"

using namespace hcomm;

namespace {

// All partitions of {0..n-1} as restricted growth strings.
std::vector<std::vector<Element>> all_partitions(std::size_t n) {
  std::vector<std::vector<Element>> out;
  std::vector<Element> rg(n, 0);
  std::function<void(std::size_t, Element)> rec = [&](std::size_t i, Element top) {
    if (i == n) {
      out.push_back(rg);
      return;
    }
    for (Element b = 0; b <= top + 1; ++b) {
      rg[i] = b;
      rec(i + 1, std::max(top, b));
    }
  };
  if (n > 0) {
    rg[0] = 0;
    rec(1, 0);
  }
  return out;
}

// Full definition: related argument tuples give related values.
bool oracle_compatible(FiniteAlgebra const& alg, std::vector<Element> const& block) {
  std::size_t const n = alg.size();
  for (auto const& op : alg.operations()) {
    std::size_t const k = op.arity();
    std::size_t const count = checked_pow(n, k);
    std::vector<Element> a(k);
    std::vector<Element> b(k);
    for (std::size_t s = 0; s < count; ++s) {
      OperationTable::unflatten(s, n, a);
      for (std::size_t t = 0; t < count; ++t) {
        OperationTable::unflatten(t, n, b);
        bool related = true;
        for (std::size_t c = 0; c < k; ++c) {
          related = related && block[a[c]] == block[b[c]];
        }
        if (related && block[op.apply(a)] != block[op.apply(b)]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<std::vector<Element>> oracle_congruences(FiniteAlgebra const& alg) {
  std::vector<std::vector<Element>> out;
  for (auto const& p : all_partitions(alg.size())) {
    if (oracle_compatible(alg, p)) {
      out.push_back(p);
    }
  }
  return out;
}

bool same_partition(Congruence const& c, std::vector<Element> const& rg) {
  for (Element a = 0; a < rg.size(); ++a) {
    for (Element b = 0; b < rg.size(); ++b) {
      if (c.related(a, b) != (rg[a] == rg[b])) {
        return false;
      }
    }
  }
  return true;
}

std::vector<FiniteAlgebra> small_algebras() {
  return {corpus::cyclic_group(2),      corpus::cyclic_group(3), corpus::cyclic_group(4),
          corpus::cyclic_product(2, 2), corpus::chain_lattice(2), corpus::chain_lattice(3),
          corpus::boolean_lattice_2x2(), corpus::bare_set(3),    corpus::z4_ring()};
}

}  // namespace

TEST_CASE("congruence text form") {
  auto c = Congruence::parse(4, "0 2|1 3");
  CHECK(c.to_string() == "0 2|1 3");
  CHECK(c.block_count() == 2);
  CHECK(Congruence::parse(4, "3 1|2 0") == c);
  CHECK(Congruence::identity(3).to_string() == "0|1|2");
  CHECK(Congruence::total(3).to_string() == "0 1 2");
  CHECK_THROWS_AS(Congruence::parse(4, "0 1|1 2 3"), ParseError);
  CHECK_THROWS_AS(Congruence::parse(4, "0 1"), ParseError);
  CHECK_THROWS_AS(Congruence::parse(4, "0 1|2 x 3"), ParseError);
}

TEST_CASE("cg examples") {
  auto z4 = corpus::cyclic_group(4);
  std::pair<Element, Element> p02{0, 2};
  CHECK(cg(z4, std::span(&p02, 1)).to_string() == "0 2|1 3");
  CHECK(cg(z4, {}).is_identity());
  auto z3 = corpus::cyclic_group(3);
  std::pair<Element, Element> p01{0, 1};
  CHECK(cg(z3, std::span(&p01, 1)).is_total());
}

TEST_CASE("cg is the least compatible equivalence containing the pairs") {
  for (auto const& alg : small_algebras()) {
    auto const oracle = oracle_congruences(alg);
    for (Element a = 0; a < alg.size(); ++a) {
      for (Element b = a + 1; b < alg.size(); ++b) {
        std::pair<Element, Element> p{a, b};
        auto const c = cg(alg, std::span(&p, 1));
        CHECK(is_compatible(alg, c));
        CHECK(c.related(a, b));
        for (auto const& o : oracle) {
          if (o[a] == o[b]) {
            for (Element u = 0; u < alg.size(); ++u) {
              for (Element v = 0; v < alg.size(); ++v) {
                if (c.related(u, v)) {
                  CHECK(o[u] == o[v]);
                }
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("all_congruences matches the partition oracle") {
  for (auto const& alg : small_algebras()) {
    auto const mine = all_congruences(alg);
    auto const oracle = oracle_congruences(alg);
    REQUIRE(mine.size() == oracle.size());
    for (auto const& o : oracle) {
      CHECK(std::any_of(mine.begin(), mine.end(),
                        [&](Congruence const& c) { return same_partition(c, o); }));
    }
    CHECK(mine.front().is_identity());
    CHECK(mine.back().is_total());
    for (std::size_t i = 1; i < mine.size(); ++i) {
      CHECK(mine[i - 1].block_count() >= mine[i].block_count());
    }
  }
}

TEST_CASE("corpus lattice sizes") {
  CHECK(all_congruences(corpus::cyclic_group(4)).size() == 3);
  CHECK(all_congruences(corpus::cyclic_group(2)).size() == 2);
  auto s3 = all_congruences(corpus::symmetric_group_3());
  REQUIRE(s3.size() == 3);
  CHECK(s3[1].to_string() == "0 1 2|3 4 5");
  CHECK(all_congruences(corpus::bare_set(2)).size() == 2);
  // D4 normal subgroups: 1, Z, three of order 4, D4.
  CHECK(all_congruences(corpus::dihedral_group(4)).size() == 6);
  CHECK_THROWS_AS(all_congruences(corpus::bare_set(9)), ResourceError);
}

TEST_CASE("join and meet") {
  auto z4 = corpus::cyclic_group(4);
  auto const cons = all_congruences(z4);
  auto const theta = Congruence::parse(4, "0 2|1 3");
  CHECK(join(theta, Congruence::identity(4)) == theta);
  CHECK(meet(theta, theta) == theta);
  for (auto const& alg : small_algebras()) {
    auto const lat = all_congruences(alg);
    for (auto const& a : lat) {
      for (auto const& b : lat) {
        auto const j = join(a, b);
        auto const m = meet(a, b);
        CHECK(std::find(lat.begin(), lat.end(), j) != lat.end());
        CHECK(std::find(lat.begin(), lat.end(), m) != lat.end());
        CHECK(a.leq(j));
        CHECK(m.leq(b));
      }
    }
  }
  CHECK_THROWS_AS(join(Congruence::identity(2), Congruence::identity(3)), InvalidArgument);
}
