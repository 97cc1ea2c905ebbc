#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hcomm/congruence.hpp"
#include "hcomm/cube.hpp"
#include "hcomm/day.hpp"
#include "hcomm/relation.hpp"

namespace hcomm {

// (delta, i)-centrality of R: for every member, if every i-supporting line
// is a delta-pair then so is the i-pivot line.
struct CentralityReport {
  Congruence delta;
  // Directions checked, in shape order, with the outcome of each.
  std::vector<std::size_t> directions;
  std::vector<bool> passed;
  // First violating member and its direction.
  std::optional<Cube> witness;
  std::optional<std::size_t> witness_direction;

  bool all_passed() const;
};

CentralityReport has_centrality(CubeRelation const& r, Congruence const& delta, std::size_t i);
// Every direction of the shape.
CentralityReport has_centrality(CubeRelation const& r, Congruence const& delta);

// Least delta such that R has (delta, i)-centrality for every i in its shape.
// Each sweep collects every forced pivot pair before closing with cg.
Congruence centrality_closure(FiniteAlgebra const& alg, CubeRelation const& r);

// Least delta with M(thetas), resp. Delta(thetas), delta-central. Needs |S| >= 2.
Congruence tc_commutator(FiniteAlgebra const& alg, IndexSet const& shape,
                         std::span<Congruence const> thetas, ClosureOptions options = {});
Congruence hypercommutator(FiniteAlgebra const& alg, IndexSet const& shape,
                           std::span<Congruence const> thetas, ClosureOptions options = {});

// com(x, y) in Delta(thetas).
bool commutator_membership(FiniteAlgebra const& alg, IndexSet const& shape,
                           std::span<Congruence const> thetas, Element x, Element y,
                           ClosureOptions options = {});
bool commutator_membership(CubeRelation const& delta_rel, Element x, Element y);

// Memoizes M, Delta and both commutators per theta tuple (shape 0..n-1).
class CommutatorCache {
 public:
  explicit CommutatorCache(FiniteAlgebra const& alg, ClosureOptions options = {});

  FiniteAlgebra const& algebra() const noexcept { return alg_; }
  CubeRelation const& m(std::span<Congruence const> thetas);
  CubeRelation const& delta(std::span<Congruence const> thetas);
  Congruence const& tc(std::span<Congruence const> thetas);
  Congruence const& hyper(std::span<Congruence const> thetas);

 private:
  using Key = std::vector<Congruence>;
  FiniteAlgebra alg_;
  ClosureOptions options_;
  std::map<Key, CubeRelation> m_;
  std::map<Key, CubeRelation> delta_;
  std::map<Key, Congruence> tc_;
  std::map<Key, Congruence> hyper_;
};

struct CommutatorComparison {
  Congruence tc;
  Congruence hyper;
  bool equal = false;
};

// Throws HypothesisUnmet unless day is verified.
CommutatorComparison check_tc_equals_hyper(CommutatorCache& cache, DaySequence const& day,
                                           std::span<Congruence const> thetas);

enum class NestingShape {
  // [t_0, .., t_{j-1}, [t_j, .., t_{n-1}]], 1 <= j <= n-2
  suffix,
  // [[t_0, .., t_{j-1}], t_j, .., t_{n-1}], 2 <= j <= n-1
  prefix,
};

struct NestedReport {
  Congruence inner;
  Congruence nested;
  Congruence flat;
  bool holds = false;
};

// nested <= flat, with term condition commutators throughout.
NestedReport check_hc8(CommutatorCache& cache, DaySequence const& day,
                       std::span<Congruence const> thetas, std::size_t split,
                       NestingShape shape = NestingShape::suffix);

}  // namespace hcomm
