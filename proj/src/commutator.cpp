#include "hcomm/commutator.hpp"

#include <algorithm>

#include "hcomm/error.hpp"

namespace hcomm {

namespace {

// Whether labels violate (delta, p)-centrality; p is a shape position.
bool violates(std::span<Element const> l, Congruence const& delta, std::size_t p) {
  Vertex const bit = Vertex{1} << p;
  Vertex const top = static_cast<Vertex>(l.size() - 1);
  Vertex const pivot = top & ~bit;
  if (delta.related(l[pivot], l[top])) {
    return false;
  }
  for (Vertex f = 0; f < l.size(); ++f) {
    if (!(f & bit) && f != pivot && !delta.related(l[f], l[f | bit])) {
      return false;
    }
  }
  return true;
}

void require_commutator_shape(IndexSet const& shape, std::span<Congruence const> thetas) {
  if (shape.size() < 2) {
    throw InvalidArgument("commutators need at least two congruences");
  }
  if (thetas.size() != shape.size()) {
    throw InvalidArgument("need one congruence per direction");
  }
}

std::vector<Congruence> key_of(std::span<Congruence const> thetas) {
  return std::vector<Congruence>(thetas.begin(), thetas.end());
}

}  // namespace

bool CentralityReport::all_passed() const {
  return std::all_of(passed.begin(), passed.end(), [](bool b) { return b; });
}

CentralityReport has_centrality(CubeRelation const& r, Congruence const& delta, std::size_t i) {
  CentralityReport out{delta, {i}, {true}, std::nullopt, std::nullopt};
  std::size_t const p = r.shape().position(i);
  std::vector<Element> l(r.vertex_count());
  for (std::size_t t = 0; t < r.size(); ++t) {
    r.labels_of(t, l);
    if (violates(l, delta, p)) {
      out.passed[0] = false;
      out.witness = r.member(t);
      out.witness_direction = i;
      break;
    }
  }
  return out;
}

CentralityReport has_centrality(CubeRelation const& r, Congruence const& delta) {
  CentralityReport out{delta, {}, {}, std::nullopt, std::nullopt};
  for (auto i : r.shape()) {
    auto one = has_centrality(r, delta, i);
    out.directions.push_back(i);
    out.passed.push_back(one.passed[0]);
    if (!out.witness && one.witness) {
      out.witness = std::move(one.witness);
      out.witness_direction = i;
    }
  }
  return out;
}

Congruence centrality_closure(FiniteAlgebra const& alg, CubeRelation const& r) {
  Congruence delta = Congruence::identity(alg.size());
  std::vector<Element> l(r.vertex_count());
  Vertex const top = static_cast<Vertex>(r.vertex_count() - 1);
  while (true) {
    std::vector<std::pair<Element, Element>> forced;
    for (std::size_t t = 0; t < r.size(); ++t) {
      r.labels_of(t, l);
      for (std::size_t p = 0; p < r.dimension(); ++p) {
        if (violates(l, delta, p)) {
          forced.emplace_back(l[top & ~(Vertex{1} << p)], l[top]);
        }
      }
    }
    if (forced.empty()) {
      return delta;
    }
    delta = cg(alg, delta, forced);
  }
}

Congruence tc_commutator(FiniteAlgebra const& alg, IndexSet const& shape,
                         std::span<Congruence const> thetas, ClosureOptions options) {
  require_commutator_shape(shape, thetas);
  return centrality_closure(alg, generate_M(alg, shape, thetas, options));
}

Congruence hypercommutator(FiniteAlgebra const& alg, IndexSet const& shape,
                           std::span<Congruence const> thetas, ClosureOptions options) {
  require_commutator_shape(shape, thetas);
  return centrality_closure(alg, delta(alg, shape, thetas, options));
}

bool commutator_membership(CubeRelation const& delta_rel, Element x, Element y) {
  return delta_rel.contains(commutator_cube(delta_rel.shape(), x, y));
}

bool commutator_membership(FiniteAlgebra const& alg, IndexSet const& shape,
                           std::span<Congruence const> thetas, Element x, Element y,
                           ClosureOptions options) {
  require_commutator_shape(shape, thetas);
  return commutator_membership(delta(alg, shape, thetas, options), x, y);
}

CommutatorCache::CommutatorCache(FiniteAlgebra const& alg, ClosureOptions options)
    : alg_(alg), options_(options) {}

CubeRelation const& CommutatorCache::m(std::span<Congruence const> thetas) {
  auto key = key_of(thetas);
  auto it = m_.find(key);
  if (it == m_.end()) {
    auto r = generate_M(alg_, IndexSet::range(thetas.size()), thetas, options_);
    it = m_.emplace(std::move(key), std::move(r)).first;
  }
  return it->second;
}

CubeRelation const& CommutatorCache::delta(std::span<Congruence const> thetas) {
  auto key = key_of(thetas);
  auto it = delta_.find(key);
  if (it == delta_.end()) {
    auto r = hcomm::tc(m(thetas), options_.member_cap);
    it = delta_.emplace(std::move(key), std::move(r)).first;
  }
  return it->second;
}

Congruence const& CommutatorCache::tc(std::span<Congruence const> thetas) {
  require_commutator_shape(IndexSet::range(thetas.size()), thetas);
  auto key = key_of(thetas);
  auto it = tc_.find(key);
  if (it == tc_.end()) {
    auto c = centrality_closure(alg_, m(thetas));
    it = tc_.emplace(std::move(key), std::move(c)).first;
  }
  return it->second;
}

Congruence const& CommutatorCache::hyper(std::span<Congruence const> thetas) {
  require_commutator_shape(IndexSet::range(thetas.size()), thetas);
  auto key = key_of(thetas);
  auto it = hyper_.find(key);
  if (it == hyper_.end()) {
    auto c = centrality_closure(alg_, delta(thetas));
    it = hyper_.emplace(std::move(key), std::move(c)).first;
  }
  return it->second;
}

CommutatorComparison check_tc_equals_hyper(CommutatorCache& cache, DaySequence const& day,
                                           std::span<Congruence const> thetas) {
  if (!day.verified) {
    throw HypothesisUnmet("no verified Day terms");
  }
  CommutatorComparison out{cache.tc(thetas), cache.hyper(thetas)};
  out.equal = out.tc == out.hyper;
  return out;
}

NestedReport check_hc8(CommutatorCache& cache, DaySequence const& day,
                       std::span<Congruence const> thetas, std::size_t split, NestingShape shape) {
  if (!day.verified) {
    throw HypothesisUnmet("no verified Day terms");
  }
  std::size_t const n = thetas.size();
  std::vector<Congruence> inner_args;
  std::vector<Congruence> outer_args;
  if (shape == NestingShape::suffix) {
    if (split < 1 || split + 2 > n) {
      throw InvalidArgument("suffix split " + std::to_string(split) + " out of range for " +
                            std::to_string(n) + " congruences");
    }
    inner_args.assign(thetas.begin() + split, thetas.end());
  } else {
    if (split < 2 || split + 1 > n) {
      throw InvalidArgument("prefix split " + std::to_string(split) + " out of range for " +
                            std::to_string(n) + " congruences");
    }
    inner_args.assign(thetas.begin(), thetas.begin() + split);
  }
  auto const inner = cache.tc(inner_args);
  if (shape == NestingShape::suffix) {
    outer_args.assign(thetas.begin(), thetas.begin() + split);
    outer_args.push_back(inner);
  } else {
    outer_args.push_back(inner);
    outer_args.insert(outer_args.end(), thetas.begin() + split, thetas.end());
  }
  NestedReport out{inner, cache.tc(outer_args), cache.tc(thetas)};
  out.holds = out.nested.leq(out.flat);
  return out;
}

}  // namespace hcomm
