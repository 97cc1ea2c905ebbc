#include "hcomm/recursion.hpp"

#include "hcomm/error.hpp"

namespace hcomm {

namespace {

std::vector<Congruence> restrict_thetas(IndexSet const& shape, std::span<Congruence const> thetas,
                                        IndexSet const& sub) {
  std::vector<Congruence> out;
  for (auto k : sub) {
    out.push_back(thetas[shape.position(k)]);
  }
  return out;
}

}  // namespace

GlueData glue_data(FiniteAlgebra const& alg, IndexSet const& shape,
                   std::span<Congruence const> thetas, IndexSet const& q,
                   ClosureOptions options) {
  if (thetas.size() != shape.size()) {
    throw InvalidArgument("need one congruence per direction");
  }
  if (!q.subset_of(shape)) {
    throw InvalidArgument("Q = " + q.to_string() + " is not a subset of " + shape.to_string());
  }
  IndexSet const rest = shape.minus(q);
  auto base_rel = delta(alg, rest, restrict_thetas(shape, thetas, rest), options);
  GlueData out{make_derived_algebra(alg, base_rel, options.member_cap), {}};
  std::size_t const m = out.base.universe.size();
  for (auto i : q) {
    IndexSet const t = rest.unite(IndexSet(std::vector{i}));
    auto const r = delta(alg, t, restrict_thetas(shape, thetas, t), options);
    PartitionBuilder pb(m);
    auto const pairs = face_pairs(r, i);
    for (auto const& [a, b] : pairs) {
      std::size_t const ia = out.base.universe.index_of(a);
      std::size_t const ib = out.base.universe.index_of(b);
      if (ia == m || ib == m) {
        throw InvalidArgument("face of the direction " + std::to_string(i) +
                              " relation leaves the base relation");
      }
      pb.unite(static_cast<Element>(ia), static_cast<Element>(ib));
    }
    auto alpha = pb.build();
    if (alpha.pair_count() != pairs.size()) {
      throw InvalidArgument("face relation in direction " + std::to_string(i) +
                            " is not an equivalence on the base relation");
    }
    out.alphas.push_back(std::move(alpha));
  }
  return out;
}

CubeRelation delta_via_glue_recursion(FiniteAlgebra const& alg, IndexSet const& shape,
                                      std::span<Congruence const> thetas, IndexSet const& q,
                                      ClosureOptions options) {
  if (q.size() <= 1 || q.size() == shape.size()) {
    if (!q.subset_of(shape)) {
      throw InvalidArgument("Q = " + q.to_string() + " is not a subset of " + shape.to_string());
    }
    return delta(alg, shape, thetas, options);
  }
  auto const data = glue_data(alg, shape, thetas, q, options);
  auto const top = delta(data.base.algebra, q, data.alphas, options);
  IndexSet const rest = shape.minus(q);
  std::vector<Cube> cubes;
  cubes.reserve(top.size());
  std::vector<Element> idx(top.vertex_count());
  for (std::size_t t = 0; t < top.size(); ++t) {
    top.labels_of(t, idx);
    NestedCube nested{q, rest, {}};
    for (auto e : idx) {
      nested.labels.push_back(data.base.universe.member(e));
    }
    cubes.push_back(glue(nested));
  }
  return CubeRelation::from_cubes(shape, alg.size(), cubes);
}

bool promote_almost_congruence(FiniteAlgebra const& alg, CubeRelation const& r) {
  if (r.dimension() < 2) {
    throw PreconditionViolation("relation must have dimension at least 2");
  }
  if (!is_n_tolerance(alg, r)) {
    throw PreconditionViolation("relation is not a tolerance");
  }
  bool some_transitive = false;
  for (auto k : r.shape()) {
    if (!is_n_congruence(alg, face_relation(r, k, 0))) {
      throw PreconditionViolation("0-face in direction " + std::to_string(k) +
                                  " is not a congruence");
    }
    some_transitive = some_transitive || is_transitive(r, k);
  }
  if (!some_transitive) {
    throw PreconditionViolation("relation is transitive in no direction");
  }
  return is_n_congruence(alg, r);
}

}  // namespace hcomm
