#pragma once

#include <span>

#include "hcomm/congruence.hpp"
#include "hcomm/cube.hpp"
#include "hcomm/relation.hpp"

namespace hcomm {

// Delta(thetas) over S assembled from lower-dimensional pieces: with
// D = Delta(theta_j : j in S\Q) as an algebra and alpha_i the face relation
// of Delta(theta_j : j in {i} u S\Q) on D, glue_Q of Delta_D(alpha_i : i in Q).
// Falls back to delta() when |Q| is 0, 1 or |S|.
CubeRelation delta_via_glue_recursion(FiniteAlgebra const& alg, IndexSet const& shape,
                                      std::span<Congruence const> thetas, IndexSet const& q,
                                      ClosureOptions options = {});

// The congruences alpha_i above, on the derived algebra over S\Q.
struct GlueData {
  DerivedAlgebra base;
  std::vector<Congruence> alphas;
};
GlueData glue_data(FiniteAlgebra const& alg, IndexSet const& shape,
                   std::span<Congruence const> thetas, IndexSet const& q,
                   ClosureOptions options = {});

// For an (n)-tolerance whose 0-faces are (n-1)-congruences and which is
// transitive in some direction: whether R is an (n)-congruence. Throws
// PreconditionViolation naming the unmet hypothesis.
bool promote_almost_congruence(FiniteAlgebra const& alg, CubeRelation const& r);

}  // namespace hcomm
