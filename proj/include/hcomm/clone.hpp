#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hcomm/algebra.hpp"
#include "hcomm/commutator.hpp"
#include "hcomm/day.hpp"
#include "hcomm/relation.hpp"

namespace hcomm {

// Member indices fed to the operation and the cube it produced.
struct PreservationWitness {
  std::vector<std::size_t> members;
  Cube image;
};

// Whether op, applied coordinatewise to members of r, always yields members.
std::optional<PreservationWitness> preservation_violation(CubeRelation const& r,
                                                          OperationTable const& op);
inline bool preserves(CubeRelation const& r, OperationTable const& op) {
  return !preservation_violation(r, op).has_value();
}

struct PolymorphismSet {
  std::size_t arity = 0;
  // Ordered lexicographically by flattened table.
  std::vector<OperationTable> operations;

  bool contains(OperationTable const& op) const;
};

// All arity-ary operations on the carrier preserving r, by backtracking over
// table entries. Throws ResourceError beyond `cap` operations.
PolymorphismSet polymorphisms(CubeRelation const& r, std::size_t arity,
                              std::size_t cap = std::size_t{1} << 16);

// A over the same universe with every listed operation as a basic operation.
FiniteAlgebra slice_algebra(std::string name, std::size_t size,
                            std::span<PolymorphismSet const> slices);

struct CloneSliceReport {
  std::vector<PolymorphismSet> slices;
  bool day_terms_preserve = false;
  // False when |R|^4 exceeded the direct limit and preservation was derived
  // from the operation symbols occurring in the Day terms.
  bool day_terms_direct = true;
  bool basic_operations_included = false;
  bool thetas_compatible = false;
  bool delta_reproduced = false;
  // For every T subset of S with |T| >= 2, in increasing bitmask order.
  std::vector<bool> commutators_agree;

  bool all_passed() const;
};

// Polymorphisms of Delta_A(thetas) up to arity_bound and the checks that the
// slice behaves like the greatest clone with the same Delta.
CloneSliceReport greatest_clone_slice(FiniteAlgebra const& alg, DaySequence const& day,
                                      std::span<Congruence const> thetas,
                                      std::size_t arity_bound = 2,
                                      std::size_t cap = std::size_t{1} << 16,
                                      std::size_t direct_limit = std::size_t{1} << 24);

struct SharedDeltaReport {
  bool commutators_equal = false;
  bool deltas_equal = false;

  bool biconditional() const noexcept { return commutators_equal == deltas_equal; }
};

// Both sides of: [theta_T]_A = [theta_T]_B for all T subset of S iff
// Delta_A(thetas) = Delta_B(thetas). Throws HypothesisUnmet unless the
// algebras share a universe, the thetas, and the Day terms' operations.
SharedDeltaReport check_shared_delta(FiniteAlgebra const& a, FiniteAlgebra const& b,
                                     DaySequence const& day, std::span<Congruence const> thetas);

}  // namespace hcomm
