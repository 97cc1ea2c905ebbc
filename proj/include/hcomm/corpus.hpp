#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hcomm/algebra.hpp"

namespace hcomm::corpus {

// Groups carry the operations mul (binary), inv (unary) and e (nullary).
FiniteAlgebra cyclic_group(std::size_t n);
// Z_n x Z_m with (a, b) encoded as a + n*b.
FiniteAlgebra cyclic_product(std::size_t n, std::size_t m);
// Dihedral group of order 2n: r^k is k, s r^k is n + k.
FiniteAlgebra dihedral_group(std::size_t n);
FiniteAlgebra symmetric_group_3();

// meet, join
FiniteAlgebra chain_lattice(std::size_t n);
// The lattice of subsets of a 2-element set, subsets as bitmasks.
FiniteAlgebra boolean_lattice_2x2();
// A carrier with no operations.
FiniteAlgebra bare_set(std::size_t n);

// Z4 with the extra unary operation neg(x) = -x.
FiniteAlgebra z4_with_negation();
// Z4 as a ring: the group operations plus multiplication "times".
FiniteAlgebra z4_ring();
// Z2 x Z2 with the extra ternary operation x + y + z.
FiniteAlgebra z2sq_with_ternary_sum();
// Z2 x Z2 as the product ring F2 x F2: the group operations plus "times".
FiniteAlgebra z2sq_ring();

struct Entry {
  std::string name;
  FiniteAlgebra algebra;
  bool is_group;
  bool is_lattice;
};

// Z2, Z3, Z4, Z2xZ2, S3, D4, L2, B2x2, Set2, in this order.
std::vector<Entry> builtin();
// Throws InvalidArgument for an unknown name.
FiniteAlgebra builtin_algebra(std::string const& name);

}  // namespace hcomm::corpus
