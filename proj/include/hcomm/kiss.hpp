#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hcomm/commutator.hpp"
#include "hcomm/congruence.hpp"
#include "hcomm/cube.hpp"
#include "hcomm/relation.hpp"
#include "hcomm/term.hpp"

namespace hcomm {

// Squares (a,b,c,d), colex over {0,1}, with <a,b>, <c,d> in alpha and
// <a,c>, <b,d> in beta.
CubeRelation rect(std::size_t carrier_size, Congruence const& alpha, Congruence const& beta);

// q_n = q2(q_{n-1}(x_0..x_{h-1}), x_{h-1}, q_{n-1}(x_h..x_{2h-1}), x_{2h-1}) with
// h = 2^(n-1); q_2 is q2 itself.
Term build_kiss_n(Term const& q2, std::size_t n);

class KissTower {
 public:
  KissTower(FiniteAlgebra const& alg, Term q2);

  Term const& q2() const noexcept { return q2_; }
  OperationTable const& q2_table() const noexcept { return table_; }
  // The literal term q_n, built on first use.
  Term const& term(std::size_t n);
  // q_n on 2^n labels, following the recursion through the q2 table.
  Element evaluate(std::span<Element const> labels) const;

 private:
  Term q2_;
  OperationTable table_;
  std::map<std::size_t, Term> terms_;
};

// q2(x,x,y,y) = q2(x,y,x,y) = y on alg.
bool kiss_identities_hold(OperationTable const& q2);

struct KissPropertyWitness {
  Congruence alpha;
  Congruence beta;
  std::array<Element, 5> abcdd;
};

// Whether <q2(a,b,c,d), q2(a,b,c,d')> lies in [alpha,beta] for every pair
// of congruences and squares (a,b,c,d), (a,b,c,d') in rect(alpha, beta).
std::optional<KissPropertyWitness> kiss_property_violation(CommutatorCache& cache,
                                                           OperationTable const& q2);

struct KissSearchResult {
  std::optional<Term> q2;
  // Taken from a Mal'cev term p as p(x2, x0, x1).
  bool from_malcev = false;
  TermEnumerationInfo enumeration;
};

// A Mal'cev-derived candidate first, then 4-ary term operations in canonical
// order, accepting the first that passes both checks.
KissSearchResult find_kiss2(CommutatorCache& cache, TermSearchCaps caps = {});

// gamma with its all-ones label replaced by q_n of all labels.
Cube complete_cube(KissTower const& tower, Cube const& c);

// face_i^j(gamma) in Delta(theta_k : k != i) for every i, j.
bool faces_in_lower_deltas(CommutatorCache& cache, std::span<Congruence const> thetas,
                           std::span<Element const> labels);

struct CompletionOptions {
  // Enumerate every candidate up to this many; sample beyond it.
  std::size_t exhaustive_limit = std::size_t{1} << 22;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
};

struct CompletionReport {
  bool holds = true;
  bool exhaustive = true;
  // Qualifying cubes tested.
  std::size_t checked = 0;
  std::optional<Cube> witness;
};

// For every gamma with faces in the lower Deltas, complete_cube(gamma) is in
// Delta(thetas).
CompletionReport check_kiss_completion(CommutatorCache& cache, KissTower const& tower,
                                       std::span<Congruence const> thetas,
                                       CompletionOptions options = {});

// gamma with its all-ones label replaced by q. Throws PreconditionViolation
// unless gamma and com(gamma_1, q) are members of r.
Cube delta_shift(CubeRelation const& r, Cube const& c, Element q);

// Faces in the lower Deltas and <gamma_1, q_n(gamma)> in [thetas].
bool delta_membership(CommutatorCache& cache, KissTower const& tower,
                      std::span<Congruence const> thetas, Cube const& c);

}  // namespace hcomm
