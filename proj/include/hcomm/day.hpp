#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hcomm/algebra.hpp"
#include "hcomm/congruence.hpp"
#include "hcomm/cube.hpp"
#include "hcomm/term.hpp"

namespace hcomm {

// An identity pattern on a 4-ary term: the arguments are the variables
// x_{vars[0]}, .., x_{vars[3]}.
using ArgumentPattern = std::array<std::size_t, 4>;

// The identities a Day sequence m_0, .., m_k must satisfy, as data:
//   m_0 = x_first, m_k = x_last,
//   m_i(fixed[t].first) = x_{fixed[t].second} for every i and t,
//   m_i(even_link) = m_{i+1}(even_link) for even i,
//   m_i(odd_link) = m_{i+1}(odd_link) for odd i.
struct DayScheme {
  std::size_t first = 0;
  std::size_t last = 3;
  std::vector<std::pair<ArgumentPattern, std::size_t>> fixed;
  ArgumentPattern even_link;
  ArgumentPattern odd_link;

  std::string describe() const;
};

// m_0(x,y,z,w) = x, m_k(x,y,z,w) = w, m_i(x,y,y,x) = x,
// m_i(x,x,w,w) = m_{i+1}(x,x,w,w) for even i, m_i(x,y,y,w) = m_{i+1}(x,y,y,w)
// for odd i.
DayScheme standard_day_scheme();

struct DaySequence {
  std::vector<Term> terms;
  // The induced 4-ary operations, in the same order.
  std::vector<OperationTable> tables;
  bool verified = false;

  std::size_t k() const noexcept { return terms.empty() ? 0 : terms.size() - 1; }
};

// Exhaustive check of the scheme on the sequence's tables.
bool satisfies_day_scheme(std::span<OperationTable const> m, DayScheme const& scheme);

// Builds a sequence from terms and verifies it exhaustively.
DaySequence make_day_sequence(FiniteAlgebra const& alg, std::vector<Term> terms,
                              DayScheme const& scheme = standard_day_scheme());

// First ternary term operation in canonical order with p(x,x,y) = p(y,x,x) = y.
std::optional<TermOperation> find_malcev_term(FiniteAlgebra const& alg,
                                              TermSearchCaps caps = {});

struct DaySearchResult {
  std::optional<DaySequence> sequence;
  // Set when the sequence was derived from a Mal'cev term.
  std::optional<Term> malcev;
  // Term enumeration of the 4-ary search (empty when a Mal'cev term sufficed).
  TermEnumerationInfo enumeration;
};

// Tries m_0 = x, m_1 = p(y,z,w), m_2 = w for a Mal'cev term p first; otherwise
// a shortest path search over the 4-ary term operations up to the caps.
DaySearchResult find_day_terms(FiniteAlgebra const& alg, TermSearchCaps caps = {},
                               DayScheme const& scheme = standard_day_scheme());

struct ShiftingReport {
  bool holds = true;
  bool exhaustive = true;
  std::size_t checked = 0;
  // alpha, beta, delta indices into the lattice and x, y, u, v on failure.
  std::optional<std::array<std::size_t, 3>> congruences;
  std::optional<std::array<Element, 4>> elements;
};

// For all alpha, beta, delta with alpha ^ beta <= delta and x alpha y,
// u alpha v, x beta u, y beta v, u delta v: x delta y. Samples `sample_cap`
// configurations with a seeded generator when exhaustive checking is larger.
ShiftingReport shifting_lemma_check(FiniteAlgebra const& alg, std::size_t sample_cap = 1u << 24,
                                    std::uint64_t seed = 1);

// rot^e_{i,j}: pointwise m_e(refl_j^1 c, c, refl_i^0 c, refl_j^1 refl_i^0 c).
Cube shift_rotation(DaySequence const& day, std::size_t e, std::size_t i, std::size_t j,
                    Cube const& c);

// The same on raw colex labels; pi, pj are positions in the shape.
void shift_rotation_labels(OperationTable const& m_e, std::size_t pi, std::size_t pj,
                           std::span<Element const> in, std::span<Element> out);

// c^d: rotations rot_{S[t],S[t+1]}^{d_t} for t = 0, .., |d|-1. Requires |d| < n.
Cube rotate_along_path(DaySequence const& day, Cube const& c, std::span<std::size_t const> d);

}  // namespace hcomm
