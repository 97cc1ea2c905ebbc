#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hcomm/algebra.hpp"

namespace hcomm {

// A partition of {0,..,n-1} stored as the map element -> least element of
// its block. Equal partitions have equal maps, so == is exact.
class Congruence {
 public:
  // reps must already be canonical (reps[a] <= a, reps[reps[a]] == reps[a]).
  explicit Congruence(std::vector<Element> reps);

  static Congruence identity(std::size_t n);
  static Congruence total(std::size_t n);
  static Congruence from_blocks(std::size_t n, std::vector<std::vector<Element>> const& blocks);
  // Parses "0 2|1 3".
  static Congruence parse(std::size_t n, std::string const& text);

  std::size_t carrier_size() const noexcept { return reps_.size(); }
  Element representative(Element a) const { return reps_[a]; }
  std::span<Element const> representatives() const noexcept { return reps_; }
  bool related(Element a, Element b) const { return reps_[a] == reps_[b]; }

  std::size_t block_count() const noexcept;
  std::vector<std::vector<Element>> blocks() const;
  // Number of related ordered pairs.
  std::size_t pair_count() const;

  bool is_identity() const noexcept { return block_count() == reps_.size(); }
  bool is_total() const noexcept { return block_count() == 1; }

  // Containment as relations.
  bool leq(Congruence const& other) const;

  // Blocks separated by '|', elements by spaces, blocks sorted by least element.
  std::string to_string() const;

  auto operator<=>(Congruence const&) const = default;

 private:
  std::vector<Element> reps_;
};

Congruence join(Congruence const& a, Congruence const& b);
Congruence meet(Congruence const& a, Congruence const& b);

// Union-find builder that produces canonical partitions.
class PartitionBuilder {
 public:
  explicit PartitionBuilder(std::size_t n);
  explicit PartitionBuilder(Congruence const& start);

  Element find(Element a);
  // Returns true if two classes merged.
  bool unite(Element a, Element b);
  Congruence build();

 private:
  std::vector<Element> parent_;
};

// Least congruence of alg containing the pairs (and start, when given).
Congruence cg(FiniteAlgebra const& alg, std::span<std::pair<Element, Element> const> pairs);
Congruence cg(FiniteAlgebra const& alg, Congruence const& start,
              std::span<std::pair<Element, Element> const> pairs);

bool is_compatible(FiniteAlgebra const& alg, Congruence const& theta);
bool is_compatible(OperationTable const& op, Congruence const& theta);

struct CongruenceBounds {
  std::size_t base_size = 8;
  std::size_t derived_size = 4096;
};

// The congruence lattice as the join closure of all principal congruences.
// Ordered by decreasing block count, then by representative map. Throws
// ResourceError when alg.size() exceeds `max_size`.
std::vector<Congruence> all_congruences(FiniteAlgebra const& alg, std::size_t max_size = 8);

}  // namespace hcomm
