#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <unordered_set>
#include <vector>

#include "hcomm/algebra.hpp"
#include "hcomm/relation.hpp"

namespace hcomm {

// Membership set for cube codes: a dense bitset when the code space is
// small, a hash set otherwise.
class CodeSet {
 public:
  explicit CodeSet(std::uint64_t code_space);

  // Returns true if the code was newly inserted.
  bool insert(std::uint64_t code);
  bool contains(std::uint64_t code) const;

 private:
  bool dense_;
  std::vector<std::uint64_t> bits_;
  std::unordered_set<std::uint64_t> sparse_;
};

// Incremental subuniverse generation in alg^m. Generators may be added
// between runs; the members found so far stay valid.
//
// An associative binary operation is closed by right translations with the
// elements it did not produce itself; every other operation is closed
// semi-naively (each tuple involving a new element is evaluated once).
class SubpowerClosure {
 public:
  SubpowerClosure(FiniteAlgebra const& alg, IndexSet const& shape, ClosureOptions options = {});
  ~SubpowerClosure();

  // Stops generation as soon as an element outside `bound` appears.
  void set_bound(CubeRelation const* bound) { bound_ = bound; }

  // Adds labels (and, with coordinate maps, its orbit) and runs to a fixpoint.
  // Returns false when an element escaped the bound.
  bool add_generator(std::span<Element const> labels);

  bool contains(std::span<Element const> labels) const;
  std::size_t size() const noexcept;

  CubeRelation relation() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  CubeRelation const* bound_ = nullptr;
};

}  // namespace hcomm
