#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hcomm/algebra.hpp"

namespace hcomm {

// A finite sorted duplicate-free set of natural numbers; the directions of a cube.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<std::size_t> items);
  explicit IndexSet(std::vector<std::size_t> items);

  // {0, .., n-1}
  static IndexSet range(std::size_t n);

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  std::size_t operator[](std::size_t p) const { return items_[p]; }
  std::span<std::size_t const> items() const noexcept { return items_; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  bool contains(std::size_t i) const noexcept;
  // Position of i in sorted order; throws InvalidArgument when absent.
  std::size_t position(std::size_t i) const;

  IndexSet without(std::size_t i) const;
  IndexSet minus(IndexSet const& other) const;
  IndexSet unite(IndexSet const& other) const;
  bool subset_of(IndexSet const& other) const;

  // "{0,1,2}"
  std::string to_string() const;

  auto operator<=>(IndexSet const&) const = default;

 private:
  std::vector<std::size_t> items_;
};

// A vertex f in 2^S is a bitmask: bit p holds f(S[p]). Ordering masks as
// integers is the colexicographic order on 2^S.
using Vertex = std::uint32_t;

// Maximum cube dimension supported by the vertex encoding.
inline constexpr std::size_t max_dimension = 16;

// Inserts bit b at position p of a mask over n-1 positions.
constexpr Vertex insert_bit(Vertex g, std::size_t p, unsigned b) noexcept {
  Vertex const low = g & ((Vertex{1} << p) - 1);
  Vertex const high = (g >> p) << (p + 1);
  return high | (Vertex{b} << p) | low;
}

// Deletes position p of a mask.
constexpr Vertex remove_bit(Vertex f, std::size_t p) noexcept {
  Vertex const low = f & ((Vertex{1} << p) - 1);
  return ((f >> (p + 1)) << p) | low;
}

// An element of A^(2^S): labels in colex vertex order.
class Cube {
 public:
  Cube(IndexSet shape, std::vector<Element> labels);
  static Cube constant(IndexSet shape, Element x);

  IndexSet const& shape() const noexcept { return shape_; }
  std::size_t dimension() const noexcept { return shape_.size(); }
  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::span<Element const> labels() const noexcept { return labels_; }
  Element operator[](Vertex f) const { return labels_[f]; }

  Element zero_label() const { return labels_.front(); }
  Element one_label() const { return labels_.back(); }
  bool is_constant() const noexcept;

  // Comma-separated labels in colex order.
  std::string to_string() const;

  auto operator<=>(Cube const&) const = default;

 private:
  IndexSet shape_;
  std::vector<Element> labels_;
};

// Restriction to f(i) = j, reindexed over S\{i}.
Cube face(Cube const& c, std::size_t i, unsigned j);
// Replaces the (1-j)-face in direction i by a copy of the j-face.
Cube refl(Cube const& c, std::size_t i, unsigned j);
// Swaps the two faces in direction i.
Cube sym(Cube const& c, std::size_t i);

// A cube over the outer shape whose labels are cubes over a disjoint inner
// shape.
struct NestedCube {
  IndexSet outer;
  IndexSet inner;
  // Indexed by outer vertex, each over `inner`.
  std::vector<Cube> labels;

  auto operator<=>(NestedCube const&) const = default;
};

// cut(Q, c) regards c over S as a cube over Q of cubes over S\Q.
NestedCube cut(IndexSet const& q, Cube const& c);
// Inverse of cut.
Cube glue(NestedCube const& nested);

// An i-direction edge: base vertex g over S\{i} and the pair
// <c[g with i->0], c[g with i->1]>.
struct Line {
  std::size_t direction;
  Vertex base;
  Element first;
  Element second;

  bool is_constant() const noexcept { return first == second; }
  auto operator<=>(Line const&) const = default;
};

// All i-lines (cross-section lines), bases in colex order. lines(c, i) is
// cut(S\{i}, c) with the inner 1-cubes read as pairs.
std::vector<Line> lines(Cube const& c, std::size_t i);
// The i-line at base 1 on S\{i}.
Line pivot_line(Cube const& c, std::size_t i);
// Every i-line except the pivot.
std::vector<Line> supporting_lines(Cube const& c, std::size_t i);
std::vector<Line> cross_section_lines(Cube const& c, std::size_t i);

// The 2x2 face at base g over S\{i,j}, laid out with i horizontal and j
// vertical: corners = (c[0,0], c[1,0], c[0,1], c[1,1]) in (i, j) coordinates.
struct Square {
  Vertex base;
  std::array<Element, 4> corners;

  auto operator<=>(Square const&) const = default;
};

std::vector<Square> cross_section_squares(Cube const& c, std::size_t i, std::size_t j);

// cube_k(x, y): y where f(k) = 1, x elsewhere.
Cube cube_generator(IndexSet const& shape, std::size_t k, Element x, Element y);
// com(x, y): y at the all-ones vertex, x elsewhere.
Cube commutator_cube(IndexSet const& shape, Element x, Element y);

// Pointwise application of a k-ary operation to k cubes of one shape.
Cube apply_pointwise(OperationTable const& op, std::span<Cube const> args);

}  // namespace hcomm
