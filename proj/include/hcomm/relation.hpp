#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hcomm/algebra.hpp"
#include "hcomm/congruence.hpp"
#include "hcomm/cube.hpp"

namespace hcomm {

// Cubes over a fixed shape and carrier encoded as integers:
// code = sum_v label_v * radix^v. Increasing codes are the colex order on
// label tuples.
class CubeCodec {
 public:
  CubeCodec(std::size_t radix, std::size_t vertex_count);

  std::size_t radix() const noexcept { return radix_; }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  // radix^vertex_count
  std::uint64_t code_space() const noexcept { return space_; }

  std::uint64_t encode(std::span<Element const> labels) const;
  void decode(std::uint64_t code, std::span<Element> labels) const;

 private:
  std::size_t radix_;
  std::size_t vertex_count_;
  std::uint64_t space_;
};

// A finite set of cubes over one shape, canonically sorted by code.
class CubeRelation {
 public:
  CubeRelation(IndexSet shape, std::size_t carrier_size, std::vector<std::uint64_t> codes);
  static CubeRelation from_cubes(IndexSet shape, std::size_t carrier_size,
                                 std::span<Cube const> cubes);
  // All constant cubes.
  static CubeRelation diagonal(IndexSet shape, std::size_t carrier_size);
  // A^(2^S); throws ResourceError above `cap` members.
  static CubeRelation full(IndexSet shape, std::size_t carrier_size, std::size_t cap = 1u << 20);

  IndexSet const& shape() const noexcept { return shape_; }
  std::size_t dimension() const noexcept { return shape_.size(); }
  std::size_t vertex_count() const noexcept { return codec_.vertex_count(); }
  std::size_t carrier_size() const noexcept { return codec_.radix(); }
  CubeCodec const& codec() const noexcept { return codec_; }

  std::size_t size() const noexcept { return codes_.size(); }
  std::span<std::uint64_t const> codes() const noexcept { return codes_; }

  Cube member(std::size_t index) const;
  std::vector<Cube> members() const;
  void labels_of(std::size_t index, std::span<Element> out) const {
    codec_.decode(codes_[index], out);
  }

  bool contains_code(std::uint64_t code) const;
  bool contains_labels(std::span<Element const> labels) const {
    return contains_code(codec_.encode(labels));
  }
  bool contains(Cube const& c) const;
  // Position in canonical order, or size() when absent.
  std::size_t index_of(std::uint64_t code) const;

  bool operator==(CubeRelation const& other) const {
    return shape_ == other.shape_ && carrier_size() == other.carrier_size() &&
           codes_ == other.codes_;
  }

 private:
  IndexSet shape_;
  CubeCodec codec_;
  std::vector<std::uint64_t> codes_;
};

struct ClosureOptions {
  std::size_t member_cap = std::size_t{1} << 20;
  // Also close under every refl_i^j and sym_i.
  bool coordinate_maps = true;
};

// The subalgebra of alg^(2^S) generated by the cubes (and, with
// coordinate_maps, closed under reflections and symmetries).
CubeRelation close_relation(FiniteAlgebra const& alg, IndexSet const& shape,
                            std::span<Cube const> generators, ClosureOptions options = {});

// Generators cube_k(x, y) for k in S, <x,y> in thetas[position of k].
std::vector<Cube> m_generators(IndexSet const& shape, std::span<Congruence const> thetas);

// M(thetas): the tolerance generated by m_generators.
CubeRelation generate_M(FiniteAlgebra const& alg, IndexSet const& shape,
                        std::span<Congruence const> thetas, ClosureOptions options = {});

// Transitive closure of R seen as a binary relation between its l-faces.
CubeRelation directional_compose(CubeRelation const& r, std::size_t l,
                                 std::size_t member_cap = std::size_t{1} << 20);

// Cycles directional_compose through the directions in increasing order
// until a full cycle adds nothing.
CubeRelation tc(CubeRelation const& r, std::size_t member_cap = std::size_t{1} << 20);

CubeRelation delta(FiniteAlgebra const& alg, IndexSet const& shape,
                   std::span<Congruence const> thetas, ClosureOptions options = {});

bool is_subalgebra(FiniteAlgebra const& alg, CubeRelation const& r);
bool is_n_reflexive(CubeRelation const& r);
bool is_n_symmetric(CubeRelation const& r);
bool is_transitive(CubeRelation const& r, std::size_t l);
bool is_n_tolerance(FiniteAlgebra const& alg, CubeRelation const& r);
bool is_n_congruence(FiniteAlgebra const& alg, CubeRelation const& r);

// face^j_l(R) as a relation over S\{l}.
CubeRelation face_relation(CubeRelation const& r, std::size_t l, unsigned j);
// The pairs <face^0_l(c), face^1_l(c)> of members, as codes over S\{l}.
std::vector<std::pair<std::uint64_t, std::uint64_t>> face_pairs(CubeRelation const& r,
                                                                 std::size_t l);

// Relation files: header lines "# shape {..}", "# thetas ..", "# carrier n",
// "# members m", then one comma-separated cube per line in canonical order.
std::string write_relation(CubeRelation const& r, std::string const& theta_names);
CubeRelation parse_relation(std::string const& text, std::string const& source = "<relation>");

// A cube power subuniverse treated as an algebra: element i is the i-th
// member in canonical order, operations act pointwise.
struct DerivedAlgebra {
  FiniteAlgebra algebra;
  CubeRelation universe;
};

// Throws InvalidArgument naming an operation and input members when the
// universe is not closed.
DerivedAlgebra make_derived_algebra(FiniteAlgebra const& alg, CubeRelation const& universe,
                                    std::size_t size_cap = 4096);
DerivedAlgebra make_derived_algebra(FiniteAlgebra const& alg, IndexSet const& shape,
                                    std::span<Cube const> universe, std::size_t size_cap = 4096);

}  // namespace hcomm
