#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hcomm {

// Elements of a finite carrier are the integers [0, size).
using Element = std::uint32_t;

// A total operation on {0,..,size-1}. The table is flattened over argument
// tuples in colexicographic order: the first argument varies fastest, so
// (a_0,..,a_{k-1}) sits at index a_0 + size*a_1 + ... + size^{k-1}*a_{k-1}.
class OperationTable {
 public:
  OperationTable(std::string name, std::size_t arity, std::size_t size,
                 std::vector<Element> table);

  std::string const& name() const noexcept { return name_; }
  std::size_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return size_; }
  std::span<Element const> table() const noexcept { return table_; }

  Element operator[](std::size_t flat_index) const { return table_[flat_index]; }
  Element apply(std::span<Element const> args) const;

  static std::size_t flat_index(std::span<Element const> args, std::size_t size);
  static void unflatten(std::size_t index, std::size_t size, std::span<Element> args);

  // Same carrier size, arity and table; the name is ignored.
  bool same_function(OperationTable const& other) const noexcept {
    return arity_ == other.arity_ && size_ == other.size_ && table_ == other.table_;
  }

  bool operator==(OperationTable const&) const = default;

 private:
  std::string name_;
  std::size_t arity_;
  std::size_t size_;
  std::vector<Element> table_;
};

class FiniteAlgebra {
 public:
  FiniteAlgebra(std::string name, std::size_t size, std::vector<OperationTable> operations);

  std::string const& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return size_; }
  std::vector<OperationTable> const& operations() const noexcept { return operations_; }

  std::optional<std::size_t> find_operation(std::string const& name) const;
  // Throws InvalidArgument for an unknown symbol.
  std::size_t operation_index(std::string const& name) const;
  OperationTable const& operation(std::string const& name) const {
    return operations_[operation_index(name)];
  }

  std::size_t max_arity() const noexcept;

  // Same carrier and a superset of operation names with identical tables.
  bool extends(FiniteAlgebra const& other) const;

  FiniteAlgebra with_operation(OperationTable op, std::string new_name = {}) const;

  bool operator==(FiniteAlgebra const&) const = default;

 private:
  std::string name_;
  std::size_t size_;
  std::vector<OperationTable> operations_;
};

// True iff the binary table is associative.
bool is_associative(OperationTable const& op);

}  // namespace hcomm
