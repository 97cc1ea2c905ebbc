#include "hcomm/algebra.hpp"

#include <algorithm>
#include <set>

#include "hcomm/error.hpp"

namespace hcomm {

std::size_t checked_pow(std::size_t base, std::size_t exponent, std::size_t limit) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > limit / base) {
      throw ResourceError("size " + std::to_string(base) + "^" + std::to_string(exponent) +
                          " exceeds the limit " + std::to_string(limit));
    }
    result *= base;
  }
  return result;
}

OperationTable::OperationTable(std::string name, std::size_t arity, std::size_t size,
                               std::vector<Element> table)
    : name_(std::move(name)), arity_(arity), size_(size), table_(std::move(table)) {
  if (size_ == 0) {
    throw InvalidArgument("operation '" + name_ + "': carrier size must be positive");
  }
  std::size_t const expected = checked_pow(size_, arity_, std::size_t{1} << 32);
  if (table_.size() != expected) {
    throw InvalidArgument("operation '" + name_ + "': table has " +
                          std::to_string(table_.size()) + " entries, expected " +
                          std::to_string(expected));
  }
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] >= size_) {
      throw InvalidArgument("operation '" + name_ + "': entry " + std::to_string(i) +
                            " is " + std::to_string(table_[i]) + ", outside the carrier");
    }
  }
}

std::size_t OperationTable::flat_index(std::span<Element const> args, std::size_t size) {
  std::size_t index = 0;
  for (std::size_t k = args.size(); k-- > 0;) {
    index = index * size + args[k];
  }
  return index;
}

void OperationTable::unflatten(std::size_t index, std::size_t size, std::span<Element> args) {
  for (auto& a : args) {
    a = static_cast<Element>(index % size);
    index /= size;
  }
}

Element OperationTable::apply(std::span<Element const> args) const {
  if (args.size() != arity_) {
    throw InvalidArgument("operation '" + name_ + "' has arity " + std::to_string(arity_) +
                          ", got " + std::to_string(args.size()) + " arguments");
  }
  for (auto a : args) {
    if (a >= size_) {
      throw InvalidArgument("operation '" + name_ + "': argument " + std::to_string(a) +
                            " outside the carrier");
    }
  }
  return table_[flat_index(args, size_)];
}

FiniteAlgebra::FiniteAlgebra(std::string name, std::size_t size,
                             std::vector<OperationTable> operations)
    : name_(std::move(name)), size_(size), operations_(std::move(operations)) {
  if (size_ == 0) {
    throw InvalidArgument("algebra '" + name_ + "': size must be at least 1");
  }
  std::set<std::string> names;
  for (auto const& op : operations_) {
    if (op.size() != size_) {
      throw InvalidArgument("algebra '" + name_ + "': operation '" + op.name() +
                            "' is defined on a carrier of size " + std::to_string(op.size()));
    }
    if (!names.insert(op.name()).second) {
      throw InvalidArgument("algebra '" + name_ + "': duplicate operation name '" + op.name() +
                            "'");
    }
  }
}

std::optional<std::size_t> FiniteAlgebra::find_operation(std::string const& name) const {
  for (std::size_t i = 0; i < operations_.size(); ++i) {
    if (operations_[i].name() == name) {
      return i;
    }
  }
  return std::nullopt;
}

std::size_t FiniteAlgebra::operation_index(std::string const& name) const {
  auto idx = find_operation(name);
  if (!idx) {
    throw InvalidArgument("algebra '" + name_ + "' has no operation named '" + name + "'");
  }
  return *idx;
}

std::size_t FiniteAlgebra::max_arity() const noexcept {
  std::size_t m = 0;
  for (auto const& op : operations_) {
    m = std::max(m, op.arity());
  }
  return m;
}

bool FiniteAlgebra::extends(FiniteAlgebra const& other) const {
  if (size_ != other.size_) {
    return false;
  }
  return std::all_of(other.operations_.begin(), other.operations_.end(), [&](auto const& op) {
    auto idx = find_operation(op.name());
    return idx && operations_[*idx].same_function(op);
  });
}

FiniteAlgebra FiniteAlgebra::with_operation(OperationTable op, std::string new_name) const {
  auto ops = operations_;
  ops.push_back(std::move(op));
  return FiniteAlgebra(new_name.empty() ? name_ + "+" + ops.back().name() : std::move(new_name),
                       size_, std::move(ops));
}

bool is_associative(OperationTable const& op) {
  if (op.arity() != 2) {
    return false;
  }
  std::size_t const n = op.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Element const ab = op[a + n * b];
      for (std::size_t c = 0; c < n; ++c) {
        if (op[ab + n * c] != op[a + n * op[b + n * c]]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace hcomm
