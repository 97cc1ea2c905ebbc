#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hcomm/algebra.hpp"

namespace hcomm {

// A formal term over an algebra's signature. Immutable; subterms are shared.
class Term {
 public:
  static Term variable(std::size_t index);
  static Term apply(std::string op, std::vector<Term> args);

  bool is_variable() const noexcept;
  std::size_t variable_index() const;
  std::string const& symbol() const;
  std::span<Term const> args() const;

  // Variables have depth 0; an operation node has depth 1 + max child depth,
  // so constants sit at depth 1.
  std::size_t depth() const noexcept;
  // One more than the largest variable index, 0 for closed terms.
  std::size_t variable_bound() const noexcept;
  std::size_t node_count() const noexcept;

  // Replace x_i by replacements[i].
  Term substitute(std::span<Term const> replacements) const;

  // Prefix form: mul(x0,inv(x1)), constants as e().
  std::string to_string() const;
  static Term parse(std::string const& text);

  bool operator==(Term const& other) const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<Node const> node) : node_(std::move(node)) {}
  std::shared_ptr<Node const> node_;
};

// Value of t under the assignment x_i -> assignment[i].
Element eval_term(FiniteAlgebra const& alg, Term const& t, std::span<Element const> assignment);

// The induced term operation of the given arity (variables must be < arity).
OperationTable term_table(FiniteAlgebra const& alg, Term const& t, std::size_t arity,
                          std::string name = "t");

// lhs and rhs agree on all size^arity assignments.
bool check_identity(FiniteAlgebra const& alg, Term const& lhs, Term const& rhs,
                    std::size_t arity);

struct TermOperation {
  Term term;
  OperationTable table;
};

struct TermSearchCaps {
  std::size_t depth_cap = 3;
  std::size_t count_cap = 50000;
};

struct TermEnumerationInfo {
  std::size_t depth_reached = 0;
  // The count cap stopped generation before the depth cap was reached.
  bool truncated = false;
  // A whole depth level produced nothing new: the list is every term
  // operation of this arity.
  bool saturated = false;
  // The visitor asked to stop.
  bool stopped = false;
};

struct TermEnumeration {
  std::vector<TermOperation> operations;
  TermEnumerationInfo info;
};

// Canonical order: by depth, then operation symbol order, then children
// lexicographically by their position in the list. Terms inducing an
// already-seen table are dropped. The visitor returns false to stop.
TermEnumerationInfo for_each_term_operation(
    FiniteAlgebra const& alg, std::size_t arity, TermSearchCaps caps,
    std::function<bool(TermOperation const&)> const& visit);

TermEnumeration enumerate_term_operations(FiniteAlgebra const& alg, std::size_t arity,
                                          TermSearchCaps caps);

}  // namespace hcomm
