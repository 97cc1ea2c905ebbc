#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hcomm/algebra.hpp"
#include "hcomm/commutator.hpp"
#include "hcomm/day.hpp"
#include "hcomm/kiss.hpp"

namespace hcomm {

enum class CheckStatus { pass, fail, hypothesis_unmet };

std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  // Theta tuples (or other top-level instances) examined.
  std::size_t instances = 0;
  // Individual implications or comparisons evaluated.
  std::size_t checked = 0;
  // False when part of the check was sampled.
  bool exhaustive = true;
  // One line per sub-result, e.g. per dimension or split point.
  std::vector<std::string> details;
  // First counterexample, or why the hypothesis is unmet.
  std::string witness;
};

struct VerifyOptions {
  // Dimensions 2..max_n (1..max_n where dimension 1 makes sense).
  std::size_t max_n = 3;
  TermSearchCaps caps{};
  // Sample count and seed for sampled parts.
  std::size_t budget = 10000;
  std::uint64_t seed = 1;
  // Enumerate up to this many candidates before sampling.
  std::size_t exhaustive_limit = std::size_t{1} << 22;
  std::size_t clone_arity = 2;
  std::vector<NestingShape> nesting{NestingShape::suffix, NestingShape::prefix};
  // Known witnesses, e.g. from a cache. Both are re-checked before use; a
  // rejected witness falls back to the search.
  std::optional<std::vector<Term>> day_terms;
  std::optional<Term> kiss_term;
  // Algebras compared with the subject by the shared-Delta check; the subject
  // itself is always included.
  std::vector<FiniteAlgebra> others;
  ClosureOptions closure{};
};

// Property suites over one algebra, all theta tuples from its congruence
// lattice. Day terms and Kiss terms are searched once, on first need.
class Verifier {
 public:
  Verifier(FiniteAlgebra alg, VerifyOptions options = {});
  ~Verifier();

  // rotation, centrality-transfer, composition, tc-hyper, nested, almost-2,
  // almost-n, glue, completion-2, kiss-lemma, completion, shift, membership,
  // shared-delta, clone-slice
  static std::vector<std::string> const& check_names();

  CheckResult run(std::string const& name);

  FiniteAlgebra const& algebra() const;
  VerifyOptions const& options() const;
  std::vector<Congruence> const& lattice();
  // nullptr when the search within caps finds none.
  DaySequence const* day();
  KissTower const* tower();
  CommutatorCache& cache();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hcomm
