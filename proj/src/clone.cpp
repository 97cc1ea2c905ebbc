#include "hcomm/clone.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "hcomm/error.hpp"

namespace hcomm {

namespace {

std::vector<Congruence> select(std::span<Congruence const> thetas, unsigned mask) {
  std::vector<Congruence> out;
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    if (mask >> k & 1u) {
      out.push_back(thetas[k]);
    }
  }
  return out;
}

void collect_symbols(Term const& t, std::set<std::string>& out) {
  if (t.is_variable()) {
    return;
  }
  out.insert(t.symbol());
  for (auto const& a : t.args()) {
    collect_symbols(a, out);
  }
}

}  // namespace

std::optional<PreservationWitness> preservation_violation(CubeRelation const& r,
                                                          OperationTable const& op) {
  std::size_t const k = op.arity();
  std::size_t const m = r.vertex_count();
  std::size_t const count = checked_pow(r.size(), k);
  std::vector<std::vector<Element>> labels(r.size(), std::vector<Element>(m));
  for (std::size_t i = 0; i < r.size(); ++i) {
    r.labels_of(i, labels[i]);
  }
  std::vector<Element> pick(k);
  std::vector<Element> args(k);
  std::vector<Element> out(m);
  for (std::size_t t = 0; t < count; ++t) {
    OperationTable::unflatten(t, r.size(), pick);
    for (std::size_t v = 0; v < m; ++v) {
      for (std::size_t c = 0; c < k; ++c) {
        args[c] = labels[pick[c]][v];
      }
      out[v] = op.apply(args);
    }
    if (!r.contains_labels(out)) {
      return PreservationWitness{std::vector<std::size_t>(pick.begin(), pick.end()),
                                 Cube(r.shape(), out)};
    }
  }
  return std::nullopt;
}

bool PolymorphismSet::contains(OperationTable const& op) const {
  return std::any_of(operations.begin(), operations.end(),
                     [&](OperationTable const& o) { return o.same_function(op); });
}

PolymorphismSet polymorphisms(CubeRelation const& r, std::size_t arity, std::size_t cap) {
  std::size_t const n = r.carrier_size();
  std::size_t const m = r.vertex_count();
  std::size_t const entries = checked_pow(n, arity);
  std::size_t const tuples = checked_pow(r.size(), arity);
  std::vector<std::vector<Element>> labels(r.size(), std::vector<Element>(m));
  for (std::size_t i = 0; i < r.size(); ++i) {
    r.labels_of(i, labels[i]);
  }
  // Each tuple of members becomes the list of table entries it reads, one
  // per vertex; it is checked once its largest entry is assigned.
  std::set<std::vector<std::size_t>> distinct;
  std::vector<Element> pick(arity);
  std::vector<Element> args(arity);
  for (std::size_t t = 0; t < tuples; ++t) {
    OperationTable::unflatten(t, r.size(), pick);
    std::vector<std::size_t> reads(m);
    for (std::size_t v = 0; v < m; ++v) {
      for (std::size_t c = 0; c < arity; ++c) {
        args[c] = labels[pick[c]][v];
      }
      reads[v] = OperationTable::flat_index(args, n);
    }
    distinct.insert(std::move(reads));
  }
  std::vector<std::vector<std::vector<std::size_t>>> due(entries);
  for (auto const& reads : distinct) {
    due[*std::max_element(reads.begin(), reads.end())].push_back(reads);
  }

  PolymorphismSet out;
  out.arity = arity;
  std::vector<Element> table(entries, 0);
  std::vector<Element> image(m);
  auto consistent = [&](std::size_t e) {
    for (auto const& reads : due[e]) {
      for (std::size_t v = 0; v < m; ++v) {
        image[v] = table[reads[v]];
      }
      if (!r.contains_labels(image)) {
        return false;
      }
    }
    return true;
  };
  // Iterative depth-first search; values ascend so tables come out in
  // lexicographic order.
  std::size_t e = 0;
  std::vector<Element> next(entries, 0);
  while (true) {
    if (e == entries) {
      if (out.operations.size() >= cap) {
        throw ResourceError("more than " + std::to_string(cap) + " polymorphisms of arity " +
                            std::to_string(arity));
      }
      out.operations.emplace_back("p" + std::to_string(arity) + "_" +
                                      std::to_string(out.operations.size()),
                                  arity, n, table);
      --e;
      continue;
    }
    if (next[e] == n) {
      next[e] = 0;
      if (e == 0) {
        break;
      }
      --e;
      continue;
    }
    table[e] = next[e]++;
    if (consistent(e)) {
      ++e;
    }
  }
  return out;
}

FiniteAlgebra slice_algebra(std::string name, std::size_t size,
                            std::span<PolymorphismSet const> slices) {
  std::vector<OperationTable> ops;
  for (auto const& s : slices) {
    for (auto const& op : s.operations) {
      ops.push_back(op);
    }
  }
  return FiniteAlgebra(std::move(name), size, std::move(ops));
}

bool CloneSliceReport::all_passed() const {
  return day_terms_preserve && basic_operations_included && thetas_compatible &&
         delta_reproduced &&
         std::all_of(commutators_agree.begin(), commutators_agree.end(), [](bool b) { return b; });
}

CloneSliceReport greatest_clone_slice(FiniteAlgebra const& alg, DaySequence const& day,
                                      std::span<Congruence const> thetas,
                                      std::size_t arity_bound, std::size_t cap,
                                      std::size_t direct_limit) {
  if (!day.verified) {
    throw HypothesisUnmet("no verified Day terms");
  }
  IndexSet const shape = IndexSet::range(thetas.size());
  auto const r = delta(alg, shape, thetas);
  CloneSliceReport report;
  for (std::size_t k = 0; k <= arity_bound; ++k) {
    report.slices.push_back(polymorphisms(r, k, cap));
  }
  std::size_t const sq = r.size() * r.size();
  if (r.size() < (std::size_t{1} << 16) && (sq == 0 || sq <= direct_limit / sq)) {
    report.day_terms_preserve = std::all_of(
        day.tables.begin(), day.tables.end(), [&](OperationTable const& t) { return preserves(r, t); });
  } else {
    report.day_terms_direct = false;
    std::set<std::string> symbols;
    for (auto const& t : day.terms) {
      collect_symbols(t, symbols);
    }
    report.day_terms_preserve = std::all_of(symbols.begin(), symbols.end(), [&](auto const& s) {
      return preserves(r, alg.operation(s));
    });
  }
  report.basic_operations_included = true;
  for (auto const& op : alg.operations()) {
    bool const ok = op.arity() <= arity_bound ? report.slices[op.arity()].contains(op)
                                              : preserves(r, op);
    report.basic_operations_included = report.basic_operations_included && ok;
  }
  auto const b = slice_algebra(alg.name() + "-slice", alg.size(), report.slices);
  report.thetas_compatible = std::all_of(thetas.begin(), thetas.end(),
                                         [&](Congruence const& t) { return is_compatible(b, t); });
  if (!report.thetas_compatible) {
    return report;
  }
  report.delta_reproduced = delta(b, shape, thetas) == r;
  CommutatorCache ca(alg);
  CommutatorCache cb(b);
  for (unsigned mask = 0; mask < (1u << thetas.size()); ++mask) {
    if (std::popcount(mask) < 2) {
      continue;
    }
    auto const t = select(thetas, mask);
    report.commutators_agree.push_back(ca.tc(t) == cb.tc(t));
  }
  return report;
}

SharedDeltaReport check_shared_delta(FiniteAlgebra const& a, FiniteAlgebra const& b,
                                     DaySequence const& day, std::span<Congruence const> thetas) {
  if (a.size() != b.size()) {
    throw HypothesisUnmet("algebras have different universes");
  }
  if (!day.verified) {
    throw HypothesisUnmet("no verified Day terms");
  }
  for (std::size_t i = 0; i < day.terms.size(); ++i) {
    OperationTable mine = day.tables[i];
    try {
      mine = term_table(b, day.terms[i], 4);
    } catch (InvalidArgument const&) {
      throw HypothesisUnmet("Day term " + day.terms[i].to_string() + " is not a term of " +
                            b.name());
    }
    if (!mine.same_function(day.tables[i])) {
      throw HypothesisUnmet("Day term m_" + std::to_string(i) + " induces different operations");
    }
  }
  for (auto const& t : thetas) {
    if (!is_compatible(a, t) || !is_compatible(b, t)) {
      throw HypothesisUnmet("congruence " + t.to_string() + " is not shared");
    }
  }
  CommutatorCache ca(a);
  CommutatorCache cb(b);
  SharedDeltaReport report;
  report.commutators_equal = true;
  for (unsigned mask = 0; mask < (1u << thetas.size()); ++mask) {
    if (std::popcount(mask) < 2) {
      continue;
    }
    auto const t = select(thetas, mask);
    report.commutators_equal = report.commutators_equal && ca.tc(t) == cb.tc(t);
  }
  report.deltas_equal = ca.delta(thetas) == cb.delta(thetas);
  return report;
}

}  // namespace hcomm
