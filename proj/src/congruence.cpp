#include "hcomm/congruence.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hcomm/error.hpp"

namespace hcomm {

Congruence::Congruence(std::vector<Element> reps) : reps_(std::move(reps)) {
  for (std::size_t a = 0; a < reps_.size(); ++a) {
    if (reps_[a] > a || reps_[reps_[a]] != reps_[a]) {
      throw InvalidArgument("representative map is not canonical at element " +
                            std::to_string(a));
    }
  }
}

Congruence Congruence::identity(std::size_t n) {
  std::vector<Element> reps(n);
  for (std::size_t a = 0; a < n; ++a) {
    reps[a] = static_cast<Element>(a);
  }
  return Congruence(std::move(reps));
}

Congruence Congruence::total(std::size_t n) { return Congruence(std::vector<Element>(n, 0)); }

Congruence Congruence::from_blocks(std::size_t n, std::vector<std::vector<Element>> const& blocks) {
  PartitionBuilder b(n);
  std::vector<bool> covered(n, false);
  for (auto const& block : blocks) {
    for (auto x : block) {
      if (x >= n) {
        throw InvalidArgument("block element " + std::to_string(x) + " outside the carrier");
      }
      if (covered[x]) {
        throw InvalidArgument("element " + std::to_string(x) + " appears in two blocks");
      }
      covered[x] = true;
      b.unite(block.front(), x);
    }
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw InvalidArgument("blocks do not cover the carrier");
  }
  return b.build();
}

Congruence Congruence::parse(std::size_t n, std::string const& text) {
  std::vector<std::vector<Element>> blocks;
  std::stringstream all(text);
  std::string part;
  while (std::getline(all, part, '|')) {
    std::stringstream in(part);
    std::vector<Element> block;
    long long x = 0;
    while (in >> x) {
      if (x < 0) {
        throw ParseError("congruence '" + text + "'", "negative element");
      }
      block.push_back(static_cast<Element>(x));
    }
    if (!in.eof()) {
      throw ParseError("congruence '" + text + "'", "unexpected character");
    }
    if (block.empty()) {
      throw ParseError("congruence '" + text + "'", "empty block");
    }
    blocks.push_back(std::move(block));
  }
  try {
    return from_blocks(n, blocks);
  } catch (InvalidArgument const& e) {
    throw ParseError("congruence '" + text + "'", e.what());
  }
}

std::size_t Congruence::block_count() const noexcept {
  std::size_t count = 0;
  for (std::size_t a = 0; a < reps_.size(); ++a) {
    count += reps_[a] == a;
  }
  return count;
}

std::vector<std::vector<Element>> Congruence::blocks() const {
  std::vector<std::vector<Element>> out;
  std::vector<std::size_t> slot(reps_.size());
  for (std::size_t a = 0; a < reps_.size(); ++a) {
    if (reps_[a] == a) {
      slot[a] = out.size();
      out.emplace_back();
    }
    out[slot[reps_[a]]].push_back(static_cast<Element>(a));
  }
  return out;
}

std::size_t Congruence::pair_count() const {
  std::size_t total = 0;
  for (auto const& b : blocks()) {
    total += b.size() * b.size();
  }
  return total;
}

bool Congruence::leq(Congruence const& other) const {
  if (other.reps_.size() != reps_.size()) {
    throw InvalidArgument("congruences on carriers of different size");
  }
  for (std::size_t a = 0; a < reps_.size(); ++a) {
    if (other.reps_[a] != other.reps_[reps_[a]]) {
      return false;
    }
  }
  return true;
}

std::string Congruence::to_string() const {
  std::string out;
  bool first_block = true;
  for (auto const& block : blocks()) {
    if (!first_block) {
      out += "|";
    }
    first_block = false;
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i > 0) {
        out += " ";
      }
      out += std::to_string(block[i]);
    }
  }
  return out;
}

PartitionBuilder::PartitionBuilder(std::size_t n) : parent_(n) {
  for (std::size_t a = 0; a < n; ++a) {
    parent_[a] = static_cast<Element>(a);
  }
}

PartitionBuilder::PartitionBuilder(Congruence const& start)
    : parent_(start.representatives().begin(), start.representatives().end()) {}

Element PartitionBuilder::find(Element a) {
  while (parent_[a] != a) {
    parent_[a] = parent_[parent_[a]];
    a = parent_[a];
  }
  return a;
}

bool PartitionBuilder::unite(Element a, Element b) {
  a = find(a);
  b = find(b);
  if (a == b) {
    return false;
  }
  // Least element becomes the root, so roots are block minima.
  if (b < a) {
    std::swap(a, b);
  }
  parent_[b] = a;
  return true;
}

Congruence PartitionBuilder::build() {
  std::vector<Element> reps(parent_.size());
  for (std::size_t a = 0; a < parent_.size(); ++a) {
    reps[a] = find(static_cast<Element>(a));
  }
  return Congruence(std::move(reps));
}

Congruence join(Congruence const& a, Congruence const& b) {
  if (a.carrier_size() != b.carrier_size()) {
    throw InvalidArgument("join of congruences on different carriers");
  }
  PartitionBuilder builder(a);
  for (std::size_t x = 0; x < b.carrier_size(); ++x) {
    builder.unite(static_cast<Element>(x), b.representative(static_cast<Element>(x)));
  }
  return builder.build();
}

Congruence meet(Congruence const& a, Congruence const& b) {
  if (a.carrier_size() != b.carrier_size()) {
    throw InvalidArgument("meet of congruences on different carriers");
  }
  std::size_t const n = a.carrier_size();
  std::vector<Element> reps(n);
  for (std::size_t x = 0; x < n; ++x) {
    reps[x] = static_cast<Element>(x);
    for (std::size_t y = 0; y < x; ++y) {
      if (a.related(static_cast<Element>(x), static_cast<Element>(y)) &&
          b.related(static_cast<Element>(x), static_cast<Element>(y))) {
        reps[x] = static_cast<Element>(y);
        break;
      }
    }
  }
  return Congruence(std::move(reps));
}

namespace {

// Closes the builder's partition under all basic translations. Every merge
// edge is pushed through every translation; non-merging pairs are implied
// by chains of merge edges.
void close_under_translations(FiniteAlgebra const& alg, PartitionBuilder& builder,
                              std::vector<std::pair<Element, Element>> queue) {
  std::size_t const n = alg.size();
  std::vector<Element> args;
  while (!queue.empty()) {
    auto const [a, b] = queue.back();
    queue.pop_back();
    for (auto const& op : alg.operations()) {
      std::size_t const k = op.arity();
      if (k == 0) {
        continue;
      }
      std::size_t const others = checked_pow(n, k - 1);
      args.assign(k, 0);
      for (std::size_t pos = 0; pos < k; ++pos) {
        for (std::size_t t = 0; t < others; ++t) {
          std::size_t rest = t;
          for (std::size_t c = 0; c < k; ++c) {
            if (c == pos) {
              continue;
            }
            args[c] = static_cast<Element>(rest % n);
            rest /= n;
          }
          args[pos] = a;
          Element const fa = op[OperationTable::flat_index(args, n)];
          args[pos] = b;
          Element const fb = op[OperationTable::flat_index(args, n)];
          if (builder.unite(fa, fb)) {
            queue.emplace_back(fa, fb);
          }
        }
      }
    }
  }
}

}  // namespace

Congruence cg(FiniteAlgebra const& alg, Congruence const& start,
              std::span<std::pair<Element, Element> const> pairs) {
  if (start.carrier_size() != alg.size()) {
    throw InvalidArgument("starting partition is on a different carrier");
  }
  PartitionBuilder builder(start);
  std::vector<std::pair<Element, Element>> queue;
  for (auto const& [a, b] : pairs) {
    if (a >= alg.size() || b >= alg.size()) {
      throw InvalidArgument("pair outside the carrier");
    }
    if (builder.unite(a, b)) {
      queue.emplace_back(a, b);
    }
  }
  // Edges of the starting partition must also be pushed through translations
  // unless it is already compatible.
  if (!is_compatible(alg, start)) {
    for (std::size_t x = 0; x < alg.size(); ++x) {
      if (start.representative(static_cast<Element>(x)) != x) {
        queue.emplace_back(start.representative(static_cast<Element>(x)), static_cast<Element>(x));
      }
    }
  }
  close_under_translations(alg, builder, std::move(queue));
  return builder.build();
}

Congruence cg(FiniteAlgebra const& alg, std::span<std::pair<Element, Element> const> pairs) {
  return cg(alg, Congruence::identity(alg.size()), pairs);
}

bool is_compatible(OperationTable const& op, Congruence const& theta) {
  std::size_t const n = op.size();
  std::size_t const k = op.arity();
  if (theta.carrier_size() != n) {
    throw InvalidArgument("congruence and operation on different carriers");
  }
  if (k == 0) {
    return true;
  }
  std::size_t const others = checked_pow(n, k - 1);
  std::vector<Element> args(k);
  for (std::size_t x = 0; x < n; ++x) {
    Element const r = theta.representative(static_cast<Element>(x));
    if (r == x) {
      continue;
    }
    for (std::size_t pos = 0; pos < k; ++pos) {
      for (std::size_t t = 0; t < others; ++t) {
        std::size_t rest = t;
        for (std::size_t c = 0; c < k; ++c) {
          if (c != pos) {
            args[c] = static_cast<Element>(rest % n);
            rest /= n;
          }
        }
        args[pos] = static_cast<Element>(x);
        Element const fx = op[OperationTable::flat_index(args, n)];
        args[pos] = r;
        if (!theta.related(fx, op[OperationTable::flat_index(args, n)])) {
          return false;
        }
      }
    }
  }
  return true;
}

bool is_compatible(FiniteAlgebra const& alg, Congruence const& theta) {
  return std::all_of(alg.operations().begin(), alg.operations().end(),
                     [&](OperationTable const& op) { return is_compatible(op, theta); });
}

std::vector<Congruence> all_congruences(FiniteAlgebra const& alg, std::size_t max_size) {
  std::size_t const n = alg.size();
  if (n > max_size) {
    throw ResourceError("all_congruences: carrier of size " + std::to_string(n) +
                        " exceeds the bound " + std::to_string(max_size));
  }
  std::set<Congruence> found;
  found.insert(Congruence::identity(n));
  std::vector<Congruence> principal;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      std::pair<Element, Element> const p{static_cast<Element>(a), static_cast<Element>(b)};
      auto c = cg(alg, std::span(&p, 1));
      if (found.insert(c).second) {
        principal.push_back(c);
      }
    }
  }
  // Every congruence is a join of principal ones; close under joining with
  // a principal congruence.
  std::vector<Congruence> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<Congruence> next;
    for (auto const& c : frontier) {
      for (auto const& p : principal) {
        auto j = join(c, p);
        if (found.insert(j).second) {
          next.push_back(std::move(j));
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Congruence> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](Congruence const& x, Congruence const& y) {
    auto const bx = x.block_count();
    auto const by = y.block_count();
    if (bx != by) {
      return bx > by;
    }
    return x < y;
  });
  return out;
}

}  // namespace hcomm
