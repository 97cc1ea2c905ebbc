#include "hcomm/corpus.hpp"

#include <functional>

#include "hcomm/error.hpp"

namespace hcomm::corpus {

namespace {

OperationTable binary(std::string name, std::size_t n,
                      std::function<std::size_t(std::size_t, std::size_t)> const& f) {
  std::vector<Element> t(n * n);
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a = 0; a < n; ++a) {
      t[a + n * b] = static_cast<Element>(f(a, b));
    }
  }
  return OperationTable(std::move(name), 2, n, std::move(t));
}

OperationTable unary(std::string name, std::size_t n,
                     std::function<std::size_t(std::size_t)> const& f) {
  std::vector<Element> t(n);
  for (std::size_t a = 0; a < n; ++a) {
    t[a] = static_cast<Element>(f(a));
  }
  return OperationTable(std::move(name), 1, n, std::move(t));
}

OperationTable constant(std::string name, std::size_t n, std::size_t c) {
  return OperationTable(std::move(name), 0, n, {static_cast<Element>(c)});
}

}  // namespace

FiniteAlgebra cyclic_group(std::size_t n) {
  return FiniteAlgebra("Z" + std::to_string(n), n,
                       {binary("mul", n, [n](auto a, auto b) { return (a + b) % n; }),
                        unary("inv", n, [n](auto a) { return (n - a) % n; }), constant("e", n, 0)});
}

FiniteAlgebra cyclic_product(std::size_t n, std::size_t m) {
  std::size_t const size = n * m;
  auto add = [n, m](std::size_t a, std::size_t b) {
    return (a % n + b % n) % n + n * ((a / n + b / n) % m);
  };
  auto neg = [n, m](std::size_t a) { return (n - a % n) % n + n * ((m - a / n) % m); };
  return FiniteAlgebra("Z" + std::to_string(n) + "xZ" + std::to_string(m), size,
                       {binary("mul", size, add), unary("inv", size, neg),
                        constant("e", size, 0)});
}

FiniteAlgebra dihedral_group(std::size_t n) {
  std::size_t const size = 2 * n;
  auto mul = [n](std::size_t x, std::size_t y) -> std::size_t {
    bool const xs = x >= n;
    bool const ys = y >= n;
    std::size_t const a = x % n;
    std::size_t const b = y % n;
    if (!xs && !ys) {
      return (a + b) % n;
    }
    if (!xs && ys) {
      return n + (b + n - a) % n;
    }
    if (xs && !ys) {
      return n + (a + b) % n;
    }
    return (b + n - a) % n;
  };
  auto inv = [n](std::size_t x) -> std::size_t { return x >= n ? x : (n - x) % n; };
  return FiniteAlgebra("D" + std::to_string(n), size,
                       {binary("mul", size, mul), unary("inv", size, inv),
                        constant("e", size, 0)});
}

FiniteAlgebra symmetric_group_3() {
  auto d = dihedral_group(3);
  return FiniteAlgebra("S3", 6, d.operations());
}

FiniteAlgebra chain_lattice(std::size_t n) {
  return FiniteAlgebra("L" + std::to_string(n), n,
                       {binary("meet", n, [](auto a, auto b) { return std::min(a, b); }),
                        binary("join", n, [](auto a, auto b) { return std::max(a, b); })});
}

FiniteAlgebra boolean_lattice_2x2() {
  return FiniteAlgebra("B2x2", 4,
                       {binary("meet", 4, [](auto a, auto b) { return a & b; }),
                        binary("join", 4, [](auto a, auto b) { return a | b; })});
}

FiniteAlgebra bare_set(std::size_t n) { return FiniteAlgebra("Set" + std::to_string(n), n, {}); }

FiniteAlgebra z4_with_negation() {
  auto z = cyclic_group(4);
  return FiniteAlgebra("Z4neg", 4,
                       {z.operations()[0], z.operations()[1], z.operations()[2],
                        unary("neg", 4, [](auto a) { return (4 - a) % 4; })});
}

FiniteAlgebra z4_ring() {
  auto ops = cyclic_group(4).operations();
  ops.push_back(binary("times", 4, [](auto a, auto b) { return (a * b) % 4; }));
  return FiniteAlgebra("Z4ring", 4, std::move(ops));
}

FiniteAlgebra z2sq_with_ternary_sum() {
  auto z = cyclic_product(2, 2);
  std::vector<Element> t(64);
  for (std::size_t i = 0; i < 64; ++i) {
    t[i] = static_cast<Element>((i % 4) ^ ((i / 4) % 4) ^ (i / 16));
  }
  auto ops = z.operations();
  ops.emplace_back("sum3", 3, 4, std::move(t));
  return FiniteAlgebra("Z2xZ2sum", 4, std::move(ops));
}

// Componentwise product on the codes a + 2b.
FiniteAlgebra z2sq_ring() {
  auto ops = cyclic_product(2, 2).operations();
  ops.push_back(binary("times", 4, [](auto a, auto b) { return a & b; }));
  return FiniteAlgebra("Z2xZ2ring", 4, std::move(ops));
}

std::vector<Entry> builtin() {
  return {
      {"Z2", cyclic_group(2), true, false},
      {"Z3", cyclic_group(3), true, false},
      {"Z4", cyclic_group(4), true, false},
      {"Z2xZ2", cyclic_product(2, 2), true, false},
      {"S3", symmetric_group_3(), true, false},
      {"D4", dihedral_group(4), true, false},
      {"L2", chain_lattice(2), false, true},
      {"B2x2", boolean_lattice_2x2(), false, true},
      {"Set2", bare_set(2), false, false},
  };
}

FiniteAlgebra builtin_algebra(std::string const& name) {
  for (auto& e : builtin()) {
    if (e.name == name) {
      return e.algebra;
    }
  }
  for (auto const& alg : {z4_with_negation(), z4_ring(), z2sq_with_ternary_sum(), z2sq_ring()}) {
    if (alg.name() == name) {
      return alg;
    }
  }
  throw InvalidArgument("unknown built-in algebra '" + name + "'");
}

}  // namespace hcomm::corpus
