#include "hcomm/cube.hpp"

#include <algorithm>

#include "hcomm/error.hpp"

namespace hcomm {

IndexSet::IndexSet(std::initializer_list<std::size_t> items)
    : IndexSet(std::vector<std::size_t>(items)) {}

IndexSet::IndexSet(std::vector<std::size_t> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  if (std::adjacent_find(items_.begin(), items_.end()) != items_.end()) {
    throw InvalidArgument("index set has a repeated element");
  }
}

IndexSet IndexSet::range(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = i;
  }
  return IndexSet(std::move(v));
}

bool IndexSet::contains(std::size_t i) const noexcept {
  return std::binary_search(items_.begin(), items_.end(), i);
}

std::size_t IndexSet::position(std::size_t i) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), i);
  if (it == items_.end() || *it != i) {
    throw InvalidArgument("direction " + std::to_string(i) + " is not in " + to_string());
  }
  return static_cast<std::size_t>(it - items_.begin());
}

IndexSet IndexSet::without(std::size_t i) const {
  std::vector<std::size_t> v;
  for (auto x : items_) {
    if (x != i) {
      v.push_back(x);
    }
  }
  return IndexSet(std::move(v));
}

IndexSet IndexSet::minus(IndexSet const& other) const {
  std::vector<std::size_t> v;
  std::set_difference(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                      std::back_inserter(v));
  return IndexSet(std::move(v));
}

IndexSet IndexSet::unite(IndexSet const& other) const {
  std::vector<std::size_t> v;
  std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                 std::back_inserter(v));
  return IndexSet(std::move(v));
}

bool IndexSet::subset_of(IndexSet const& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

std::string IndexSet::to_string() const {
  std::string out = "{";
  for (std::size_t p = 0; p < items_.size(); ++p) {
    out += (p ? "," : "") + std::to_string(items_[p]);
  }
  return out + "}";
}

Cube::Cube(IndexSet shape, std::vector<Element> labels)
    : shape_(std::move(shape)), labels_(std::move(labels)) {
  if (shape_.size() > max_dimension) {
    throw InvalidArgument("cube dimension " + std::to_string(shape_.size()) + " is too large");
  }
  if (labels_.size() != (std::size_t{1} << shape_.size())) {
    throw InvalidArgument("cube over " + shape_.to_string() + " needs " +
                          std::to_string(std::size_t{1} << shape_.size()) + " labels, got " +
                          std::to_string(labels_.size()));
  }
}

Cube Cube::constant(IndexSet shape, Element x) {
  std::size_t const m = std::size_t{1} << shape.size();
  return Cube(std::move(shape), std::vector<Element>(m, x));
}

bool Cube::is_constant() const noexcept {
  return std::all_of(labels_.begin(), labels_.end(),
                     [&](Element x) { return x == labels_.front(); });
}

std::string Cube::to_string() const {
  std::string out;
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    out += (v ? "," : "") + std::to_string(labels_[v]);
  }
  return out;
}

Cube face(Cube const& c, std::size_t i, unsigned j) {
  std::size_t const p = c.shape().position(i);
  if (j > 1) {
    throw InvalidArgument("face side must be 0 or 1");
  }
  std::vector<Element> labels(c.vertex_count() / 2);
  for (Vertex g = 0; g < labels.size(); ++g) {
    labels[g] = c[insert_bit(g, p, j)];
  }
  return Cube(c.shape().without(i), std::move(labels));
}

Cube refl(Cube const& c, std::size_t i, unsigned j) {
  std::size_t const p = c.shape().position(i);
  if (j > 1) {
    throw InvalidArgument("reflection side must be 0 or 1");
  }
  std::vector<Element> labels(c.vertex_count());
  for (Vertex f = 0; f < labels.size(); ++f) {
    labels[f] = c[(f & ~(Vertex{1} << p)) | (Vertex{j} << p)];
  }
  return Cube(c.shape(), std::move(labels));
}

Cube sym(Cube const& c, std::size_t i) {
  std::size_t const p = c.shape().position(i);
  std::vector<Element> labels(c.vertex_count());
  for (Vertex f = 0; f < labels.size(); ++f) {
    labels[f] = c[f ^ (Vertex{1} << p)];
  }
  return Cube(c.shape(), std::move(labels));
}

namespace {

// Spreads the low bits of u over the given positions.
Vertex scatter(Vertex u, std::span<std::size_t const> positions) {
  Vertex f = 0;
  for (std::size_t b = 0; b < positions.size(); ++b) {
    f |= ((u >> b) & 1u) << positions[b];
  }
  return f;
}

std::vector<std::size_t> positions_in(IndexSet const& sub, IndexSet const& whole) {
  std::vector<std::size_t> out;
  for (auto x : sub.items()) {
    out.push_back(whole.position(x));
  }
  return out;
}

}  // namespace

NestedCube cut(IndexSet const& q, Cube const& c) {
  if (!q.subset_of(c.shape())) {
    throw InvalidArgument("cut: " + q.to_string() + " is not a subset of " +
                          c.shape().to_string());
  }
  IndexSet const rest = c.shape().minus(q);
  auto const pq = positions_in(q, c.shape());
  auto const pr = positions_in(rest, c.shape());
  NestedCube out{q, rest, {}};
  for (Vertex u = 0; u < (Vertex{1} << q.size()); ++u) {
    std::vector<Element> inner(std::size_t{1} << rest.size());
    for (Vertex w = 0; w < inner.size(); ++w) {
      inner[w] = c[scatter(u, pq) | scatter(w, pr)];
    }
    out.labels.emplace_back(rest, std::move(inner));
  }
  return out;
}

Cube glue(NestedCube const& nested) {
  if (nested.outer.unite(nested.inner).size() != nested.outer.size() + nested.inner.size()) {
    throw InvalidArgument("glue: " + nested.outer.to_string() + " and " +
                          nested.inner.to_string() + " overlap");
  }
  if (nested.labels.size() != (std::size_t{1} << nested.outer.size())) {
    throw InvalidArgument("glue: wrong number of outer labels");
  }
  IndexSet const whole = nested.outer.unite(nested.inner);
  auto const pq = positions_in(nested.outer, whole);
  auto const pr = positions_in(nested.inner, whole);
  std::vector<Element> labels(std::size_t{1} << whole.size());
  for (Vertex u = 0; u < nested.labels.size(); ++u) {
    Cube const& inner = nested.labels[u];
    if (inner.shape() != nested.inner) {
      throw InvalidArgument("glue: inner label over " + inner.shape().to_string() +
                            ", expected " + nested.inner.to_string());
    }
    for (Vertex w = 0; w < inner.vertex_count(); ++w) {
      labels[scatter(u, pq) | scatter(w, pr)] = inner[w];
    }
  }
  return Cube(whole, std::move(labels));
}

std::vector<Line> lines(Cube const& c, std::size_t i) {
  std::size_t const p = c.shape().position(i);
  std::vector<Line> out;
  for (Vertex g = 0; g < c.vertex_count() / 2; ++g) {
    out.push_back(Line{i, g, c[insert_bit(g, p, 0)], c[insert_bit(g, p, 1)]});
  }
  return out;
}

Line pivot_line(Cube const& c, std::size_t i) { return lines(c, i).back(); }

std::vector<Line> supporting_lines(Cube const& c, std::size_t i) {
  auto out = lines(c, i);
  out.pop_back();
  return out;
}

std::vector<Line> cross_section_lines(Cube const& c, std::size_t i) { return lines(c, i); }

std::vector<Square> cross_section_squares(Cube const& c, std::size_t i, std::size_t j) {
  if (i == j) {
    throw InvalidArgument("cross-section squares need two distinct directions");
  }
  std::size_t const pi = c.shape().position(i);
  std::size_t const pj = c.shape().position(j);
  std::size_t const lo = std::min(pi, pj);
  std::size_t const hi = std::max(pi, pj);
  std::vector<Square> out;
  for (Vertex g = 0; g < c.vertex_count() / 4; ++g) {
    auto at = [&](unsigned bi, unsigned bj) {
      unsigned const blo = pi == lo ? bi : bj;
      unsigned const bhi = pi == lo ? bj : bi;
      return c[insert_bit(insert_bit(g, lo, blo), hi, bhi)];
    };
    out.push_back(Square{g, {at(0, 0), at(1, 0), at(0, 1), at(1, 1)}});
  }
  return out;
}

Cube cube_generator(IndexSet const& shape, std::size_t k, Element x, Element y) {
  std::size_t const p = shape.position(k);
  std::vector<Element> labels(std::size_t{1} << shape.size());
  for (Vertex f = 0; f < labels.size(); ++f) {
    labels[f] = (f >> p) & 1u ? y : x;
  }
  return Cube(shape, std::move(labels));
}

Cube commutator_cube(IndexSet const& shape, Element x, Element y) {
  std::vector<Element> labels(std::size_t{1} << shape.size(), x);
  labels.back() = y;
  return Cube(shape, std::move(labels));
}

Cube apply_pointwise(OperationTable const& op, std::span<Cube const> args) {
  if (args.size() != op.arity()) {
    throw InvalidArgument("operation '" + op.name() + "' has arity " +
                          std::to_string(op.arity()) + ", got " + std::to_string(args.size()) +
                          " cubes");
  }
  if (args.empty()) {
    throw InvalidArgument("pointwise application of a constant needs a shape");
  }
  std::vector<Element> point(args.size());
  std::vector<Element> labels(args[0].vertex_count());
  for (auto const& a : args) {
    if (a.shape() != args[0].shape()) {
      throw InvalidArgument("pointwise application to cubes of different shapes");
    }
  }
  for (Vertex f = 0; f < labels.size(); ++f) {
    for (std::size_t k = 0; k < args.size(); ++k) {
      point[k] = args[k][f];
    }
    labels[f] = op.apply(point);
  }
  return Cube(args[0].shape(), std::move(labels));
}

}  // namespace hcomm
