#include "hcomm/relation.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

#include "hcomm/closure.hpp"
#include "hcomm/error.hpp"

namespace hcomm {

CubeCodec::CubeCodec(std::size_t radix, std::size_t vertex_count)
    : radix_(radix), vertex_count_(vertex_count) {
  if (radix == 0) {
    throw InvalidArgument("cube codec needs a non-empty carrier");
  }
  try {
    space_ = checked_pow(radix, vertex_count, std::size_t{1} << 62);
  } catch (ResourceError const&) {
    throw ResourceError("cubes with " + std::to_string(vertex_count) + " labels over " +
                        std::to_string(radix) + " elements do not fit a 64-bit code");
  }
}

std::uint64_t CubeCodec::encode(std::span<Element const> labels) const {
  std::uint64_t code = 0;
  for (std::size_t v = labels.size(); v-- > 0;) {
    code = code * radix_ + labels[v];
  }
  return code;
}

void CubeCodec::decode(std::uint64_t code, std::span<Element> labels) const {
  for (std::size_t v = 0; v < labels.size(); ++v) {
    labels[v] = static_cast<Element>(code % radix_);
    code /= radix_;
  }
}

CubeRelation::CubeRelation(IndexSet shape, std::size_t carrier_size,
                           std::vector<std::uint64_t> codes)
    : shape_(std::move(shape)),
      codec_(carrier_size, std::size_t{1} << shape_.size()),
      codes_(std::move(codes)) {
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
  if (!codes_.empty() && codes_.back() >= codec_.code_space()) {
    throw InvalidArgument("cube code outside the code space");
  }
}

CubeRelation CubeRelation::from_cubes(IndexSet shape, std::size_t carrier_size,
                                      std::span<Cube const> cubes) {
  CubeCodec const codec(carrier_size, std::size_t{1} << shape.size());
  std::vector<std::uint64_t> codes;
  codes.reserve(cubes.size());
  for (auto const& c : cubes) {
    if (c.shape() != shape) {
      throw InvalidArgument("cube over " + c.shape().to_string() + " in a relation over " +
                            shape.to_string());
    }
    for (auto x : c.labels()) {
      if (x >= carrier_size) {
        throw InvalidArgument("cube label " + std::to_string(x) + " outside the carrier");
      }
    }
    codes.push_back(codec.encode(c.labels()));
  }
  return CubeRelation(std::move(shape), carrier_size, std::move(codes));
}

CubeRelation CubeRelation::diagonal(IndexSet shape, std::size_t carrier_size) {
  std::vector<Cube> cubes;
  for (std::size_t x = 0; x < carrier_size; ++x) {
    cubes.push_back(Cube::constant(shape, static_cast<Element>(x)));
  }
  return from_cubes(std::move(shape), carrier_size, cubes);
}

CubeRelation CubeRelation::full(IndexSet shape, std::size_t carrier_size, std::size_t cap) {
  CubeCodec const codec(carrier_size, std::size_t{1} << shape.size());
  if (codec.code_space() > cap) {
    throw ResourceError("full cube power has " + std::to_string(codec.code_space()) +
                        " members, above the cap of " + std::to_string(cap));
  }
  std::vector<std::uint64_t> codes(codec.code_space());
  std::iota(codes.begin(), codes.end(), std::uint64_t{0});
  return CubeRelation(std::move(shape), carrier_size, std::move(codes));
}

Cube CubeRelation::member(std::size_t index) const {
  std::vector<Element> labels(vertex_count());
  codec_.decode(codes_.at(index), labels);
  return Cube(shape_, std::move(labels));
}

std::vector<Cube> CubeRelation::members() const {
  std::vector<Cube> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out.push_back(member(i));
  }
  return out;
}

bool CubeRelation::contains_code(std::uint64_t code) const {
  return std::binary_search(codes_.begin(), codes_.end(), code);
}

bool CubeRelation::contains(Cube const& c) const {
  if (c.shape() != shape_) {
    return false;
  }
  for (auto x : c.labels()) {
    if (x >= carrier_size()) {
      return false;
    }
  }
  return contains_code(codec_.encode(c.labels()));
}

std::size_t CubeRelation::index_of(std::uint64_t code) const {
  auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
  if (it == codes_.end() || *it != code) {
    return size();
  }
  return static_cast<std::size_t>(it - codes_.begin());
}

CubeRelation close_relation(FiniteAlgebra const& alg, IndexSet const& shape,
                            std::span<Cube const> generators, ClosureOptions options) {
  SubpowerClosure closure(alg, shape, options);
  for (auto const& g : generators) {
    if (g.shape() != shape) {
      throw InvalidArgument("generator over " + g.shape().to_string() + ", expected " +
                            shape.to_string());
    }
    if (!closure.contains(g.labels())) {
      closure.add_generator(g.labels());
    }
  }
  return closure.relation();
}

std::vector<Cube> m_generators(IndexSet const& shape, std::span<Congruence const> thetas) {
  if (thetas.size() != shape.size()) {
    throw InvalidArgument("need one congruence per direction of " + shape.to_string() + ", got " +
                          std::to_string(thetas.size()));
  }
  std::vector<Cube> out;
  for (std::size_t p = 0; p < shape.size(); ++p) {
    for (auto const& block : thetas[p].blocks()) {
      for (auto x : block) {
        for (auto y : block) {
          out.push_back(cube_generator(shape, shape[p], x, y));
        }
      }
    }
  }
  return out;
}

CubeRelation generate_M(FiniteAlgebra const& alg, IndexSet const& shape,
                        std::span<Congruence const> thetas, ClosureOptions options) {
  for (auto const& t : thetas) {
    if (t.carrier_size() != alg.size()) {
      throw InvalidArgument("congruence on a carrier of size " + std::to_string(t.carrier_size()) +
                            " for an algebra of size " + std::to_string(alg.size()));
    }
  }
  auto const gens = m_generators(shape, thetas);
  options.coordinate_maps = true;
  return close_relation(alg, shape, gens, options);
}

namespace {

struct FaceSplit {
  std::vector<std::uint64_t> face_codes;  // sorted distinct faces
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // indices into face_codes
};

FaceSplit split_faces(CubeRelation const& r, std::size_t p) {
  std::size_t const m = r.vertex_count();
  CubeCodec const half(r.carrier_size(), m / 2);
  std::vector<Element> labels(m);
  std::vector<Element> f0(m / 2);
  std::vector<Element> f1(m / 2);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  raw.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r.labels_of(i, labels);
    for (Vertex g = 0; g < m / 2; ++g) {
      f0[g] = labels[insert_bit(g, p, 0)];
      f1[g] = labels[insert_bit(g, p, 1)];
    }
    raw.emplace_back(half.encode(f0), half.encode(f1));
  }
  FaceSplit out;
  for (auto const& [a, b] : raw) {
    out.face_codes.push_back(a);
    out.face_codes.push_back(b);
  }
  std::sort(out.face_codes.begin(), out.face_codes.end());
  out.face_codes.erase(std::unique(out.face_codes.begin(), out.face_codes.end()),
                       out.face_codes.end());
  auto id = [&](std::uint64_t c) {
    return static_cast<std::size_t>(
        std::lower_bound(out.face_codes.begin(), out.face_codes.end(), c) -
        out.face_codes.begin());
  };
  for (auto const& [a, b] : raw) {
    out.edges.emplace_back(id(a), id(b));
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

}  // namespace

CubeRelation directional_compose(CubeRelation const& r, std::size_t l, std::size_t member_cap) {
  std::size_t const p = r.shape().position(l);
  std::size_t const m = r.vertex_count();
  FaceSplit const split = split_faces(r, p);
  std::size_t const nodes = split.face_codes.size();

  bool symmetric = true;
  for (auto const& [a, b] : split.edges) {
    if (!std::binary_search(split.edges.begin(), split.edges.end(), std::make_pair(b, a))) {
      symmetric = false;
      break;
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> result;
  if (symmetric) {
    // The transitive closure of a symmetric relation is the equivalence on
    // the faces it touches.
    PartitionBuilder uf(nodes);
    for (auto const& [a, b] : split.edges) {
      uf.unite(static_cast<Element>(a), static_cast<Element>(b));
    }
    auto const comp = uf.build();
    std::size_t total = 0;
    for (auto const& block : comp.blocks()) {
      total += block.size() * block.size();
      if (total > member_cap) {
        throw ResourceError("directional composition exceeded the member cap of " +
                            std::to_string(member_cap) + " cubes");
      }
      for (auto a : block) {
        for (auto b : block) {
          result.emplace_back(a, b);
        }
      }
    }
  } else {
    std::vector<std::vector<std::size_t>> adj(nodes);
    for (auto const& [a, b] : split.edges) {
      adj[a].push_back(b);
    }
    std::vector<std::size_t> mark(nodes, nodes);
    for (std::size_t s = 0; s < nodes; ++s) {
      std::vector<std::size_t> stack(adj[s].begin(), adj[s].end());
      while (!stack.empty()) {
        std::size_t const x = stack.back();
        stack.pop_back();
        if (mark[x] == s) {
          continue;
        }
        mark[x] = s;
        result.emplace_back(s, x);
        if (result.size() > member_cap) {
          throw ResourceError("directional composition exceeded the member cap of " +
                              std::to_string(member_cap) + " cubes");
        }
        for (auto y : adj[x]) {
          stack.push_back(y);
        }
      }
    }
  }

  CubeCodec const half(r.carrier_size(), m / 2);
  std::vector<Element> f0(m / 2);
  std::vector<Element> f1(m / 2);
  std::vector<Element> labels(m);
  std::vector<std::uint64_t> codes;
  codes.reserve(result.size());
  for (auto const& [a, b] : result) {
    half.decode(split.face_codes[a], f0);
    half.decode(split.face_codes[b], f1);
    for (Vertex g = 0; g < m / 2; ++g) {
      labels[insert_bit(g, p, 0)] = f0[g];
      labels[insert_bit(g, p, 1)] = f1[g];
    }
    codes.push_back(r.codec().encode(labels));
  }
  return CubeRelation(r.shape(), r.carrier_size(), std::move(codes));
}

CubeRelation tc(CubeRelation const& r, std::size_t member_cap) {
  std::size_t const n = r.dimension();
  if (n == 0) {
    return r;
  }
  CubeRelation current = r;
  std::size_t quiet = 0;
  std::size_t p = 0;
  while (quiet < n) {
    CubeRelation next = directional_compose(current, r.shape()[p], member_cap);
    if (next.size() == current.size()) {
      ++quiet;
    } else {
      current = std::move(next);
      quiet = 1;
    }
    p = (p + 1) % n;
  }
  return current;
}

CubeRelation delta(FiniteAlgebra const& alg, IndexSet const& shape,
                   std::span<Congruence const> thetas, ClosureOptions options) {
  return tc(generate_M(alg, shape, thetas, options), options.member_cap);
}

bool is_subalgebra(FiniteAlgebra const& alg, CubeRelation const& r) {
  if (r.carrier_size() != alg.size()) {
    throw InvalidArgument("relation and algebra on different carriers");
  }
  for (auto const& op : alg.operations()) {
    if (op.arity() == 0 && !r.contains(Cube::constant(r.shape(), op[0]))) {
      return false;
    }
  }
  ClosureOptions options;
  options.coordinate_maps = false;
  options.member_cap = r.size() + 1;
  SubpowerClosure closure(alg, r.shape(), options);
  closure.set_bound(&r);
  std::vector<Element> labels(r.vertex_count());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r.labels_of(i, labels);
    if (!closure.contains(labels) && !closure.add_generator(labels)) {
      return false;
    }
  }
  return true;
}

namespace {

// Every image of a member under the vertex map lies in r.
bool closed_under_map(CubeRelation const& r, std::vector<Vertex> const& map) {
  std::vector<Element> labels(r.vertex_count());
  std::vector<Element> image(r.vertex_count());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r.labels_of(i, labels);
    for (std::size_t v = 0; v < labels.size(); ++v) {
      image[v] = labels[map[v]];
    }
    if (!r.contains_labels(image)) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool is_n_reflexive(CubeRelation const& r) {
  std::size_t const m = r.vertex_count();
  for (std::size_t p = 0; p < r.dimension(); ++p) {
    Vertex const bit = Vertex{1} << p;
    for (unsigned j = 0; j < 2; ++j) {
      std::vector<Vertex> map(m);
      for (Vertex f = 0; f < m; ++f) {
        map[f] = j ? (f | bit) : (f & ~bit);
      }
      if (!closed_under_map(r, map)) {
        return false;
      }
    }
  }
  return true;
}

bool is_n_symmetric(CubeRelation const& r) {
  std::size_t const m = r.vertex_count();
  for (std::size_t p = 0; p < r.dimension(); ++p) {
    std::vector<Vertex> map(m);
    for (Vertex f = 0; f < m; ++f) {
      map[f] = f ^ (Vertex{1} << p);
    }
    if (!closed_under_map(r, map)) {
      return false;
    }
  }
  return true;
}

bool is_transitive(CubeRelation const& r, std::size_t l) {
  return directional_compose(r, l, r.size()).size() == r.size();
}

bool is_n_tolerance(FiniteAlgebra const& alg, CubeRelation const& r) {
  return is_n_reflexive(r) && is_n_symmetric(r) && is_subalgebra(alg, r);
}

bool is_n_congruence(FiniteAlgebra const& alg, CubeRelation const& r) {
  if (!is_n_tolerance(alg, r)) {
    return false;
  }
  for (auto l : r.shape().items()) {
    if (!is_transitive(r, l)) {
      return false;
    }
  }
  return true;
}

CubeRelation face_relation(CubeRelation const& r, std::size_t l, unsigned j) {
  std::vector<std::uint64_t> codes;
  for (auto const& [a, b] : face_pairs(r, l)) {
    codes.push_back(j ? b : a);
  }
  return CubeRelation(r.shape().without(l), r.carrier_size(), std::move(codes));
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> face_pairs(CubeRelation const& r,
                                                                 std::size_t l) {
  std::size_t const p = r.shape().position(l);
  std::size_t const m = r.vertex_count();
  CubeCodec const half(r.carrier_size(), m / 2);
  std::vector<Element> labels(m);
  std::vector<Element> f0(m / 2);
  std::vector<Element> f1(m / 2);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  out.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r.labels_of(i, labels);
    for (Vertex g = 0; g < m / 2; ++g) {
      f0[g] = labels[insert_bit(g, p, 0)];
      f1[g] = labels[insert_bit(g, p, 1)];
    }
    out.emplace_back(half.encode(f0), half.encode(f1));
  }
  return out;
}

std::string write_relation(CubeRelation const& r, std::string const& theta_names) {
  std::ostringstream out;
  out << "# shape " << r.shape().to_string() << "\n";
  out << "# thetas " << theta_names << "\n";
  out << "# carrier " << r.carrier_size() << "\n";
  out << "# members " << r.size() << "\n";
  std::vector<Element> labels(r.vertex_count());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r.labels_of(i, labels);
    for (std::size_t v = 0; v < labels.size(); ++v) {
      out << (v ? "," : "") << labels[v];
    }
    out << "\n";
  }
  return out.str();
}

namespace {

std::size_t parse_count(std::string const& s, std::string const& where) {
  try {
    std::size_t used = 0;
    unsigned long long const v = std::stoull(s, &used);
    if (used != s.size()) {
      throw ParseError(where, "trailing characters after a number");
    }
    return static_cast<std::size_t>(v);
  } catch (std::logic_error const&) {
    throw ParseError(where, "expected a number, got '" + s + "'");
  }
}

IndexSet parse_shape(std::string const& s, std::string const& where) {
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') {
    throw ParseError(where, "shape must look like {0,1}");
  }
  std::vector<std::size_t> items;
  std::stringstream in(s.substr(1, s.size() - 2));
  std::string part;
  while (std::getline(in, part, ',')) {
    items.push_back(parse_count(part, where));
  }
  try {
    return IndexSet(std::move(items));
  } catch (InvalidArgument const& e) {
    throw ParseError(where, e.what());
  }
}

}  // namespace

CubeRelation parse_relation(std::string const& text, std::string const& source) {
  std::stringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::optional<IndexSet> shape;
  std::optional<std::size_t> carrier;
  std::optional<std::size_t> expected;
  std::vector<std::uint64_t> codes;
  while (std::getline(in, line)) {
    ++line_no;
    std::string const where = source + " line " + std::to_string(line_no);
    if (line.empty()) {
      continue;
    }
    if (line[0] == '#') {
      std::stringstream h(line.substr(1));
      std::string key;
      h >> key;
      std::string value;
      std::getline(h, value);
      value.erase(0, value.find_first_not_of(' '));
      if (key == "shape") {
        shape = parse_shape(value, where);
      } else if (key == "carrier") {
        carrier = parse_count(value, where);
      } else if (key == "members") {
        expected = parse_count(value, where);
      }
      continue;
    }
    if (!shape || !carrier) {
      throw ParseError(where, "cube before the shape and carrier headers");
    }
    std::vector<Element> labels;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      std::size_t const x = parse_count(cell, where);
      if (x >= *carrier) {
        throw ParseError(where, "label " + std::to_string(x) + " outside the carrier");
      }
      labels.push_back(static_cast<Element>(x));
    }
    if (labels.size() != (std::size_t{1} << shape->size())) {
      throw ParseError(where, "expected " + std::to_string(std::size_t{1} << shape->size()) +
                                  " labels, got " + std::to_string(labels.size()));
    }
    codes.push_back(CubeCodec(*carrier, labels.size()).encode(labels));
  }
  if (!shape || !carrier) {
    throw ParseError(source, "missing shape or carrier header");
  }
  CubeRelation r(*shape, *carrier, std::move(codes));
  if (expected && *expected != r.size()) {
    throw ParseError(source, "header announces " + std::to_string(*expected) +
                                 " members, found " + std::to_string(r.size()));
  }
  return r;
}

DerivedAlgebra make_derived_algebra(FiniteAlgebra const& alg, CubeRelation const& universe,
                                    std::size_t size_cap) {
  if (universe.carrier_size() != alg.size()) {
    throw InvalidArgument("universe and algebra on different carriers");
  }
  std::size_t const n = universe.size();
  if (n == 0) {
    throw InvalidArgument("derived algebra needs a non-empty universe");
  }
  if (n > size_cap) {
    throw ResourceError("derived algebra of size " + std::to_string(n) + " exceeds the bound " +
                        std::to_string(size_cap));
  }
  std::size_t const m = universe.vertex_count();
  std::vector<Element> all(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    universe.labels_of(i, std::span(all.data() + i * m, m));
  }
  std::vector<OperationTable> ops;
  std::vector<Element> out(m);
  for (auto const& op : alg.operations()) {
    std::size_t const k = op.arity();
    std::size_t const entries = checked_pow(n, k, std::size_t{1} << 26);
    std::vector<Element> table(entries);
    std::vector<Element> args(k);
    for (std::size_t t = 0; t < entries; ++t) {
      OperationTable::unflatten(t, n, args);
      for (std::size_t v = 0; v < m; ++v) {
        std::size_t idx = 0;
        for (std::size_t c = k; c-- > 0;) {
          idx = idx * alg.size() + all[args[c] * m + v];
        }
        out[v] = op[idx];
      }
      std::size_t const found = universe.index_of(universe.codec().encode(out));
      if (found == n) {
        std::string inputs;
        for (std::size_t c = 0; c < k; ++c) {
          inputs += (c ? "; " : "") + universe.member(args[c]).to_string();
        }
        throw InvalidArgument("universe not closed: " + op.name() + "(" + inputs + ") = " +
                              Cube(universe.shape(), out).to_string() + " is missing");
      }
      table[t] = static_cast<Element>(found);
    }
    ops.emplace_back(op.name(), k, n, std::move(table));
  }
  return DerivedAlgebra{FiniteAlgebra(alg.name() + "^" + universe.shape().to_string(), n,
                                      std::move(ops)),
                        universe};
}

DerivedAlgebra make_derived_algebra(FiniteAlgebra const& alg, IndexSet const& shape,
                                    std::span<Cube const> universe, std::size_t size_cap) {
  return make_derived_algebra(alg, CubeRelation::from_cubes(shape, alg.size(), universe),
                              size_cap);
}

}  // namespace hcomm
