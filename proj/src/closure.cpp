#include "hcomm/closure.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "hcomm/error.hpp"

namespace hcomm {

namespace {

constexpr std::uint64_t dense_limit = std::uint64_t{1} << 27;
constexpr std::size_t no_creator = std::numeric_limits<std::size_t>::max();

}  // namespace

CodeSet::CodeSet(std::uint64_t code_space) : dense_(code_space <= dense_limit) {
  if (dense_) {
    bits_.assign((code_space + 63) / 64, 0);
  }
}

bool CodeSet::insert(std::uint64_t code) {
  if (dense_) {
    std::uint64_t const bit = std::uint64_t{1} << (code & 63);
    std::uint64_t& word = bits_[code >> 6];
    if (word & bit) {
      return false;
    }
    word |= bit;
    return true;
  }
  return sparse_.insert(code).second;
}

bool CodeSet::contains(std::uint64_t code) const {
  if (dense_) {
    return (bits_[code >> 6] >> (code & 63)) & 1u;
  }
  return sparse_.count(code) != 0;
}

struct SubpowerClosure::Impl {
  struct OpState {
    OperationTable const* op;
    bool associative;
    std::vector<std::size_t> gens;
    std::size_t p = 0;
    std::size_t q = 0;
  };

  FiniteAlgebra alg;
  IndexSet shape;
  std::size_t m;
  std::size_t r;
  CubeCodec codec;
  CodeSet set;
  std::size_t cap;
  std::vector<Element> labels;
  std::vector<std::uint64_t> codes;
  std::vector<OpState> ops;
  std::vector<std::vector<Vertex>> coordinate_maps;
  CubeRelation const* bound = nullptr;
  bool escaped = false;
  std::vector<Element> out;
  std::vector<std::size_t> tuple;

  Impl(FiniteAlgebra const& a, IndexSet const& s, ClosureOptions options)
      : alg(a),
        shape(s),
        m(std::size_t{1} << s.size()),
        r(a.size()),
        codec(a.size(), m),
        set(codec.code_space()),
        cap(options.member_cap),
        out(m) {
    for (auto const& op : alg.operations()) {
      ops.push_back(OpState{&op, op.arity() == 2 && is_associative(op), {}, 0, 0});
    }
    if (options.coordinate_maps) {
      for (std::size_t p = 0; p < shape.size(); ++p) {
        Vertex const bit = Vertex{1} << p;
        for (unsigned j = 0; j < 2; ++j) {
          std::vector<Vertex> map(m);
          for (Vertex f = 0; f < m; ++f) {
            map[f] = j ? (f | bit) : (f & ~bit);
          }
          coordinate_maps.push_back(std::move(map));
        }
        std::vector<Vertex> map(m);
        for (Vertex f = 0; f < m; ++f) {
          map[f] = f ^ bit;
        }
        coordinate_maps.push_back(std::move(map));
      }
    }
  }

  std::size_t size() const noexcept { return codes.size(); }
  // Nothing can be added once every cube is present.
  bool saturated() const noexcept { return codes.size() == codec.code_space(); }
  bool stop() const noexcept { return escaped || saturated(); }
  Element const* at(std::size_t i) const { return labels.data() + i * m; }

  void insert(std::span<Element const> v, std::size_t creator) {
    std::uint64_t const code = codec.encode(v);
    if (set.contains(code)) {
      return;
    }
    if (bound != nullptr && !bound->contains_code(code)) {
      escaped = true;
      return;
    }
    if (codes.size() >= cap) {
      throw ResourceError("relation closure exceeded the member cap of " + std::to_string(cap) +
                          " cubes");
    }
    set.insert(code);
    codes.push_back(code);
    labels.insert(labels.end(), v.begin(), v.end());
    for (std::size_t o = 0; o < ops.size(); ++o) {
      if (ops[o].associative && o != creator) {
        ops[o].gens.push_back(codes.size() - 1);
      }
    }
  }

  void apply_binary(std::size_t o, std::size_t x, std::size_t y) {
    auto const t = ops[o].op->table();
    Element const* a = at(x);
    Element const* b = at(y);
    for (std::size_t v = 0; v < m; ++v) {
      out[v] = t[a[v] + r * b[v]];
    }
    insert(out, o);
  }

  void apply_tuple(std::size_t o) {
    auto const t = ops[o].op->table();
    std::size_t const k = tuple.size();
    for (std::size_t v = 0; v < m; ++v) {
      std::size_t idx = 0;
      for (std::size_t c = k; c-- > 0;) {
        idx = idx * r + at(tuple[c])[v];
      }
      out[v] = t[idx];
    }
    insert(out, o);
  }

  bool step(std::size_t o) {
    std::size_t const before = size();
    OpState& s = ops[o];
    std::size_t const k = s.op->arity();
    if (k == 0) {
      return false;
    }
    if (k == 1) {
      auto const t = s.op->table();
      while (s.p < size() && !stop()) {
        Element const* a = at(s.p++);
        for (std::size_t v = 0; v < m; ++v) {
          out[v] = t[a[v]];
        }
        insert(out, o);
      }
    } else if (s.associative) {
      while ((s.q < s.gens.size() || s.p < size()) && !stop()) {
        for (; s.q < s.gens.size() && !stop(); ++s.q) {
          for (std::size_t x = 0; x < s.p && !stop(); ++x) {
            apply_binary(o, x, s.gens[s.q]);
          }
        }
        std::size_t const hi = size();
        for (std::size_t x = s.p; x < hi && !stop(); ++x) {
          for (std::size_t g = 0; g < s.q && !stop(); ++g) {
            apply_binary(o, x, s.gens[g]);
          }
        }
        s.p = hi;
      }
    } else {
      while (s.p < size() && !stop()) {
        std::size_t const old = s.p;
        std::size_t const end = size();
        tuple.assign(k, 0);
        // Tuples over [0,end) with a first new coordinate at position j.
        for (std::size_t j = 0; j < k && !stop(); ++j) {
          std::vector<std::size_t> lo(k, 0);
          std::vector<std::size_t> hi(k, end);
          for (std::size_t c = 0; c < j; ++c) {
            hi[c] = old;
          }
          lo[j] = old;
          if (old == 0 && j > 0) {
            continue;
          }
          for (std::size_t c = 0; c < k; ++c) {
            tuple[c] = lo[c];
          }
          while (!stop()) {
            apply_tuple(o);
            std::size_t c = 0;
            while (c < k && ++tuple[c] == hi[c]) {
              tuple[c] = lo[c];
              ++c;
            }
            if (c == k) {
              break;
            }
          }
        }
        s.p = end;
      }
    }
    return size() != before;
  }

  void run() {
    bool progress = true;
    while (progress && !stop()) {
      progress = false;
      for (std::size_t o = 0; o < ops.size() && !stop(); ++o) {
        progress = step(o) || progress;
      }
    }
  }
};

SubpowerClosure::SubpowerClosure(FiniteAlgebra const& alg, IndexSet const& shape,
                                 ClosureOptions options)
    : impl_(std::make_unique<Impl>(alg, shape, options)) {
  std::vector<Element> c(impl_->m);
  for (auto const& op : impl_->alg.operations()) {
    if (op.arity() == 0) {
      std::fill(c.begin(), c.end(), op[0]);
      impl_->insert(c, no_creator);
    }
  }
  impl_->run();
}

SubpowerClosure::~SubpowerClosure() = default;

bool SubpowerClosure::add_generator(std::span<Element const> labels) {
  Impl& s = *impl_;
  if (labels.size() != s.m) {
    throw InvalidArgument("generator has " + std::to_string(labels.size()) + " labels, expected " +
                          std::to_string(s.m));
  }
  s.bound = bound_;
  if (s.escaped) {
    return false;
  }
  std::vector<std::vector<Element>> orbit{std::vector<Element>(labels.begin(), labels.end())};
  std::set<std::uint64_t> seen{s.codec.encode(labels)};
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (auto const& map : s.coordinate_maps) {
      std::vector<Element> image(s.m);
      for (std::size_t v = 0; v < s.m; ++v) {
        image[v] = orbit[i][map[v]];
      }
      if (seen.insert(s.codec.encode(image)).second) {
        orbit.push_back(std::move(image));
      }
    }
  }
  for (auto const& g : orbit) {
    s.insert(g, no_creator);
    s.run();
    if (s.escaped) {
      return false;
    }
  }
  return true;
}

bool SubpowerClosure::contains(std::span<Element const> labels) const {
  return impl_->set.contains(impl_->codec.encode(labels));
}

std::size_t SubpowerClosure::size() const noexcept { return impl_->size(); }

CubeRelation SubpowerClosure::relation() const {
  return CubeRelation(impl_->shape, impl_->r, impl_->codes);
}

}  // namespace hcomm
