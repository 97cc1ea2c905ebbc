#include "hcomm/term.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "hcomm/error.hpp"

namespace hcomm {

struct Term::Node {
  bool is_var = false;
  std::size_t var = 0;
  std::string symbol;
  std::vector<Term> args;
  std::size_t depth = 0;
  std::size_t bound = 0;
  std::size_t nodes = 1;
};

Term Term::variable(std::size_t index) {
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->var = index;
  node->bound = index + 1;
  return Term(std::move(node));
}

Term Term::apply(std::string op, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->symbol = std::move(op);
  node->depth = 1;
  for (auto const& a : args) {
    node->depth = std::max(node->depth, a.depth() + 1);
    node->bound = std::max(node->bound, a.variable_bound());
    node->nodes += a.node_count();
  }
  node->args = std::move(args);
  return Term(std::move(node));
}

bool Term::is_variable() const noexcept { return node_->is_var; }

std::size_t Term::variable_index() const {
  if (!node_->is_var) {
    throw InvalidArgument("term " + to_string() + " is not a variable");
  }
  return node_->var;
}

std::string const& Term::symbol() const {
  if (node_->is_var) {
    throw InvalidArgument("a variable has no operation symbol");
  }
  return node_->symbol;
}

std::span<Term const> Term::args() const { return node_->args; }

std::size_t Term::depth() const noexcept { return node_->depth; }
std::size_t Term::variable_bound() const noexcept { return node_->bound; }
std::size_t Term::node_count() const noexcept { return node_->nodes; }

Term Term::substitute(std::span<Term const> replacements) const {
  if (node_->is_var) {
    if (node_->var >= replacements.size()) {
      throw InvalidArgument("substitution has no replacement for x" + std::to_string(node_->var));
    }
    return replacements[node_->var];
  }
  std::vector<Term> args;
  args.reserve(node_->args.size());
  for (auto const& a : node_->args) {
    args.push_back(a.substitute(replacements));
  }
  return apply(node_->symbol, std::move(args));
}

std::string Term::to_string() const {
  if (node_->is_var) {
    return "x" + std::to_string(node_->var);
  }
  std::string out = node_->symbol + "(";
  for (std::size_t i = 0; i < node_->args.size(); ++i) {
    if (i > 0) {
      out += ",";
    }
    out += node_->args[i].to_string();
  }
  return out + ")";
}

bool Term::operator==(Term const& other) const {
  if (node_ == other.node_) {
    return true;
  }
  if (node_->is_var != other.node_->is_var) {
    return false;
  }
  if (node_->is_var) {
    return node_->var == other.node_->var;
  }
  return node_->symbol == other.node_->symbol && node_->args == other.node_->args;
}

namespace {

class TermParser {
 public:
  explicit TermParser(std::string const& text) : text_(text) {}

  Term parse_all() {
    Term t = parse_term();
    skip_space();
    if (pos_ != text_.size()) {
      fail("trailing characters");
    }
    return t;
  }

 private:
  [[noreturn]] void fail(std::string const& what) const {
    throw ParseError("term column " + std::to_string(pos_ + 1), what + " in '" + text_ + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string identifier() {
    skip_space();
    std::size_t const start = pos_;
    while (pos_ < text_.size()) {
      char const c = text_[pos_];
      if (c == '(' || c == ')' || c == ',' || std::isspace(static_cast<unsigned char>(c))) {
        break;
      }
      ++pos_;
    }
    if (start == pos_) {
      fail("expected a symbol");
    }
    return text_.substr(start, pos_ - start);
  }

  Term parse_term() {
    std::string name = identifier();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      std::vector<Term> args;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
        return Term::apply(std::move(name), {});
      }
      while (true) {
        args.push_back(parse_term());
        skip_space();
        if (pos_ >= text_.size()) {
          fail("unterminated argument list");
        }
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
      return Term::apply(std::move(name), std::move(args));
    }
    if (name.size() >= 2 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      return Term::variable(std::stoul(name.substr(1)));
    }
    fail("bare symbol '" + name + "' is neither a variable x<i> nor an application");
  }

  std::string const& text_;
  std::size_t pos_ = 0;
};

// Operation indices resolved once, so evaluation does not look up names.
struct CompiledTerm {
  bool is_var;
  std::size_t index;  // variable index or operation index
  std::vector<CompiledTerm> args;
};

CompiledTerm compile(FiniteAlgebra const& alg, Term const& t) {
  if (t.is_variable()) {
    return {true, t.variable_index(), {}};
  }
  std::size_t const op = alg.operation_index(t.symbol());
  if (alg.operations()[op].arity() != t.args().size()) {
    throw InvalidArgument("operation '" + t.symbol() + "' has arity " +
                          std::to_string(alg.operations()[op].arity()) + " but is applied to " +
                          std::to_string(t.args().size()) + " arguments");
  }
  CompiledTerm c{false, op, {}};
  c.args.reserve(t.args().size());
  for (auto const& a : t.args()) {
    c.args.push_back(compile(alg, a));
  }
  return c;
}

Element eval_compiled(FiniteAlgebra const& alg, CompiledTerm const& c,
                      std::span<Element const> assignment) {
  if (c.is_var) {
    return assignment[c.index];
  }
  auto const& op = alg.operations()[c.index];
  std::size_t index = 0;
  std::size_t weight = 1;
  for (auto const& a : c.args) {
    index += weight * eval_compiled(alg, a, assignment);
    weight *= alg.size();
  }
  return op[index];
}

// Column of values over all assignments, in table order.
std::vector<Element> compiled_column(FiniteAlgebra const& alg, CompiledTerm const& c,
                                     std::size_t arity, std::size_t rows) {
  std::size_t const n = alg.size();
  std::vector<Element> out(rows);
  if (c.is_var) {
    std::size_t stride = 1;
    for (std::size_t i = 0; i < c.index; ++i) {
      stride *= n;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      out[r] = static_cast<Element>((r / stride) % n);
    }
    return out;
  }
  auto const& op = alg.operations()[c.index];
  std::vector<std::size_t> index(rows, 0);
  std::size_t weight = 1;
  for (auto const& a : c.args) {
    auto col = compiled_column(alg, a, arity, rows);
    for (std::size_t r = 0; r < rows; ++r) {
      index[r] += weight * col[r];
    }
    weight *= n;
  }
  for (std::size_t r = 0; r < rows; ++r) {
    out[r] = op[index[r]];
  }
  return out;
}

struct TableHash {
  std::size_t operator()(std::vector<Element> const& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

Term Term::parse(std::string const& text) { return TermParser(text).parse_all(); }

Element eval_term(FiniteAlgebra const& alg, Term const& t, std::span<Element const> assignment) {
  if (t.variable_bound() > assignment.size()) {
    throw InvalidArgument("term " + t.to_string() + " needs " +
                          std::to_string(t.variable_bound()) + " variables, assignment has " +
                          std::to_string(assignment.size()));
  }
  for (auto a : assignment) {
    if (a >= alg.size()) {
      throw InvalidArgument("assignment value " + std::to_string(a) + " outside the carrier");
    }
  }
  return eval_compiled(alg, compile(alg, t), assignment);
}

OperationTable term_table(FiniteAlgebra const& alg, Term const& t, std::size_t arity,
                          std::string name) {
  if (t.variable_bound() > arity) {
    throw InvalidArgument("term " + t.to_string() + " uses variables beyond arity " +
                          std::to_string(arity));
  }
  std::size_t const rows = checked_pow(alg.size(), arity, std::size_t{1} << 28);
  auto col = compiled_column(alg, compile(alg, t), arity, rows);
  return OperationTable(std::move(name), arity, alg.size(), std::move(col));
}

bool check_identity(FiniteAlgebra const& alg, Term const& lhs, Term const& rhs,
                    std::size_t arity) {
  return term_table(alg, lhs, arity).same_function(term_table(alg, rhs, arity));
}

TermEnumerationInfo for_each_term_operation(
    FiniteAlgebra const& alg, std::size_t arity, TermSearchCaps caps,
    std::function<bool(TermOperation const&)> const& visit) {
  if (arity == 0) {
    throw InvalidArgument("term enumeration needs arity >= 1");
  }
  std::size_t const n = alg.size();
  std::size_t const rows = checked_pow(n, arity, std::size_t{1} << 24);

  std::vector<Term> terms;
  std::vector<std::vector<Element>> tables;
  std::unordered_set<std::vector<Element>, TableHash> seen;
  TermEnumerationInfo info;

  // Returns false when enumeration must stop.
  auto offer = [&](Term term, std::vector<Element> table) {
    if (!seen.insert(table).second) {
      return true;
    }
    terms.push_back(term);
    tables.push_back(table);
    TermOperation op{std::move(term), OperationTable("t" + std::to_string(terms.size() - 1),
                                                     arity, n, std::move(table))};
    if (!visit(op)) {
      info.stopped = true;
      return false;
    }
    if (terms.size() >= caps.count_cap) {
      info.truncated = true;
      return false;
    }
    return true;
  };

  for (std::size_t i = 0; i < arity; ++i) {
    std::vector<Element> col(rows);
    std::size_t stride = 1;
    for (std::size_t k = 0; k < i; ++k) {
      stride *= n;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      col[r] = static_cast<Element>((r / stride) % n);
    }
    if (!offer(Term::variable(i), std::move(col))) {
      return info;
    }
  }

  std::size_t level_start = 0;  // first index of the previous depth level
  for (std::size_t depth = 1; depth <= caps.depth_cap; ++depth) {
    std::size_t const available = terms.size();
    std::size_t const before = terms.size();
    for (auto const& op : alg.operations()) {
      std::size_t const k = op.arity();
      if (k == 0) {
        if (depth == 1 && !offer(Term::apply(op.name(), {}), std::vector<Element>(rows, op[0]))) {
          return info;
        }
        continue;
      }
      // Lexicographic child tuples over [0, available) with at least one
      // child from the previous level.
      std::vector<std::size_t> child(k, 0);
      while (true) {
        bool const fresh = std::any_of(child.begin(), child.end(),
                                       [&](std::size_t c) { return c >= level_start; });
        if (fresh) {
          std::vector<Element> table(rows);
          for (std::size_t r = 0; r < rows; ++r) {
            std::size_t index = 0;
            for (std::size_t c = k; c-- > 0;) {
              index = index * n + tables[child[c]][r];
            }
            table[r] = op[index];
          }
          if (!seen.contains(table)) {
            std::vector<Term> args;
            args.reserve(k);
            for (auto c : child) {
              args.push_back(terms[c]);
            }
            if (!offer(Term::apply(op.name(), std::move(args)), std::move(table))) {
              info.depth_reached = depth;
              return info;
            }
          }
        }
        std::size_t pos = k;
        while (pos-- > 0) {
          if (++child[pos] < available) {
            break;
          }
          child[pos] = 0;
        }
        if (pos == static_cast<std::size_t>(-1)) {
          break;
        }
      }
    }
    info.depth_reached = depth;
    if (terms.size() == before) {
      info.saturated = true;
      return info;
    }
    level_start = available;
  }
  return info;
}

TermEnumeration enumerate_term_operations(FiniteAlgebra const& alg, std::size_t arity,
                                          TermSearchCaps caps) {
  TermEnumeration out;
  out.info = for_each_term_operation(alg, arity, caps, [&](TermOperation const& op) {
    out.operations.push_back(op);
    return true;
  });
  return out;
}

}  // namespace hcomm
