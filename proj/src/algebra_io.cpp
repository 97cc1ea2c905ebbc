#include "hcomm/algebra_io.hpp"

#include <fstream>
#include <sstream>

#include "hcomm/error.hpp"
#include "json.hpp"

namespace hcomm {

namespace {

using nlohmann::json;

std::string line_of(std::string const& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
    }
  }
  return std::to_string(line);
}

json const& require(json const& obj, char const* key, std::string const& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(where, std::string("missing field '") + key + "'");
  }
  return *it;
}

std::size_t natural(json const& v, std::string const& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ParseError(where, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

FiniteAlgebra parse_algebra(std::string const& text, std::string const& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (json::parse_error const& e) {
    throw ParseError(source + " line " + line_of(text, e.byte == 0 ? 0 : e.byte - 1),
                     "malformed JSON");
  }
  if (!doc.is_object()) {
    throw ParseError(source, "top level must be an object");
  }
  auto const& name_field = require(doc, "name", source);
  if (!name_field.is_string()) {
    throw ParseError(source + " field 'name'", "expected a string");
  }
  std::string const name = name_field.get<std::string>();
  std::size_t const size = natural(require(doc, "size", source), source + " field 'size'");
  if (size == 0) {
    throw ParseError(source + " field 'size'", "size must be at least 1");
  }
  auto const& ops_field = require(doc, "operations", source);
  if (!ops_field.is_array()) {
    throw ParseError(source + " field 'operations'", "expected a list");
  }
  std::vector<OperationTable> ops;
  for (std::size_t i = 0; i < ops_field.size(); ++i) {
    std::string where = source + " operations[" + std::to_string(i) + "]";
    auto const& op = ops_field[i];
    if (!op.is_object()) {
      throw ParseError(where, "expected an object");
    }
    auto const& op_name = require(op, "name", where);
    if (!op_name.is_string()) {
      throw ParseError(where + ".name", "expected a string");
    }
    where += " ('" + op_name.get<std::string>() + "')";
    std::size_t const arity = natural(require(op, "arity", where), where + ".arity");
    auto const& table_field = require(op, "table", where);
    if (!table_field.is_array()) {
      throw ParseError(where + ".table", "expected a list");
    }
    std::size_t expected = 0;
    try {
      expected = checked_pow(size, arity, std::size_t{1} << 28);
    } catch (ResourceError const&) {
      throw ParseError(where + ".table", "table too large");
    }
    if (table_field.size() != expected) {
      throw ParseError(where + ".table", "table length " + std::to_string(table_field.size()) +
                                             ", expected " + std::to_string(expected) +
                                             " = size^arity");
    }
    std::vector<Element> table;
    table.reserve(expected);
    for (std::size_t k = 0; k < table_field.size(); ++k) {
      std::size_t const v = natural(table_field[k], where + ".table[" + std::to_string(k) + "]");
      if (v >= size) {
        throw ParseError(where + ".table[" + std::to_string(k) + "]",
                         "value " + std::to_string(v) + " outside the carrier");
      }
      table.push_back(static_cast<Element>(v));
    }
    ops.emplace_back(op_name.get<std::string>(), arity, size, std::move(table));
  }
  try {
    return FiniteAlgebra(name, size, std::move(ops));
  } catch (InvalidArgument const& e) {
    throw ParseError(source, e.what());
  }
}

std::string write_algebra(FiniteAlgebra const& alg) {
  std::ostringstream out;
  out << "{\n  \"name\": " << json(alg.name()).dump() << ",\n  \"size\": " << alg.size()
      << ",\n  \"operations\": [";
  auto const& ops = alg.operations();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    out << (i == 0 ? "\n" : ",\n") << "    {\"name\": " << json(ops[i].name()).dump()
        << ", \"arity\": " << ops[i].arity() << ", \"table\": [";
    auto const t = ops[i].table();
    for (std::size_t k = 0; k < t.size(); ++k) {
      out << (k == 0 ? "" : ", ") << t[k];
    }
    out << "]}";
  }
  out << (ops.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

std::string read_file(std::filesystem::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(path.string(), "cannot open file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

FiniteAlgebra load_algebra(std::filesystem::path const& path) {
  return parse_algebra(read_file(path), path.string());
}

void save_algebra(FiniteAlgebra const& alg, std::filesystem::path const& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InvalidArgument("cannot write " + path.string());
  }
  out << write_algebra(alg);
}

std::uint64_t content_hash(std::string const& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace hcomm
