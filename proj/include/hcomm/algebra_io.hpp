#pragma once

#include <filesystem>
#include <string>

#include "hcomm/algebra.hpp"

namespace hcomm {

// Algebra documents are JSON objects with the fields name, size and
// operations (a list of {name, arity, table}); tables are flat integer
// lists in colexicographic argument order. write_algebra emits one canonical
// layout, so parse/write round trips are byte-exact.
FiniteAlgebra parse_algebra(std::string const& text, std::string const& source = "<input>");
std::string write_algebra(FiniteAlgebra const& alg);

FiniteAlgebra load_algebra(std::filesystem::path const& path);
void save_algebra(FiniteAlgebra const& alg, std::filesystem::path const& path);

// 64-bit FNV-1a of raw bytes; used to key caches to file contents.
std::uint64_t content_hash(std::string const& bytes);
std::string read_file(std::filesystem::path const& path);

}  // namespace hcomm
