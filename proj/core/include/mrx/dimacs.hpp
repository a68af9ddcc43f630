#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "mrx/formula.hpp"

namespace mrx {

/// Reads DIMACS CNF. Comment lines, a single `p cnf <vars> <clauses>` header
/// and zero-terminated clauses (possibly spanning lines) are accepted. A `%`
/// line ends the clause section. Clauses are normalized: tautologies dropped,
/// duplicates merged, empty clauses kept; each event is recorded in notes().
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(std::string_view text);
CnfFormula read_dimacs_file(const std::filesystem::path& path);

void write_dimacs(std::ostream& out, const CnfFormula& formula);
std::string to_dimacs(const CnfFormula& formula);
void write_dimacs_file(const std::filesystem::path& path, const CnfFormula& formula);

/// Literal-list file: one signed integer per line, read as a conjunction of
/// unit clauses. Blank lines and `c` comments are ignored.
CnfFormula parse_literal_list(std::istream& in);
CnfFormula parse_literal_list(std::string_view text);
void write_literal_list(std::ostream& out, std::span<const Literal> literals);

/// Query file in either format: DIMACS when a `p cnf` header is present,
/// literal list otherwise.
CnfFormula parse_query(std::string_view text);
CnfFormula read_query_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace mrx
