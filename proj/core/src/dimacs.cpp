#include "mrx/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mrx/errors.hpp"

namespace mrx {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view token, std::size_t line) {
  std::int64_t value = 0;
  const char* first = token.data();
  if (!token.empty() && token.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError("integer out of range: '" + std::string(token) + "'", line);
  }
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("expected integer, got '" + std::string(token) + "'", line);
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

void add_normalized(CnfFormula& f, std::vector<Literal> lits, std::size_t line) {
  auto clause = Clause::make(std::move(lits));
  if (!clause) {
    f.note({FormulaNote::Kind::tautology_dropped, line, 0, "tautological clause dropped"});
    return;
  }
  const bool is_empty = clause->empty();
  const auto [id, inserted] = f.add(std::move(*clause));
  if (!inserted) {
    f.note({FormulaNote::Kind::duplicate_merged, line, id,
            "duplicate of clause " + std::to_string(id) + " merged"});
  } else if (is_empty) {
    f.note({FormulaNote::Kind::empty_clause, line, id, "empty clause (formula is inconsistent)"});
  }
}

}  // namespace

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula formula;
  bool have_header = false;
  std::int64_t declared_clauses = 0;
  std::size_t read_clauses = 0;
  std::vector<Literal> pending;
  std::size_t pending_line = 0;
  std::size_t line_no = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == 'c') continue;
    if (body.front() == '%') break;
    if (body.front() == 'p') {
      if (have_header) throw ParseError("duplicate header", line_no);
      const auto tokens = split(body);
      if (tokens.size() != 4 || tokens[0] != "p" || tokens[1] != "cnf") {
        throw ParseError("malformed header, expected 'p cnf <vars> <clauses>'", line_no);
      }
      const std::int64_t vars = parse_int(tokens[2], line_no);
      declared_clauses = parse_int(tokens[3], line_no);
      if (vars < 0 || declared_clauses < 0) throw ParseError("negative count in header", line_no);
      if (vars > std::int64_t{kMaxVar}) throw ParseError("variable count exceeds limit", line_no);
      formula.reserve_vars(static_cast<Var>(vars));
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("clause data before 'p cnf' header", line_no);
    for (std::string_view token : split(body)) {
      const std::int64_t value = parse_int(token, line_no);
      if (value == 0) {
        add_normalized(formula, std::move(pending), pending_line ? pending_line : line_no);
        pending.clear();
        pending_line = 0;
        ++read_clauses;
        continue;
      }
      const std::int64_t magnitude = value < 0 ? -value : value;
      if (magnitude > std::int64_t{kMaxVar}) {
        throw ParseError("variable index " + std::to_string(magnitude) + " exceeds limit", line_no);
      }
      if (pending.empty()) pending_line = line_no;
      pending.push_back(Literal::from_dimacs(value));
    }
  }
  if (!have_header) throw ParseError("missing 'p cnf' header", line_no);
  if (!pending.empty()) throw ParseError("last clause is not terminated by 0", pending_line);
  if (static_cast<std::int64_t>(read_clauses) != declared_clauses) {
    formula.note({FormulaNote::Kind::header_mismatch, 0, 0,
                  "header declares " + std::to_string(declared_clauses) + " clauses, read " +
                      std::to_string(read_clauses)});
  }
  return formula;
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CnfFormula read_dimacs_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return parse_dimacs(in);
}

void write_dimacs(std::ostream& out, const CnfFormula& formula) {
  out << "p cnf " << formula.num_vars() << ' ' << formula.size() << '\n';
  for (const Clause& c : formula.clauses()) out << c.to_dimacs() << '\n';
}

std::string to_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  write_dimacs(out, formula);
  return out.str();
}

void write_dimacs_file(const std::filesystem::path& path, const CnfFormula& formula) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  write_dimacs(out, formula);
}

CnfFormula parse_literal_list(std::istream& in) {
  CnfFormula formula;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == 'c') continue;
    const auto tokens = split(body);
    if (tokens.size() != 1) throw ParseError("expected one literal per line", line_no);
    const std::int64_t value = parse_int(tokens[0], line_no);
    if (value == 0) throw ParseError("literal 0 is not allowed in a literal list", line_no);
    const std::int64_t magnitude = value < 0 ? -value : value;
    if (magnitude > std::int64_t{kMaxVar}) throw ParseError("variable index exceeds limit", line_no);
    add_normalized(formula, {Literal::from_dimacs(value)}, line_no);
  }
  return formula;
}

CnfFormula parse_literal_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_literal_list(in);
}

void write_literal_list(std::ostream& out, std::span<const Literal> literals) {
  for (const Literal& lit : literals) out << lit.to_dimacs() << '\n';
}

CnfFormula parse_query(std::string_view text) {
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == 'c') continue;
    if (body.front() == 'p') return parse_dimacs(text);
    break;
  }
  return parse_literal_list(text);
}

CnfFormula read_query_file(const std::filesystem::path& path) {
  return parse_query(read_text_file(path));
}

}  // namespace mrx
