#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mrx/formula.hpp"
#include "mrx/reconcile.hpp"

namespace mrx {

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

using LiteralNamer = std::function<std::string(Literal)>;

/// "(1 | -2)" by default, or with literal names when a namer is given.
std::string describe(const Clause& clause, const LiteralNamer& namer = {});

struct ReportContext {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> inputs;  // name, content hash
  std::vector<std::pair<std::string, std::string>> fields;  // extra key/value pairs
  /// Clauses added to the human KB before reconciliation (planning repair).
  std::vector<Clause> repair;
  /// Clauses dropped from the human KB so the plan becomes feasible.
  std::vector<Clause> repair_dropped;
  LiteralNamer namer;
};

inline constexpr std::string_view kRecordsHeader = "format mrx-records 1";

/// Line-delimited `key value` records. elapsed_ms is the only timing field.
void write_records(std::ostream& out, const ReportContext& ctx, const Explanation& ex,
                   std::string_view status = "ok");
void write_text(std::ostream& out, const ReportContext& ctx, const Explanation& ex,
                std::string_view status = "ok");

struct ExplanationRecord {
  ReconcileMode mode = ReconcileMode::general;
  std::vector<Clause> support;
  std::vector<Clause> update;
  std::vector<Clause> removed;
  std::vector<Clause> repair;
  std::vector<Clause> repair_dropped;
  std::map<std::string, std::string> fields;
};

/// Reads records written by write_records. Throws ParseError.
ExplanationRecord parse_records(std::string_view text);

/// Drops timing lines so two reports can be compared byte for byte.
std::string strip_timing(std::string_view records);

}  // namespace mrx
