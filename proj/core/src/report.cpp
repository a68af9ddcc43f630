#include "mrx/report.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "mrx/errors.hpp"

namespace mrx {

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string describe(const Clause& clause, const LiteralNamer& namer) {
  if (!namer) return to_string(clause);
  std::string out = "(";
  bool first = true;
  for (Literal l : clause) {
    if (!first) out += " | ";
    first = false;
    if (!l.positive()) out += '-';
    out += namer(Literal(l.var(), true));
  }
  return out + ")";
}

namespace {

std::string join(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t v : values) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out.empty() ? "-" : out;
}

const char* flag(bool b) { return b ? "true" : "false"; }

void clause_lines(std::ostream& out, const char* key, const std::vector<Clause>& clauses,
                  const LiteralNamer& namer) {
  for (const Clause& c : clauses) {
    out << key << ' ' << c.to_dimacs() << '\n';
    if (namer) out << key << "_named " << describe(c, namer) << '\n';
  }
}

}  // namespace

void write_records(std::ostream& out, const ReportContext& ctx, const Explanation& ex,
                   std::string_view status) {
  out << kRecordsHeader << '\n';
  out << "command " << ctx.command << '\n';
  out << "status " << status << '\n';
  out << "seed " << ctx.seed << '\n';
  out << "mode " << to_string(ex.mode) << '\n';
  for (const auto& [name, hash] : ctx.inputs) out << "input " << name << ' ' << hash << '\n';
  for (const auto& [key, value] : ctx.fields) out << key << ' ' << value << '\n';
  out << "support_size " << ex.support.size() << '\n';
  out << "update_size " << ex.update.size() << '\n';
  out << "removed_size " << ex.removed_from_kb_h.size() << '\n';
  out << "repair_size " << ctx.repair.size() << '\n';
  out << "repair_dropped_size " << ctx.repair_dropped.size() << '\n';
  clause_lines(out, "repair", ctx.repair, ctx.namer);
  clause_lines(out, "repair_dropped", ctx.repair_dropped, ctx.namer);
  clause_lines(out, "removed", ex.removed_from_kb_h, ctx.namer);
  clause_lines(out, "support", ex.support, ctx.namer);
  clause_lines(out, "update", ex.update, ctx.namer);
  out << "iterations " << ex.iterations << '\n';
  out << "mcs_count " << ex.mcs_count << '\n';
  out << "oracle_calls " << ex.oracle_calls << '\n';
  out << "seed_sizes " << join(ex.seed_sizes) << '\n';
  if (ex.verified) {
    out << "verify_entailment " << flag(ex.verification.entailment) << '\n';
    out << "verify_minimality " << flag(ex.verification.minimality) << '\n';
    out << "verify_consistency " << flag(ex.verification.consistency) << '\n';
  }
  out << "assumption_violation " << flag(ex.assumption_violation) << '\n';
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", ex.elapsed.count() * 1000.0);
  out << "elapsed_ms " << ms << '\n';
}

void write_text(std::ostream& out, const ReportContext& ctx, const Explanation& ex,
                std::string_view status) {
  out << ctx.command << ": " << status << " (mode " << to_string(ex.mode) << ", seed "
      << ctx.seed << ")\n";
  for (const auto& [key, value] : ctx.fields) out << "  " << key << ": " << value << '\n';
  auto block = [&](const char* title, const std::vector<Clause>& clauses) {
    out << title << " (" << clauses.size() << "):\n";
    for (const Clause& c : clauses) out << "  " << describe(c, ctx.namer) << '\n';
  };
  if (!ctx.repair.empty()) block("repair", ctx.repair);
  if (!ctx.repair_dropped.empty()) block("dropped for feasibility", ctx.repair_dropped);
  if (!ex.removed_from_kb_h.empty()) block("removed from human KB", ex.removed_from_kb_h);
  block("support", ex.support);
  block("update", ex.update);
  out << "iterations " << ex.iterations << ", MCSes " << ex.mcs_count << ", oracle calls "
      << ex.oracle_calls << '\n';
  if (ex.verified) {
    out << "verification: entailment " << flag(ex.verification.entailment) << ", minimality "
        << flag(ex.verification.minimality) << ", consistency "
        << flag(ex.verification.consistency) << '\n';
  }
  if (ex.assumption_violation) {
    out << "warning: updated human KB is inconsistent (preprocessing assumption violated)\n";
  }
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", ex.elapsed.count() * 1000.0);
  out << "elapsed " << ms << " ms\n";
}

ExplanationRecord parse_records(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line) || line != kRecordsHeader) {
    throw ParseError("missing '" + std::string(kRecordsHeader) + "' header", 1);
  }
  ++lineno;
  ExplanationRecord rec;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto space = line.find(' ');
    const std::string key = line.substr(0, space);
    const std::string value = space == std::string::npos ? "" : line.substr(space + 1);
    std::vector<Clause>* target = nullptr;
    if (key == "support") target = &rec.support;
    if (key == "update") target = &rec.update;
    if (key == "removed") target = &rec.removed;
    if (key == "repair") target = &rec.repair;
    if (key == "repair_dropped") target = &rec.repair_dropped;
    if (target == nullptr) {
      if (key == "mode") {
        try {
          rec.mode = parse_mode(value);
        } catch (const std::invalid_argument& e) {
          throw ParseError(e.what(), lineno);
        }
      }
      rec.fields[key] = value;
      continue;
    }
    std::istringstream lits(value);
    std::vector<Literal> clause;
    long long v = 0;
    bool terminated = false;
    while (lits >> v) {
      if (v == 0) {
        terminated = true;
        break;
      }
      try {
        clause.push_back(Literal::from_dimacs(v));
      } catch (const std::exception& e) {
        throw ParseError(e.what(), lineno);
      }
    }
    if (!terminated) throw ParseError("clause record without terminating 0", lineno);
    auto made = Clause::make(std::move(clause));
    if (!made) throw ParseError("tautological clause record", lineno);
    target->push_back(std::move(*made));
  }
  return rec;
}

std::string strip_timing(std::string_view records) {
  std::string out;
  std::size_t pos = 0;
  while (pos < records.size()) {
    std::size_t end = records.find('\n', pos);
    if (end == std::string_view::npos) end = records.size();
    const std::string_view line = records.substr(pos, end - pos);
    if (!line.starts_with("elapsed_ms ")) {
      out += line;
      out += '\n';
    }
    pos = end + 1;
  }
  return out;
}

}  // namespace mrx
