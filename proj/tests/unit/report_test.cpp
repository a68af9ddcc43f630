#include <gtest/gtest.h>

#include <sstream>

#include "mrx/errors.hpp"
#include "mrx/reconcile.hpp"
#include "mrx/report.hpp"

namespace mrx {
namespace {

Explanation table_explanation() {
  return reconcile({CnfFormula::of({{1, 2}, {-2, 3}, {-3}, {-2, 4}, {-4}}),
                    CnfFormula::of({{-3}, {5}}), CnfFormula::of({{1}}), ReconcileMode::general});
}

TEST(Fnv, KnownVectors) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Records, RoundTrip) {
  const Explanation ex = table_explanation();
  ReportContext ctx;
  ctx.command = "reconcile";
  ctx.seed = 12;
  ctx.inputs = {{"kb_a", "00"}};
  ctx.repair = {Clause::of({7, -8})};
  ctx.repair_dropped = {Clause::of({9})};
  std::ostringstream out;
  write_records(out, ctx, ex);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind(std::string(kRecordsHeader), 0), 0u);
  EXPECT_NE(text.find("seed 12\n"), std::string::npos);

  const ExplanationRecord rec = parse_records(text);
  EXPECT_EQ(rec.support, ex.support);
  EXPECT_EQ(rec.update, ex.update);
  EXPECT_EQ(rec.repair, ctx.repair);
  EXPECT_EQ(rec.repair_dropped, ctx.repair_dropped);
  EXPECT_EQ(rec.mode, ReconcileMode::general);
  EXPECT_EQ(rec.fields.at("update_size"), "2");
}

TEST(Records, NamedLinesUseNamer) {
  ReportContext ctx;
  ctx.command = "x";
  ctx.namer = [](Literal l) { return "v" + std::to_string(l.var()); };
  std::ostringstream out;
  write_records(out, ctx, table_explanation());
  EXPECT_NE(out.str().find("support_named (v1 | v2)"), std::string::npos);
  EXPECT_NE(out.str().find("(-v2 | v3)"), std::string::npos);
}

TEST(Records, StripTimingRemovesOnlyElapsed) {
  std::ostringstream a;
  std::ostringstream b;
  ReportContext ctx;
  ctx.command = "reconcile";
  Explanation x = table_explanation();
  Explanation y = x;
  y.elapsed = std::chrono::duration<double>(123.0);
  write_records(a, ctx, x);
  write_records(b, ctx, y);
  EXPECT_NE(a.str(), b.str());
  EXPECT_EQ(strip_timing(a.str()), strip_timing(b.str()));
  EXPECT_EQ(strip_timing(a.str()).find("elapsed_ms"), std::string::npos);
}

TEST(Records, RejectsBadInput) {
  EXPECT_THROW(parse_records("hello\n"), ParseError);
  const std::string header(kRecordsHeader);
  EXPECT_THROW(parse_records(header + "\nsupport 1 2\n"), ParseError);
  EXPECT_THROW(parse_records(header + "\nmode sideways\n"), ParseError);
}

TEST(Text, MentionsSizesAndVerification) {
  std::ostringstream out;
  ReportContext ctx;
  ctx.command = "reconcile";
  write_text(out, ctx, table_explanation());
  EXPECT_NE(out.str().find("update (2)"), std::string::npos);
  EXPECT_NE(out.str().find("entailment true"), std::string::npos);
}

}  // namespace
}  // namespace mrx
