#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "mrx/dimacs.hpp"
#include "mrx/report.hpp"

namespace mrx::cli {
namespace {

namespace fs = std::filesystem;
const std::string kData = MRX_TEST_DATA_DIR;
const std::string kTable = kData + "/table/";
const std::string kBw = kData + "/blocksworld/";

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun mrx(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mrx-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }
  fs::path dir_;
};

TEST_F(CliTest, ReconcileTableExample) {
  const CliRun r = mrx({"reconcile", kTable + "kb_a.cnf", kTable + "kb_h.cnf", "--query",
                     kTable + "query.txt", "--format", "records"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("update_size 2\n"), std::string::npos);
  EXPECT_NE(r.out.find("seed 0\n"), std::string::npos);
  EXPECT_NE(r.out.find("input kb_a "), std::string::npos);
}

TEST_F(CliTest, ReconcileAlreadyEntailed) {
  write("a.cnf", "p cnf 2 1\n1 0\n");
  write("h.cnf", "p cnf 2 2\n1 0\n2 0\n");
  write("q.txt", "1\n");
  const CliRun r = mrx({"reconcile", path("a.cnf"), path("h.cnf"), "--query", path("q.txt"),
                     "--format", "records"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("update_size 0\n"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  write("bad.cnf", "p cnf 2 1\n1 x 0\n");
  write("a.cnf", "p cnf 2 1\n2 0\n");
  write("q.txt", "1\n");
  EXPECT_EQ(mrx({}).code, kUsage);
  EXPECT_EQ(mrx({"frobnicate"}).code, kUsage);
  EXPECT_EQ(mrx({"reconcile", path("bad.cnf"), path("a.cnf"), "--query", path("q.txt")}).code,
            kInput);
  EXPECT_EQ(mrx({"reconcile", path("a.cnf"), path("a.cnf"), "--query", path("q.txt")}).code,
            kPremise);
  EXPECT_EQ(mrx({"reconcile", kTable + "kb_a.cnf", kTable + "kb_h.cnf", "--query",
                 kTable + "query.txt", "--timeout", "0"})
                .code,
            kUsage);
  EXPECT_EQ(mrx({"--help"}).code, kOk);
}

TEST_F(CliTest, TimeoutEmitsPartialReport) {
  // Random 3-SAT near the threshold with a forced backbone literal.
  std::ostringstream kb;
  const int n = 200;
  const int m = 850;
  kb << "p cnf " << n << ' ' << m + 1 << "\n1 0\n";
  std::uint64_t x = 88172645463325252ull;
  auto next = [&] {
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    return x;
  };
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < 3; ++k) {
      const int v = 2 + static_cast<int>(next() % (n - 1));
      kb << ((next() & 1) ? v : -v) << ' ';
    }
    kb << "0\n";
  }
  write("a.cnf", kb.str());
  write("h.cnf", "p cnf 1 0\n");
  write("q.txt", "1\n");
  const CliRun r = mrx({"reconcile", path("a.cnf"), path("h.cnf"), "--query", path("q.txt"),
                     "--timeout", "0.001", "--format", "records"});
  if (r.code == kPremise) GTEST_SKIP() << "generated instance is unsatisfiable";
  EXPECT_EQ(r.code, kTimeout);
  EXPECT_NE(r.out.find("status timeout\n"), std::string::npos);
  EXPECT_NE(r.out.find("iterations "), std::string::npos);
}

TEST_F(CliTest, VerifyAcceptsAndRejects) {
  ASSERT_EQ(mrx({"reconcile", kTable + "kb_a.cnf", kTable + "kb_h.cnf", "--query",
                 kTable + "query.txt", "--format", "records", "--out", path("ex.rec")})
                .code,
            kOk);
  const CliRun ok = mrx({"verify", kTable + "kb_h.cnf", path("ex.rec"), "--query", kTable + "query.txt"});
  EXPECT_EQ(ok.code, kOk) << ok.out;
  EXPECT_NE(ok.out.find("result pass"), std::string::npos);

  std::ifstream in(path("ex.rec"));
  std::stringstream text;
  text << in.rdbuf();
  const std::string rec = text.str();

  std::string dropped = rec;
  dropped.erase(dropped.find("support 1 2 0\n"), std::string("support 1 2 0\n").size());
  write("dropped.rec", dropped);
  const CliRun d = mrx({"verify", kTable + "kb_h.cnf", path("dropped.rec"), "--query", kTable + "query.txt"});
  EXPECT_EQ(d.code, kVerification);
  EXPECT_NE(d.out.find("entailment false"), std::string::npos);

  std::string padded = rec;
  padded.insert(padded.find("support 1 2 0\n"), "support -2 4 0\n");
  write("padded.rec", padded);
  const CliRun p = mrx({"verify", kTable + "kb_h.cnf", path("padded.rec"), "--query", kTable + "query.txt"});
  EXPECT_EQ(p.code, kVerification);
  EXPECT_NE(p.out.find("minimality false"), std::string::npos);
}

TEST_F(CliTest, TweakCnfWritesKbAndLog) {
  std::ostringstream kb;
  kb << "p cnf 5 10\n";
  for (int i = 0; i < 10; ++i) kb << (i % 5 + 1) << ' ' << -((i % 5 + 1 + i / 5) % 5 + 1) << " 0\n";
  write("kb.cnf", kb.str());
  const CliRun r = mrx({"tweak-cnf", path("kb.cnf"), "--scenario", "9", "--seed", "3", "--out",
                     path("h.cnf")});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(read_dimacs_file(path("h.cnf")).size(), 9u);
  EXPECT_TRUE(fs::exists(path("h.cnf.log")));
  EXPECT_EQ(mrx({"tweak-cnf", path("kb.cnf"), "--scenario", "3"}).code, kUsage);
}

TEST_F(CliTest, BackboneQueries) {
  write("one.cnf", "p cnf 1 1\n1 0\n");
  const CliRun r = mrx({"backbone", path("one.cnf"), "--k", "0"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "1\n");

  write("free.cnf", "p cnf 2 1\n1 2 0\n");
  const CliRun none = mrx({"backbone", path("free.cnf")});
  EXPECT_EQ(none.code, kPremise);
  EXPECT_NE(none.err.find("no backbone query derivable"), std::string::npos);

  write("unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  EXPECT_EQ(mrx({"backbone", path("unsat.cnf")}).code, kPremise);

  const CliRun big = mrx({"backbone", path("one.cnf"), "--k", "4"});
  EXPECT_EQ(big.code, kOk);
  EXPECT_NE(big.err.find("warning"), std::string::npos);
}

TEST_F(CliTest, EncodePlanAndTweakModelWriteSidecars) {
  const CliRun e = mrx({"encode-plan", kBw + "domain.pddl", kBw + "sussman.pddl", "--goal",
                     "--out", path("enc.cnf")});
  EXPECT_EQ(e.code, kOk) << e.err;
  EXPECT_TRUE(fs::exists(path("enc.cnf.map")));
  EXPECT_TRUE(fs::exists(path("enc.cnf.log")));

  const CliRun t = mrx({"tweak-model", kBw + "domain.pddl", kBw + "sussman.pddl", "--scenario",
                     "2", "--seed", "4", "--out", path("h.cnf"), "--query-out", path("q.txt")});
  EXPECT_EQ(t.code, kOk) << t.err;
  EXPECT_EQ(read_query_file(path("q.txt")).size(), 6u);
  std::ifstream log(path("h.cnf.log"));
  std::stringstream text;
  text << log.rdbuf();
  EXPECT_NE(text.str().find("remove-"), std::string::npos);
}

TEST_F(CliTest, ExplainPlanRoundTripsThroughVerify) {
  const CliRun r = mrx({"explain-plan", kBw + "domain.pddl", kBw + "sussman.pddl", "--scenario",
                     "8", "--seed", "1", "--emit-dir", path("out"), "--format", "records"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("feasible_after_update true"), std::string::npos);
  EXPECT_NE(r.out.find("update_named ("), std::string::npos);
  const CliRun v = mrx({"verify", path("out/kb_h.cnf"), path("out/explanation.rec"), "--query",
                     path("out/query.txt")});
  EXPECT_EQ(v.code, kOk) << v.out;
}

TEST_F(CliTest, ExplainPlanErrors) {
  write("unreachable.pddl",
        "(define (problem u) (:domain blocksworld) (:objects a - block) "
        "(:init (ontable a) (clear a) (handempty)) (:goal (on a a)))");
  EXPECT_EQ(mrx({"explain-plan", kBw + "domain.pddl", path("unreachable.pddl")}).code, kPlanning);
  EXPECT_EQ(mrx({"explain-plan", kBw + "domain.pddl", kBw + "sussman.pddl", "--max-states", "2"}).code,
            kPlanning);
  write("plan.txt", "put-down(c)\n");
  EXPECT_EQ(mrx({"explain-plan", kBw + "domain.pddl", kBw + "sussman.pddl", "--plan", path("plan.txt")}).code,
            kPremise);
}

TEST_F(CliTest, RecordsAreDeterministicModuloTiming) {
  const std::vector<std::string> args{"explain-plan", kBw + "domain.pddl", kBw + "sussman.pddl",
                                      "--scenario", "1", "--seed", "9", "--format", "records"};
  EXPECT_EQ(strip_timing(mrx(args).out), strip_timing(mrx(args).out));
}

}  // namespace
}  // namespace mrx::cli
