#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "mrx/backbone.hpp"
#include "mrx/cnf_tweak.hpp"
#include "mrx/dimacs.hpp"
#include "mrx/errors.hpp"
#include "mrx/planning/encoding.hpp"
#include "mrx/planning/explain.hpp"
#include "mrx/planning/pddl.hpp"
#include "mrx/planning/task.hpp"
#include "mrx/planning/tweak.hpp"
#include "mrx/reconcile.hpp"
#include "mrx/report.hpp"

namespace mrx::cli {

namespace fs = std::filesystem;

namespace {

/// A failed explanation check; maps to kVerification.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

struct Common {
  std::uint64_t seed = 0;
  double timeout = 1500.0;
  std::string out;
  std::string format = "text";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "RNG seed (recorded in reports)")->capture_default_str();
  cmd->add_option("--timeout", c.timeout, "time limit in seconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", c.out, "output path (default: standard output)");
  cmd->add_option("--format", c.format, "report format")
      ->check(CLI::IsMember({"text", "records"}))
      ->capture_default_str();
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  body(f);
  if (!f) throw std::runtime_error("error writing " + path.string());
}

void emit(const std::string& path, std::ostream& out,
          const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(out);
  } else {
    write_file(path, body);
  }
}

fs::path sidecar(const std::string& path, const char* ext) { return fs::path(path + ext); }

std::string hash_file(const std::string& path) { return fnv1a_hex(read_text_file(path)); }

void write_report(std::ostream& out, const Common& c, const ReportContext& ctx,
                  const Explanation& ex, std::string_view status) {
  if (c.format == "records") {
    write_records(out, ctx, ex, status);
  } else {
    write_text(out, ctx, ex, status);
  }
}

void check_explanation(const Explanation& ex) {
  if (ex.assumption_violation) {
    throw VerificationFailure("updated human KB is inconsistent; preprocessing assumption violated");
  }
  if (ex.verified && !ex.verification.ok()) throw VerificationFailure("explanation failed verification");
}

planning::LiftedTask load_task(const std::string& domain, const std::string& problem) {
  return planning::parse_pddl(read_text_file(domain), read_text_file(problem));
}

std::string joined_plan(const planning::PlanningProblem& p, const planning::Plan& plan) {
  std::string out;
  for (std::size_t s : plan.steps) out += (out.empty() ? "" : ",") + p.actions[s].name;
  return out.empty() ? "-" : out;
}

// --- reconcile -------------------------------------------------------------

struct ReconcileArgs {
  Common common;
  std::string kb_a;
  std::string kb_h;
  std::string query;
  std::string mode = "general";
};

int cmd_reconcile(const ReconcileArgs& a, std::ostream& out) {
  ReconcileProblem problem{read_dimacs_file(a.kb_a), read_dimacs_file(a.kb_h),
                           read_query_file(a.query), parse_mode(a.mode)};
  ReportContext ctx;
  ctx.command = "reconcile";
  ctx.seed = a.common.seed;
  ctx.inputs = {{"kb_a", hash_file(a.kb_a)}, {"kb_h", hash_file(a.kb_h)}, {"query", hash_file(a.query)}};
  ctx.fields = {{"kb_a_clauses", std::to_string(problem.kb_a.size())},
                {"kb_h_clauses", std::to_string(problem.kb_h.size())},
                {"query_clauses", std::to_string(problem.query.size())}};

  const Deadline deadline = Deadline::after(std::chrono::duration<double>(a.common.timeout));
  try {
    const Explanation ex = reconcile(problem, {&deadline, true});
    emit(a.common.out, out, [&](std::ostream& o) { write_report(o, a.common, ctx, ex, "ok"); });
    check_explanation(ex);
  } catch (const ReconcileTimeout& t) {
    emit(a.common.out, out,
         [&](std::ostream& o) { write_report(o, a.common, ctx, t.partial(), "timeout"); });
    throw;
  }
  return kOk;
}

// --- explain-plan ----------------------------------------------------------

struct ExplainArgs {
  Common common;
  std::string domain;
  std::string problem;
  int scenario = 0;
  std::string plan;
  std::string mode = "restricted";
  std::size_t multi_count = 2;
  std::size_t init_count = 2;
  bool only_plan_actions = false;
  std::size_t max_states = 1'000'000;
  std::string emit_dir;
};

int cmd_explain_plan(const ExplainArgs& a, std::ostream& out) {
  const planning::PlanningProblem agent = planning::ground(load_task(a.domain, a.problem));
  const planning::Plan plan = a.plan.empty()
                                  ? planning::optimal_plan_search(agent, a.max_states)
                                  : planning::parse_plan(agent, read_text_file(a.plan));

  planning::TweakedModel human{agent, {}};
  if (a.scenario != 0) {
    planning::TweakOptions opts{a.multi_count, a.init_count, std::nullopt};
    if (a.only_plan_actions) {
      std::vector<std::string> names;
      for (std::size_t s : plan.steps) names.push_back(agent.actions[s].name);
      opts.only_actions = names;
    }
    human = planning::tweak_model(agent, a.scenario, a.common.seed, opts);
  }

  const Deadline deadline = Deadline::after(std::chrono::duration<double>(a.common.timeout));
  ReportContext ctx;
  ctx.command = "explain-plan";
  ctx.seed = a.common.seed;
  ctx.inputs = {{"domain", hash_file(a.domain)}, {"problem", hash_file(a.problem)}};
  if (!a.plan.empty()) ctx.inputs.emplace_back("plan", hash_file(a.plan));
  ctx.fields = {{"scenario", std::to_string(a.scenario)},
                {"horizon", std::to_string(plan.size())},
                {"plan", joined_plan(agent, plan)},
                {"tweak_events", std::to_string(human.log.size())}};

  const planning::PlanExplanation result = [&] {
    try {
      return planning::explain_plan(agent, human.problem, plan,
                                    {&deadline, parse_mode(a.mode), true});
    } catch (const ReconcileTimeout& t) {
      emit(a.common.out, out,
           [&](std::ostream& o) { write_report(o, a.common, ctx, t.partial(), "timeout"); });
      throw;
    }
  }();

  const planning::VariableLayout& layout = result.agent.layout;
  ctx.namer = [&layout](Literal l) { return layout.describe(l.var()); };
  ctx.repair = result.repair;
  ctx.repair_dropped = result.repair_dropped;
  ctx.fields.emplace_back("feasible_before_repair", result.feasibility.feasible ? "true" : "false");
  ctx.fields.emplace_back("feasible_after_repair", result.feasible_after_repair ? "true" : "false");
  ctx.fields.emplace_back("feasible_after_update", result.feasible_after_update ? "true" : "false");
  ctx.fields.emplace_back("kb_a_clauses", std::to_string(result.agent.cnf.size()));
  ctx.fields.emplace_back("kb_h_clauses", std::to_string(result.human.cnf.size()));

  if (!a.emit_dir.empty()) {
    const fs::path dir(a.emit_dir);
    write_file(dir / "kb_a.cnf", [&](std::ostream& o) { write_dimacs(o, result.agent.cnf); });
    write_file(dir / "kb_h.cnf", [&](std::ostream& o) { write_dimacs(o, result.human.cnf); });
    write_file(dir / "query.txt", [&](std::ostream& o) {
      std::vector<Literal> lits;
      for (const Clause& c : result.query.clauses()) lits.push_back(c.literals().front());
      write_literal_list(o, lits);
    });
    write_file(dir / "plan.txt", [&](std::ostream& o) { o << planning::format_plan(agent, plan); });
    write_file(dir / "vars.map", [&](std::ostream& o) { layout.write_map(o); });
    write_file(dir / "kb_h.cnf.log", [&](std::ostream& o) {
      o << "scenario " << a.scenario << "\nseed " << a.common.seed << '\n';
      planning::write_tweak_log(o, human);
    });
    write_file(dir / "explanation.rec",
               [&](std::ostream& o) { write_records(o, ctx, result.explanation, "ok"); });
  }
  emit(a.common.out, out,
       [&](std::ostream& o) { write_report(o, a.common, ctx, result.explanation, "ok"); });
  check_explanation(result.explanation);
  return kOk;
}

// --- tweak-cnf -------------------------------------------------------------

struct TweakCnfArgs {
  std::uint64_t seed = 0;
  std::string kb;
  int scenario = 9;
  std::string out;
};

int cmd_tweak_cnf(const TweakCnfArgs& a, std::ostream& out, std::ostream& err) {
  const CnfTweak t = tweak_cnf(read_dimacs_file(a.kb), a.scenario, a.seed);
  emit(a.out, out, [&](std::ostream& o) { write_dimacs(o, t.kb); });
  const auto log = [&](std::ostream& o) {
    o << "input " << a.kb << ' ' << hash_file(a.kb) << '\n';
    write_tweak_log(o, t.log);
  };
  if (a.out.empty()) {
    log(err);
  } else {
    write_file(sidecar(a.out, ".log"), log);
  }
  return kOk;
}

// --- tweak-model / encode-plan ---------------------------------------------

struct ModelArgs {
  std::uint64_t seed = 0;
  std::string domain;
  std::string problem;
  int scenario = 1;
  std::size_t multi_count = 2;
  std::size_t init_count = 2;
  long horizon = -1;
  bool goal = false;
  std::string query_out;
  std::string out;
  std::size_t max_states = 1'000'000;
};

std::size_t resolve_horizon(const ModelArgs& a, const planning::PlanningProblem& agent) {
  if (a.horizon >= 0) return static_cast<std::size_t>(a.horizon);
  return planning::optimal_plan_search(agent, a.max_states).size();
}

void write_encoding(const ModelArgs& a, std::ostream& out, planning::BoundedEncoding& enc,
                    const std::function<void(std::ostream&)>& log) {
  CnfFormula query;
  if (!enc.include_goal && enc.horizon() > 0 && !enc.goal.empty()) {
    query = planning::optimality_query(enc);
  }
  emit(a.out, out, [&](std::ostream& o) { write_dimacs(o, enc.cnf); });
  if (!a.out.empty()) {
    write_file(sidecar(a.out, ".map"), [&](std::ostream& o) { enc.layout.write_map(o); });
    write_file(sidecar(a.out, ".log"), [&](std::ostream& o) {
      o << "domain " << a.domain << ' ' << hash_file(a.domain) << '\n';
      o << "problem " << a.problem << ' ' << hash_file(a.problem) << '\n';
      o << "horizon " << enc.horizon() << '\n';
      o << "goal_units " << (enc.include_goal ? "true" : "false") << '\n';
      o << "clauses " << enc.cnf.size() << '\n';
      log(o);
    });
  }
  if (!a.query_out.empty()) {
    if (query.empty()) throw PlanningError("no optimality query for this encoding");
    write_file(a.query_out, [&](std::ostream& o) {
      std::vector<Literal> lits;
      for (const Clause& c : query.clauses()) lits.push_back(c.literals().front());
      write_literal_list(o, lits);
    });
  }
}

int cmd_tweak_model(const ModelArgs& a, std::ostream& out) {
  const planning::PlanningProblem agent = planning::ground(load_task(a.domain, a.problem));
  const std::size_t n = resolve_horizon(a, agent);
  const planning::TweakedModel human =
      planning::tweak_model(agent, a.scenario, a.seed, {a.multi_count, a.init_count, std::nullopt});
  planning::BoundedEncoding enc = planning::encode_bounded(
      human.problem, n, a.goal, planning::VariableLayout::for_problem(agent, n));
  write_encoding(a, out, enc, [&](std::ostream& o) {
    o << "scenario " << a.scenario << "\nseed " << a.seed << '\n';
    planning::write_tweak_log(o, human);
  });
  return kOk;
}

int cmd_encode_plan(const ModelArgs& a, std::ostream& out) {
  const planning::PlanningProblem agent = planning::ground(load_task(a.domain, a.problem));
  const std::size_t n = resolve_horizon(a, agent);
  planning::BoundedEncoding enc = planning::encode_bounded(agent, n, a.goal);
  write_encoding(a, out, enc, [](std::ostream&) {});
  return kOk;
}

// --- backbone --------------------------------------------------------------

struct BackboneArgs {
  std::uint64_t seed = 0;
  double timeout = 1500.0;
  std::string kb;
  std::size_t k = 0;
  std::string out;
};

int cmd_backbone(const BackboneArgs& a, std::ostream& out, std::ostream& err) {
  const Deadline deadline = Deadline::after(std::chrono::duration<double>(a.timeout));
  const std::vector<Literal> backbone = compute_backbone(read_dimacs_file(a.kb), &deadline);
  if (backbone.empty()) throw PremiseError("no backbone query derivable: the backbone is empty");
  const BackboneSample sample = sample_backbone(backbone, a.k, a.seed);
  if (sample.truncated) {
    err << "warning: k=" << a.k << " exceeds backbone size " << backbone.size()
        << "; using all literals\n";
  }
  emit(a.out, out, [&](std::ostream& o) { write_literal_list(o, sample.literals); });
  if (!a.out.empty()) {
    write_file(sidecar(a.out, ".log"), [&](std::ostream& o) {
      o << "input " << a.kb << ' ' << hash_file(a.kb) << '\n';
      o << "seed " << a.seed << "\nk " << a.k << '\n';
      o << "backbone_size " << backbone.size() << '\n';
      o << "sampled " << sample.literals.size() << '\n';
    });
  }
  return kOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string kb_h;
  std::string explanation;
  std::string query;
  std::string out;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  CnfFormula kb_h = read_dimacs_file(a.kb_h);
  const ExplanationRecord rec = parse_records(read_text_file(a.explanation));
  const CnfFormula query = read_query_file(a.query);
  for (const Clause& c : rec.repair) kb_h.add(c);
  const CnfFormula updated = apply_removal(apply_removal(kb_h, rec.repair_dropped), rec.removed);

  const VerificationReport report = verify_explanation(updated, rec.support, query);
  std::vector<Clause> expected;
  for (const Clause& c : rec.support) {
    if (!updated.contains(c)) expected.push_back(c);
  }
  const bool update_ok = expected == rec.update;

  auto b = [](bool v) { return v ? "true" : "false"; };
  emit(a.out, out, [&](std::ostream& o) {
    o << "support_size " << rec.support.size() << '\n';
    o << "update_size " << rec.update.size() << '\n';
    o << "entailment " << b(report.entailment) << '\n';
    o << "minimality " << b(report.minimality) << '\n';
    o << "consistency " << b(report.consistency) << '\n';
    o << "update_matches " << b(update_ok) << '\n';
    o << "result " << (report.ok() && update_ok ? "pass" : "fail") << '\n';
  });
  return report.ok() && update_ok ? kOk : kVerification;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cardinality-minimal explanations between two propositional knowledge bases"};
  app.name("mrx");
  app.require_subcommand(1);

  int status = kOk;
  std::function<int()> action;

  ReconcileArgs rec;
  auto* c_rec = app.add_subcommand("reconcile", "minimum update of KB_H entailing a query from KB_A");
  c_rec->add_option("kb_a", rec.kb_a, "agent KB (DIMACS)")->required()->check(CLI::ExistingFile);
  c_rec->add_option("kb_h", rec.kb_h, "human KB (DIMACS)")->required()->check(CLI::ExistingFile);
  c_rec->add_option("--query", rec.query, "query file (DIMACS or literal list)")
      ->required()
      ->check(CLI::ExistingFile);
  c_rec->add_option("--mode", rec.mode)->check(CLI::IsMember({"general", "restricted"}))->capture_default_str();
  add_common(c_rec, rec.common);
  c_rec->callback([&] { action = [&] { return cmd_reconcile(rec, out); }; });

  ExplainArgs ex;
  auto* c_ex = app.add_subcommand("explain-plan", "explain the optimality of a plan to a tweaked model");
  c_ex->add_option("domain", ex.domain)->required()->check(CLI::ExistingFile);
  c_ex->add_option("problem", ex.problem)->required()->check(CLI::ExistingFile);
  c_ex->add_option("--scenario", ex.scenario, "model tweak 1..8 (0 = none)")
      ->check(CLI::Range(0, 8))
      ->capture_default_str();
  c_ex->add_option("--plan", ex.plan, "plan file (default: optimal plan by search)")
      ->check(CLI::ExistingFile);
  c_ex->add_option("--mode", ex.mode)->check(CLI::IsMember({"general", "restricted"}))->capture_default_str();
  c_ex->add_option("--multi-count", ex.multi_count, "scenario 4 deletions per action")->capture_default_str();
  c_ex->add_option("--init-count", ex.init_count, "scenario 6 initial-state deletions")->capture_default_str();
  c_ex->add_flag("--only-plan-actions", ex.only_plan_actions, "tweak only the actions used by the plan");
  c_ex->add_option("--max-states", ex.max_states, "state cap for plan search")->capture_default_str();
  c_ex->add_option("--emit-dir", ex.emit_dir, "write KBs, query, plan and records here");
  add_common(c_ex, ex.common);
  c_ex->callback([&] { action = [&] { return cmd_explain_plan(ex, out); }; });

  TweakCnfArgs tc;
  auto* c_tc = app.add_subcommand("tweak-cnf", "derive a human KB from a CNF (scenarios 9..12)");
  c_tc->add_option("kb", tc.kb)->required()->check(CLI::ExistingFile);
  c_tc->add_option("--scenario", tc.scenario)->check(CLI::Range(9, 12))->capture_default_str();
  c_tc->add_option("--seed", tc.seed)->capture_default_str();
  c_tc->add_option("--out", tc.out, "output CNF (log goes to <out>.log)");
  c_tc->callback([&] { action = [&] { return cmd_tweak_cnf(tc, out, err); }; });

  ModelArgs tm;
  auto* c_tm = app.add_subcommand("tweak-model", "encode a tweaked planning model (scenarios 1..8)");
  c_tm->add_option("domain", tm.domain)->required()->check(CLI::ExistingFile);
  c_tm->add_option("problem", tm.problem)->required()->check(CLI::ExistingFile);
  c_tm->add_option("--scenario", tm.scenario)->check(CLI::Range(1, 8))->capture_default_str();
  c_tm->add_option("--seed", tm.seed)->capture_default_str();
  c_tm->add_option("--multi-count", tm.multi_count)->capture_default_str();
  c_tm->add_option("--init-count", tm.init_count)->capture_default_str();
  c_tm->add_option("--horizon", tm.horizon, "encoding horizon (default: optimal plan length)");
  c_tm->add_flag("--goal", tm.goal, "add goal units at the horizon");
  c_tm->add_option("--query-out", tm.query_out, "write the optimality query here");
  c_tm->add_option("--out", tm.out, "output CNF (map and log beside it)");
  c_tm->callback([&] { action = [&] { return cmd_tweak_model(tm, out); }; });

  ModelArgs ep;
  auto* c_ep = app.add_subcommand("encode-plan", "bounded CNF encoding of a STRIPS task");
  c_ep->add_option("domain", ep.domain)->required()->check(CLI::ExistingFile);
  c_ep->add_option("problem", ep.problem)->required()->check(CLI::ExistingFile);
  c_ep->add_option("--horizon", ep.horizon, "encoding horizon (default: optimal plan length)");
  c_ep->add_flag("--goal", ep.goal, "add goal units at the horizon");
  c_ep->add_option("--query-out", ep.query_out, "write the optimality query here");
  c_ep->add_option("--out", ep.out, "output CNF (map and log beside it)");
  c_ep->callback([&] { action = [&] { return cmd_encode_plan(ep, out); }; });

  BackboneArgs bb;
  auto* c_bb = app.add_subcommand("backbone", "sample a backbone query from a satisfiable KB");
  c_bb->add_option("kb", bb.kb)->required()->check(CLI::ExistingFile);
  c_bb->add_option("--k", bb.k, "literals to sample (0 = all)")->capture_default_str();
  c_bb->add_option("--seed", bb.seed)->capture_default_str();
  c_bb->add_option("--timeout", bb.timeout)->capture_default_str()->check(CLI::PositiveNumber);
  c_bb->add_option("--out", bb.out, "query file (log goes to <out>.log)");
  c_bb->callback([&] { action = [&] { return cmd_backbone(bb, out, err); }; });

  VerifyArgs vf;
  auto* c_vf = app.add_subcommand("verify", "check an explanation record against a human KB");
  c_vf->add_option("kb_h", vf.kb_h)->required()->check(CLI::ExistingFile);
  c_vf->add_option("explanation", vf.explanation, "records written with --format records")
      ->required()
      ->check(CLI::ExistingFile);
  c_vf->add_option("--query", vf.query)->required()->check(CLI::ExistingFile);
  c_vf->add_option("--out", vf.out);
  c_vf->callback([&] { action = [&] { return cmd_verify(vf, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    status = action();
  } catch (const Timeout&) {
    err << "mrx: time limit reached\n";
    return kTimeout;
  } catch (const ParseError& e) {
    err << "mrx: parse error: " << e.what() << '\n';
    return kInput;
  } catch (const PremiseError& e) {
    err << "mrx: premise violated: " << e.what() << '\n';
    return kPremise;
  } catch (const PreconditionError& e) {
    err << "mrx: " << e.what() << '\n';
    return kPremise;
  } catch (const VerificationFailure& e) {
    err << "mrx: " << e.what() << '\n';
    return kVerification;
  } catch (const PlanningError& e) {
    err << "mrx: planning: " << e.what() << '\n';
    return kPlanning;
  } catch (const CapExceeded& e) {
    err << "mrx: " << e.what() << '\n';
    return kPlanning;
  } catch (const std::invalid_argument& e) {
    err << "mrx: invalid input: " << e.what() << '\n';
    return kInput;
  } catch (const std::out_of_range& e) {
    err << "mrx: invalid input: " << e.what() << '\n';
    return kInput;
  } catch (const std::logic_error& e) {
    err << "mrx: internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    // I/O failures surface here as runtime_error.
    err << "mrx: " << e.what() << '\n';
    return kInput;
  }
  return status;
}

}  // namespace mrx::cli
