#include "mrx/planning/tweak.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <stdexcept>

namespace mrx::planning {

namespace {

std::size_t below(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

struct Effect {
  bool add;
  FluentId fluent;
};

std::vector<Effect> effects(const GroundAction& a) {
  std::vector<Effect> out;
  for (FluentId f : a.add) out.push_back({true, f});
  for (FluentId f : a.del) out.push_back({false, f});
  return out;
}

void erase(std::vector<FluentId>& v, FluentId f) { std::erase(v, f); }

class Tweaker {
 public:
  Tweaker(TweakedModel& out, std::mt19937_64& rng) : out_(out), rng_(rng) {}

  void drop_pre(GroundAction& a, std::size_t count) {
    if (a.pre.empty()) {
      out_.log.push_back("skip-pre " + a.name + " (no preconditions)");
      return;
    }
    for (std::size_t i = 0; i < count && !a.pre.empty(); ++i) {
      const FluentId f = a.pre[below(rng_, a.pre.size())];
      erase(a.pre, f);
      out_.log.push_back("remove-pre " + a.name + " " + name(f));
    }
  }

  void drop_effect(GroundAction& a, std::size_t count) {
    if (a.add.empty() && a.del.empty()) {
      out_.log.push_back("skip-effect " + a.name + " (no effects)");
      return;
    }
    for (std::size_t i = 0; i < count; ++i) {
      const std::vector<Effect> all = effects(a);
      if (all.empty()) break;
      const Effect e = all[below(rng_, all.size())];
      erase(e.add ? a.add : a.del, e.fluent);
      out_.log.push_back(std::string(e.add ? "remove-add " : "remove-del ") + a.name + " " +
                         name(e.fluent));
    }
  }

  void drop_all_pre(GroundAction& a) {
    for (FluentId f : a.pre) out_.log.push_back("remove-pre " + a.name + " " + name(f));
    a.pre.clear();
  }

  void drop_all_effects(GroundAction& a) {
    for (const Effect& e : effects(a)) {
      out_.log.push_back(std::string(e.add ? "remove-add " : "remove-del ") + a.name + " " +
                         name(e.fluent));
    }
    a.add.clear();
    a.del.clear();
  }

 private:
  const std::string& name(FluentId f) const { return out_.problem.fluents[f]; }

  TweakedModel& out_;
  std::mt19937_64& rng_;
};

}  // namespace

TweakedModel tweak_model(const PlanningProblem& problem, int scenario, std::uint64_t seed,
                         const TweakOptions& options) {
  if (scenario < 1 || scenario > 8) {
    throw std::invalid_argument("planning scenarios are 1..8, got " + std::to_string(scenario));
  }
  TweakedModel out{problem, {}};
  std::mt19937_64 rng(seed);
  Tweaker tweak(out, rng);

  auto selected = [&](const GroundAction& a) {
    if (!options.only_actions) return true;
    const auto& names = *options.only_actions;
    return std::find(names.begin(), names.end(), a.name) != names.end();
  };

  if (scenario == 6) {
    std::vector<FluentId> pool = out.problem.init;
    const std::size_t k = std::min(options.init_count, pool.size());
    if (k < options.init_count) out.log.push_back("skip-init (initial state too small)");
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + below(rng, pool.size() - i);
      std::swap(pool[i], pool[j]);
      erase(out.problem.init, pool[i]);
      out.log.push_back("remove-init " + out.problem.fluents[pool[i]]);
    }
    return out;
  }

  if (scenario == 8) {
    std::vector<GroundAction> kept;
    for (GroundAction& a : out.problem.actions) {
      if (selected(a)) {
        out.log.push_back("remove-action " + a.name);
      } else {
        kept.push_back(std::move(a));
      }
    }
    out.problem.actions = std::move(kept);
    return out;
  }

  for (GroundAction& a : out.problem.actions) {
    if (!selected(a)) continue;
    switch (scenario) {
      case 1: tweak.drop_pre(a, 1); break;
      case 2: tweak.drop_effect(a, 1); break;
      case 3:
        tweak.drop_pre(a, 1);
        tweak.drop_effect(a, 1);
        break;
      case 4:
        tweak.drop_pre(a, options.multi_count);
        tweak.drop_effect(a, options.multi_count);
        break;
      case 5: tweak.drop_all_pre(a); break;
      case 7: tweak.drop_all_effects(a); break;
      default: break;
    }
  }
  return out;
}

void write_tweak_log(std::ostream& out, const TweakedModel& tweaked) {
  for (const std::string& line : tweaked.log) out << line << '\n';
}

}  // namespace mrx::planning
