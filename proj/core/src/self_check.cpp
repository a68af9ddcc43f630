#include "mrx/self_check.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

#include "mrx/sat.hpp"

namespace mrx::self_check {
namespace {

std::atomic<bool> g_enabled{false};
std::atomic<std::size_t> g_checks{0};
std::atomic<std::size_t> g_failures{0};

}  // namespace

void enable(bool on) {
  g_enabled = on;
  SatSession::set_default_model_checks(on);
}

bool enabled() { return g_enabled; }

Counters counters() { return {g_checks.load(), g_failures.load()}; }

void reset() {
  g_checks = 0;
  g_failures = 0;
}

void record(bool ok, std::string_view what) {
  ++g_checks;
  if (!ok) {
    ++g_failures;
    throw std::logic_error("self-check failed: " + std::string(what));
  }
}

}  // namespace mrx::self_check
