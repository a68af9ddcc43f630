#include <gtest/gtest.h>

#include "mrx/sat.hpp"
#include "mrx/self_check.hpp"

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  mrx::self_check::enable(true);
  mrx::SatSession::set_default_model_checks(true);
  return RUN_ALL_TESTS();
}
