#pragma once

// Fast cross-checks of closed forms against independent evaluations.

#include <string>
#include <vector>

namespace sonic {

struct SelfCheck {
  std::string name;
  double value;
  double reference;
  double rel_err;
  double tolerance;
  bool pass;
};

std::vector<SelfCheck> run_selftest();

}  // namespace sonic
