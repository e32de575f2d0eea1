#ifndef KPOS_ACCEPTANCE_HPP
#define KPOS_ACCEPTANCE_HPP

#include <ostream>
#include <string>
#include <vector>

namespace kpos {

struct AcceptanceResult {
  int index = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

// Runs the full verification suite; quick mode trims sampling budgets only.
std::vector<AcceptanceResult> run_acceptance(bool quick = false);

// One line per criterion; returns true iff every criterion passed.
bool print_acceptance(const std::vector<AcceptanceResult>& results, std::ostream& os);

}  // namespace kpos

#endif
