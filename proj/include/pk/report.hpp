#pragma once

#include <string>
#include <vector>

namespace pk {

// One verified claim: what was computed against what was expected.
struct CheckRecord {
  std::string claim;
  std::string location;  // neutral label of the statement being checked
  std::string computed;
  std::string expected;
  bool pass = false;
};

inline bool all_pass(const std::vector<CheckRecord>& records) {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

}  // namespace pk
