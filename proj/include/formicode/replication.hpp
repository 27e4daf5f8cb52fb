#pragma once

#include <string>
#include <vector>

namespace formicode {

// One recomputed value paired with its published counterpart and the
// tolerance it must meet.
struct ReplicationCheck {
  std::string id;
  std::string published;
  std::string recomputed;
  std::string tolerance;
  bool pass = false;
};

const std::vector<std::string>& replication_selectors();  // without "all"

// Runs the checks behind one selector ("all" runs everything, in selector
// order). Throws std::invalid_argument for unknown selectors.
std::vector<ReplicationCheck> run_replication(const std::string& selector);

}  // namespace formicode
