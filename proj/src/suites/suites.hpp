#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "suites/report.hpp"

namespace conformal {

enum class Suite { Tables, Tangential, Domino, KeyLemma, TractorLaws, Factory, Continuation, Algebra, All };

std::optional<Suite> parse_suite(const std::string& name);
std::string suite_name(Suite s);
std::vector<std::string> suite_names();

struct SuiteOptions {
  int n = 4;
  uint64_t seed = 1;
  // context spec {"omega": ..} or {"exp_omega": ..}; adds checks in that scale
  std::optional<nlohmann::json> scale;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Runs every check of the suite; checks are independent and seeded by id.
Report run_suite(Suite s, const SuiteOptions& opt);
std::vector<std::string> suite_check_ids(Suite s, int n, bool with_scale = false);

struct BuildRequest {
  std::string name;  // L, Q, G, M or K
  int n = 4;
  int k = 0;
  std::optional<int> l;
  std::optional<nlohmann::json> scale;
};

// Operator dump with its constants and a few self-checks.  Throws
// OutOfRange for parameters outside the operator's range and
// std::invalid_argument for an unknown name.
Report build_operator(const BuildRequest& req);

}  // namespace conformal
