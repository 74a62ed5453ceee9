#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace conformal {

inline constexpr int kReportSchema = 1;

struct CheckRecord {
  std::string id;
  bool pass = false;
  uint64_t seed = 0;
  std::string witness;  // first mismatch, empty on pass
};

// Verification report / operator dump.  Serialization is canonical: checks
// sorted by id, constants by key, so equal inputs give equal bytes.
struct Report {
  std::string name;
  int n = 0;
  std::optional<int> k, l;
  std::map<std::string, std::string> constants;
  std::vector<CheckRecord> checks;
  nlohmann::json extra = nlohmann::json::object();  // e.g. the operator for dumps
  std::vector<std::string> notes;

  bool pass() const;
  const CheckRecord* first_failure() const;
  void canonicalize();
  nlohmann::json to_json() const;
  std::string to_json_text() const;
  std::string to_text() const;
};

// Per-check seed: mixes the run seed with the check id, so results do not
// depend on which checks run or in which order.
uint64_t check_seed(uint64_t run_seed, const std::string& id);

}  // namespace conformal
