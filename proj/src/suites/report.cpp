#include "suites/report.hpp"

#include <algorithm>
#include <sstream>

namespace conformal {

namespace {

uint64_t splitmix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

uint64_t check_seed(uint64_t run_seed, const std::string& id) {
  uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (unsigned char c : id) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return splitmix(run_seed ^ splitmix(h));
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

const CheckRecord* Report::first_failure() const {
  for (auto& c : checks)
    if (!c.pass) return &c;
  return nullptr;
}

void Report::canonicalize() {
  std::sort(checks.begin(), checks.end(), [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["name"] = name;
  j["n"] = n;
  j["k"] = k ? nlohmann::json(*k) : nlohmann::json(nullptr);
  j["l"] = l ? nlohmann::json(*l) : nlohmann::json(nullptr);
  j["constants"] = nlohmann::json::object();
  for (auto& [key, v] : constants) j["constants"][key] = v;
  j["checks"] = nlohmann::json::array();
  std::vector<const CheckRecord*> sorted;
  for (auto& c : checks) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->id < b->id; });
  for (auto* c : sorted) {
    nlohmann::json e{{"id", c->id}, {"status", c->pass ? "pass" : "fail"}, {"seed", c->seed}};
    if (!c->witness.empty()) e["witness"] = c->witness;
    j["checks"].push_back(std::move(e));
  }
  j["passed"] = pass();
  for (auto& [key, v] : extra.items())
    if (key != "operator_text") j[key] = v;
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

std::string Report::to_json_text() const { return to_json().dump(2) + "\n"; }

std::string Report::to_text() const {
  std::ostringstream os;
  os << name << " (n = " << n;
  if (k) os << ", k = " << *k;
  if (l) os << ", l = " << *l;
  os << ")\n";
  for (auto& [key, v] : constants) os << "  constant " << key << " = " << v << "\n";
  std::vector<const CheckRecord*> sorted;
  for (auto& c : checks) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->id < b->id; });
  size_t passed = 0;
  for (auto* c : sorted) {
    os << "  [" << (c->pass ? "pass" : "FAIL") << "] " << c->id << "  seed=" << c->seed << "\n";
    if (!c->witness.empty()) os << "         " << c->witness << "\n";
    passed += c->pass;
  }
  for (auto& note : notes) os << "  note: " << note << "\n";
  if (extra.contains("operator_text")) os << extra["operator_text"].get<std::string>() << "\n";
  os << passed << "/" << checks.size() << " checks passed\n";
  return os.str();
}

}  // namespace conformal
