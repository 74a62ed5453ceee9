#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "conformal/conformal.h"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

// stdout of the CLI; stderr is discarded
Run cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + CONFORMAL_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(CONFORMAL_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("C API handles and status codes") {
  conf_config* cfg = nullptr;
  REQUIRE(conf_config_new(&cfg) == CONF_OK);
  CHECK(conf_config_set_n(cfg, 5) == CONF_USAGE);
  CHECK(conf_config_set_n(cfg, 10) == CONF_RANGE);
  CHECK(conf_config_set_n(cfg, 8) == CONF_RANGE);
  CHECK(conf_config_allow_large(cfg, 1) == CONF_OK);
  CHECK(conf_config_set_n(cfg, 8) == CONF_OK);
  CHECK(conf_config_set_n(cfg, 4) == CONF_OK);
  CHECK(conf_config_set_suite(cfg, "bogus") == CONF_USAGE);
  CHECK(std::string(conf_last_error()).find("bogus") != std::string::npos);
  CHECK(conf_config_set_suite(cfg, "key-lemma") == CONF_OK);
  CHECK(conf_config_set_scale_json(cfg, "{not json") == CONF_USAGE);
  CHECK(conf_config_set_scale_json(cfg, nullptr) == CONF_OK);

  conf_result* r = nullptr;
  REQUIRE(conf_verify(cfg, &r) == CONF_OK);
  CHECK(conf_result_passed(r) == 1);
  CHECK(conf_result_check_count(r) > 0);
  CHECK(conf_result_first_failure_id(r) == nullptr);
  auto j = nlohmann::json::parse(conf_result_render(r, CONF_FORMAT_JSON));
  CHECK(j["schema"] == 1);
  CHECK(j["n"] == 4);
  conf_result_free(r);

  CHECK(conf_build(cfg, "L", 2, -1, &r) == CONF_RANGE);
  CHECK(r == nullptr);
  CHECK(conf_build(cfg, "Z", 0, -1, &r) == CONF_USAGE);
  REQUIRE(conf_build(cfg, "G", 0, -1, &r) == CONF_OK);
  CHECK(nlohmann::json::parse(conf_result_render(r, CONF_FORMAT_JSON))["trivial"] == true);
  conf_result_free(r);

  CHECK(conf_rewrite("d∘?", &r) == CONF_USAGE);
  REQUIRE(conf_rewrite("ε(X)^2", &r) == CONF_OK);
  CHECK(nlohmann::json::parse(conf_result_render(r, CONF_FORMAT_JSON))["normal_form"] == "0");
  conf_result_free(r);

  CHECK(conf_verify(nullptr, &r) == CONF_USAGE);
  CHECK(conf_exit_code(CONF_RANGE) == 3);
  CHECK(conf_exit_code(CONF_USAGE) == 2);
  CHECK(conf_exit_code(CONF_CHECK_FAILED) == 1);
  conf_config_free(cfg);
}

TEST_CASE("verify examples") {
  Run t = cli("verify --suite tables --n 4 --seed 7");
  CHECK(t.code == 0);
  auto j = nlohmann::json::parse(t.out);
  CHECK(j["checks"].size() == 32);
  CHECK(j["passed"] == true);
  CHECK(cli("verify --suite key-lemma --n 6").code == 0);
  CHECK(cli("verify --suite tables --n 5").code == 2);
  CHECK(cli("verify --suite tables --n 10").code == 3);
  CHECK(cli("verify --suite nope --n 4").code == 2);
  CHECK(cli("verify --n").code == 2);
  CHECK(cli("verify --suite tables --n 4 --format yaml").code == 2);
  CHECK(cli("verify --suite tables --n 4 --omega /nonexistent.json").code == 2);
}

TEST_CASE("reports are canonical and deterministic") {
  Run a = cli("verify --suite tangential --n 4 --seed 11 --threads 1");
  Run b = cli("verify --suite tangential --n 4 --seed 11 --threads 4");
  Run c = cli("verify --suite tangential --n 4 --seed 11");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  auto j = nlohmann::json::parse(a.out);
  std::string prev;
  for (auto& e : j["checks"]) {
    CHECK(e["id"].get<std::string>() > prev);
    prev = e["id"].get<std::string>();
  }
  Run d = cli("verify --suite tangential --n 4 --seed 12");
  CHECK(d.code == 0);
  CHECK(d.out != a.out);

  auto path = std::filesystem::temp_directory_path() / "conformal_cli_report.json";
  CHECK(cli("verify --suite tangential --n 4 --seed 11 --output " + path.string()).code == 0);
  std::ifstream in(path);
  std::string file((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(file == a.out);
  std::filesystem::remove(path);
}

TEST_CASE("build examples") {
  Run l = cli("build L --n 4 --k 1");
  REQUIRE(l.code == 0);
  auto j = nlohmann::json::parse(l.out);
  CHECK(j["constants"]["L_1 / (delta d)^1"] == "8");
  CHECK(j["operator"]["order"] == 2);

  Run q = cli("build Q --n 4 --k 2");
  REQUIRE(q.code == 0);
  j = nlohmann::json::parse(q.out);
  CHECK(j["operator"]["order"] == 0);
  CHECK(j["constants"]["Q_2"] == "-48");

  Run s = cli("build Q --n 4 --k 0 --omega " + data("round_sphere_4.json"));
  REQUIRE(s.code == 0);
  j = nlohmann::json::parse(s.out);
  CHECK(j["field_in_scale"]["op"] == "rat");
  CHECK(j["field_in_scale"]["value"] == "-144");

  CHECK(cli("build L --n 4 --k 2").code == 3);
  CHECK(cli("build Q --n 4 --k 3").code == 3);
  CHECK(cli("build X --n 4").code == 2);
  CHECK(cli("build K --n 4 --k 1 --l 9").code == 3);
  CHECK(cli("build K --n 4 --k 1").code == 0);
  CHECK(cli("build G --n 4 --k 1 --omega " + data("poly_omega_4.json")).code == 0);
}

TEST_CASE("golden directory override and check failure exit code") {
  auto dir = std::filesystem::temp_directory_path() / "conformal_bad_golden";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "q0_round_sphere.json");
    out << R"({"schema":1,"name":"q0_round_sphere","values":{"4":"144","6":"5760"}})";
  }
  std::string env = "CONFORMAL_GOLDEN_DIR=" + dir.string();
  CHECK(cli("build Q --n 4 --k 0 --omega " + data("round_sphere_4.json"), env).code == 1);
  Run v = cli("verify --suite continuation --n 4", env);
  CHECK(v.code == 1);
  auto j = nlohmann::json::parse(v.out);
  CHECK(j["passed"] == false);
  CHECK(cli("verify --suite continuation --n 4").code == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("rewrite examples") {
  Run r = cli("rewrite \"Δ∘Q − Q∘Δ\" --format json");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["normal_form_ascii"] == "(-2*n - 4*w + 4*k - 4)");
  CHECK(j["trace"].size() == 3);
  Run z = cli("rewrite \"ε(X)^2\" --format json");
  CHECK(nlohmann::json::parse(z.out)["normal_form"] == "0");
  CHECK(cli("rewrite \"[\"").code == 2);
}
