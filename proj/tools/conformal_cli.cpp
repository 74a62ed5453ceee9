#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "conformal/conformal.h"

namespace {

struct Common {
  int n = 4;
  bool allow_n8 = false;
  std::string omega_file;
  std::string output;
  std::string format = "json";
};

using ConfigPtr = std::unique_ptr<conf_config, decltype(&conf_config_free)>;
using ResultPtr = std::unique_ptr<conf_result, decltype(&conf_result_free)>;

int report_error(conf_status s) {
  std::cerr << "error: " << conf_last_error() << "\n";
  return conf_exit_code(s);
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

// Shared setup for verify and build; returns an exit code, or -1 to go on.
int configure(const Common& c, conf_config* cfg) {
  if (c.n == 8 && c.allow_n8) std::cerr << "warning: n = 8 is outside the tested range and may be slow\n";
  if (conf_status s = conf_config_allow_large(cfg, c.allow_n8); s != CONF_OK) return report_error(s);
  if (conf_status s = conf_config_set_n(cfg, c.n); s != CONF_OK) return report_error(s);
  if (!c.omega_file.empty()) {
    std::string text;
    if (!read_file(c.omega_file, text)) {
      std::cerr << "error: cannot read " << c.omega_file << "\n";
      return 2;
    }
    if (conf_status s = conf_config_set_scale_json(cfg, text.c_str()); s != CONF_OK) return report_error(s);
  }
  return -1;
}

int emit(conf_result* r, const Common& c) {
  const char* text = conf_result_render(r, c.format == "text" ? CONF_FORMAT_TEXT : CONF_FORMAT_JSON);
  if (!text) return report_error(CONF_INTERNAL);
  if (c.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return 0;
  }
  std::ofstream out(c.output, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << c.output << "\n";
    return 2;
  }
  return 0;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--n", c.n, "base dimension (4 or 6)");
  cmd->add_flag("--allow-n8", c.allow_n8, "permit n = 8");
  cmd->add_option("--omega", c.omega_file, "context file {\"omega\": expr} or {\"exp_omega\": expr}");
  cmd->add_option("--output,-o", c.output, "write the report here instead of stdout");
  cmd->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformal operator verification and construction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(conf_version()));

  Common verify_opts;
  std::string suite = "all";
  uint64_t seed = 1;
  unsigned threads = 0;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, verify_opts);
  std::string suite_help = "suite:";
  for (size_t i = 0; i < conf_suite_count(); ++i) suite_help += std::string(" ") + conf_suite_name(i);
  verify->add_option("--suite", suite, suite_help);
  verify->add_option("--seed", seed, "run seed");
  verify->add_option("--threads", threads, "worker threads (0: all cores)");

  Common build_opts;
  std::string op_name;
  int k = 0, l = -1;
  auto* build = app.add_subcommand("build", "build an operator and dump it");
  build->add_option("name", op_name, "L, Q, G, M or K")->required()->check(CLI::IsMember({"L", "Q", "G", "M", "K"}));
  add_common(build, build_opts);
  build->add_option("--k", k, "form degree");
  build->add_option("--l", l, "order index (K only)");

  std::string word, rewrite_format = "text";
  auto* rewrite = app.add_subcommand("rewrite", "normal form of an operator word, with the rule trace");
  rewrite->add_option("word", word, "word, e.g. \"Δ∘Q − Q∘Δ\"")->required();
  rewrite->add_option("--format", rewrite_format, "json or text")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  ConfigPtr cfg(nullptr, conf_config_free);
  {
    conf_config* raw = nullptr;
    if (conf_status s = conf_config_new(&raw); s != CONF_OK) return report_error(s);
    cfg.reset(raw);
  }

  if (*verify) {
    if (int rc = configure(verify_opts, cfg.get()); rc >= 0) return rc;
    if (conf_status s = conf_config_set_suite(cfg.get(), suite.c_str()); s != CONF_OK) return report_error(s);
    conf_config_set_seed(cfg.get(), seed);
    conf_config_set_threads(cfg.get(), threads);
    conf_result* raw = nullptr;
    conf_status s = conf_verify(cfg.get(), &raw);
    ResultPtr r(raw, conf_result_free);
    if (!r) return report_error(s);
    if (int rc = emit(r.get(), verify_opts); rc != 0) return rc;
    if (s == CONF_CHECK_FAILED)
      std::cerr << "FAIL " << conf_result_first_failure_id(r.get()) << ": "
                << conf_result_first_failure_witness(r.get()) << "\n";
    else
      std::cerr << conf_result_check_count(r.get()) << " checks passed\n";
    return conf_exit_code(s);
  }

  if (*build) {
    if (int rc = configure(build_opts, cfg.get()); rc >= 0) return rc;
    conf_result* raw = nullptr;
    conf_status s = conf_build(cfg.get(), op_name.c_str(), k, l, &raw);
    ResultPtr r(raw, conf_result_free);
    if (!r) return report_error(s);
    if (int rc = emit(r.get(), build_opts); rc != 0) return rc;
    if (s == CONF_CHECK_FAILED)
      std::cerr << "FAIL " << conf_result_first_failure_id(r.get()) << ": "
                << conf_result_first_failure_witness(r.get()) << "\n";
    return conf_exit_code(s);
  }

  conf_result* raw = nullptr;
  conf_status s = conf_rewrite(word.c_str(), &raw);
  ResultPtr r(raw, conf_result_free);
  if (!r) return report_error(s);
  Common out;
  out.format = rewrite_format;
  return emit(r.get(), out);
}
