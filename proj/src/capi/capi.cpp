#include <memory>
#include <new>
#include <string>

#include "algebra/parser.hpp"
#include "ambient/form.hpp"
#include "conformal/conformal.h"
#include "factory/factory.hpp"
#include "scalar/expr_json.hpp"
#include "suites/suites.hpp"
#include "tractor/scale.hpp"

using namespace conformal;

struct conf_config {
  int n = 4;
  bool allow_large = false;
  SuiteOptions opt;
  Suite suite = Suite::All;
};

struct conf_result {
  Report report;
  bool is_rewrite = false;
  nlohmann::json rewrite;
  std::string rewrite_text;
  std::string rendered;
};

namespace {

thread_local std::string last_error;

conf_status fail(conf_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Maps library exceptions onto status codes.
template <class F>
conf_status guarded(F&& f) {
  try {
    return f();
  } catch (const OutOfRange& e) {
    return fail(CONF_RANGE, e.what());
  } catch (const DimensionUnsupported& e) {
    return fail(CONF_RANGE, e.what());
  } catch (const WordParseError& e) {
    return fail(CONF_USAGE, e.what());
  } catch (const ExprParseError& e) {
    return fail(CONF_USAGE, std::string("expression: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(CONF_USAGE, std::string("json: ") + e.what());
  } catch (const WeightMismatch& e) {
    return fail(CONF_RANGE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(CONF_USAGE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CONF_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CONF_INTERNAL, e.what());
  }
}

conf_status check_n(const conf_config* cfg) {
  if (cfg->n % 2 != 0) return fail(CONF_USAGE, "n must be even, got " + std::to_string(cfg->n));
  if (cfg->n == 4 || cfg->n == 6) return CONF_OK;
  if (cfg->n == 8 && cfg->allow_large) return CONF_OK;
  if (cfg->n == 8) return fail(CONF_RANGE, "n = 8 needs the large-dimension flag");
  return fail(CONF_RANGE, "n must be 4 or 6 (8 behind a flag), got " + std::to_string(cfg->n));
}

// A malformed or mismatched context file is a usage error, not a range one.
conf_status check_scale(const conf_config* cfg) {
  if (!cfg->opt.scale) return CONF_OK;
  try {
    ScaleContext::from_json(*cfg->opt.scale, cfg->n);
  } catch (const std::exception& e) {
    return fail(CONF_USAGE, std::string("scale spec: ") + e.what());
  }
  return CONF_OK;
}

}  // namespace

extern "C" {

const char* conf_version(void) { return "1.0.0"; }

const char* conf_last_error(void) { return last_error.c_str(); }

int conf_exit_code(conf_status status) {
  switch (status) {
    case CONF_OK: return 0;
    case CONF_CHECK_FAILED: return 1;
    case CONF_RANGE: return 3;
    case CONF_USAGE:
    case CONF_IO: return 2;
    default: return 1;
  }
}

conf_status conf_config_new(conf_config** out) {
  if (!out) return fail(CONF_USAGE, "null output pointer");
  return guarded([&] {
    *out = new conf_config();
    return CONF_OK;
  });
}

void conf_config_free(conf_config* cfg) { delete cfg; }

conf_status conf_config_set_n(conf_config* cfg, int n) {
  if (!cfg) return fail(CONF_USAGE, "null config");
  cfg->n = n;
  return check_n(cfg);
}

conf_status conf_config_allow_large(conf_config* cfg, int allow) {
  if (!cfg) return fail(CONF_USAGE, "null config");
  cfg->allow_large = allow != 0;
  return CONF_OK;
}

conf_status conf_config_set_seed(conf_config* cfg, uint64_t seed) {
  if (!cfg) return fail(CONF_USAGE, "null config");
  cfg->opt.seed = seed;
  return CONF_OK;
}

conf_status conf_config_set_suite(conf_config* cfg, const char* suite) {
  if (!cfg || !suite) return fail(CONF_USAGE, "null argument");
  auto s = parse_suite(suite);
  if (!s) return fail(CONF_USAGE, std::string("unknown suite '") + suite + "'");
  cfg->suite = *s;
  return CONF_OK;
}

conf_status conf_config_set_scale_json(conf_config* cfg, const char* json_text) {
  if (!cfg) return fail(CONF_USAGE, "null config");
  if (!json_text) {
    cfg->opt.scale.reset();
    return CONF_OK;
  }
  return guarded([&] {
    auto j = nlohmann::json::parse(json_text);
    if (!j.is_object()) return fail(CONF_USAGE, "scale spec must be a JSON object");
    cfg->opt.scale = j;
    return CONF_OK;
  });
}

conf_status conf_config_set_threads(conf_config* cfg, unsigned threads) {
  if (!cfg) return fail(CONF_USAGE, "null config");
  cfg->opt.threads = threads;
  return CONF_OK;
}

size_t conf_suite_count(void) { return suite_names().size(); }

const char* conf_suite_name(size_t i) {
  static const std::vector<std::string> names = suite_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

conf_status conf_verify(const conf_config* cfg, conf_result** out) {
  if (!cfg || !out) return fail(CONF_USAGE, "null argument");
  *out = nullptr;
  if (conf_status s = check_n(cfg); s != CONF_OK) return s;
  if (conf_status s = check_scale(cfg); s != CONF_OK) return s;
  return guarded([&] {
    SuiteOptions opt = cfg->opt;
    opt.n = cfg->n;
    auto r = std::make_unique<conf_result>();
    r->report = run_suite(cfg->suite, opt);
    bool ok = r->report.pass();
    *out = r.release();
    if (!ok) {
      const CheckRecord* f = (*out)->report.first_failure();
      last_error = f->id + ": " + f->witness;
      return CONF_CHECK_FAILED;
    }
    return CONF_OK;
  });
}

conf_status conf_build(const conf_config* cfg, const char* name, int k, int l, conf_result** out) {
  if (!cfg || !name || !out) return fail(CONF_USAGE, "null argument");
  *out = nullptr;
  if (conf_status s = check_n(cfg); s != CONF_OK) return s;
  if (conf_status s = check_scale(cfg); s != CONF_OK) return s;
  return guarded([&] {
    BuildRequest req;
    req.name = name;
    req.n = cfg->n;
    req.k = k;
    if (l >= 0) req.l = l;
    req.scale = cfg->opt.scale;
    auto r = std::make_unique<conf_result>();
    r->report = build_operator(req);
    bool ok = r->report.pass();
    *out = r.release();
    if (!ok) {
      const CheckRecord* f = (*out)->report.first_failure();
      last_error = f->id + ": " + f->witness;
      return CONF_CHECK_FAILED;
    }
    return CONF_OK;
  });
}

conf_status conf_rewrite(const char* word, conf_result** out) {
  if (!word || !out) return fail(CONF_USAGE, "null argument");
  *out = nullptr;
  return guarded([&] {
    AlgebraElement parsed = parse_word(word);
    std::vector<TraceStep> trace;
    AlgebraElement nf = normal_form(parsed, &trace);
    auto r = std::make_unique<conf_result>();
    r->is_rewrite = true;
    nlohmann::json steps = nlohmann::json::array();
    std::string text = "normal form: " + nf.to_string() + "\n";
    text += "trace (" + std::to_string(trace.size()) + " steps):\n";
    for (auto& s : trace) {
      steps.push_back({{"rule", s.rule}, {"position", s.position}});
      text += "  " + s.rule + " @ " + std::to_string(s.position) + "\n";
    }
    r->rewrite = {{"schema", kReportSchema},
                  {"name", "rewrite"},
                  {"input", word},
                  {"normal_form", nf.to_string()},
                  {"normal_form_ascii", nf.to_string(true)},
                  {"trace", steps}};
    r->rewrite_text = text;
    *out = r.release();
    return CONF_OK;
  });
}

void conf_result_free(conf_result* r) { delete r; }

int conf_result_passed(const conf_result* r) { return r && (r->is_rewrite || r->report.pass()) ? 1 : 0; }

size_t conf_result_check_count(const conf_result* r) { return r ? r->report.checks.size() : 0; }

const char* conf_result_first_failure_id(const conf_result* r) {
  if (!r) return nullptr;
  const CheckRecord* f = r->report.first_failure();
  return f ? f->id.c_str() : nullptr;
}

const char* conf_result_first_failure_witness(const conf_result* r) {
  if (!r) return nullptr;
  const CheckRecord* f = r->report.first_failure();
  return f ? f->witness.c_str() : nullptr;
}

const char* conf_result_render(conf_result* r, conf_format format) {
  if (!r) return nullptr;
  try {
    if (r->is_rewrite)
      r->rendered = format == CONF_FORMAT_JSON ? r->rewrite.dump(2) + "\n" : r->rewrite_text;
    else
      r->rendered = format == CONF_FORMAT_JSON ? r->report.to_json_text() : r->report.to_text();
  } catch (const std::exception& e) {
    last_error = e.what();
    return nullptr;
  }
  return r->rendered.c_str();
}

}  // extern "C"
