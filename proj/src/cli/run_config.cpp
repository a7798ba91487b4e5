#include <fstream>

#include "astrid/cli.hpp"
#include "astrid/error.hpp"
#include "astrid/util.hpp"

namespace astrid::cli {

void RunConfig::validate_for_judge_run() const {
  if (dataset_path.empty()) throw ConfigError("no dataset given (--dataset or config)");
  if (!seed) throw ConfigError("seed is mandatory (--seed or config)");
  bool scripted = !scripted_dir.empty();
  if (scripted && endpoint_configured) {
    throw ConfigError("exactly one of a live endpoint and scripted fixtures may be "
                      "configured; got both");
  }
  if (!scripted && !endpoint_configured) {
    throw ConfigError("no judge configured: give --scripted <dir> or an [endpoint] "
                      "section in the config file");
  }
  if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
  if (endpoint_configured) {
    if (endpoint.base_url.empty()) throw ConfigError("endpoint.base_url is empty");
    if (endpoint.model.empty()) throw ConfigError("endpoint.model is empty");
    if (endpoint.max_retries < 0) throw ConfigError("endpoint.max_retries must be >= 0");
  }
}

std::uint64_t RunConfig::require_seed() const {
  if (!seed) throw ConfigError("seed is mandatory (--seed or config)");
  return *seed;
}

namespace {

struct ConfigLine {
  std::string section;
  std::string key;
  std::string value;
};

std::string unquote(const std::string& raw) {
  std::string v = util::trim(raw);
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                        (v.front() == '\'' && v.back() == '\''))) {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

bool parse_bool(const std::string& value, const std::string& key) {
  std::string v = util::to_lower(value);
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("config key '" + key + "' expects true/false, got '" + value + "'");
}

std::int64_t parse_int(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' expects an integer, got '" + value + "'");
  }
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' expects a number, got '" + value + "'");
  }
}

void apply_endpoint_key(judge::JudgeEndpoint& endpoint, const ConfigLine& line) {
  const std::string full = line.section + "." + line.key;
  if (line.key == "base_url") endpoint.base_url = unquote(line.value);
  else if (line.key == "model") endpoint.model = unquote(line.value);
  else if (line.key == "api_key_env") endpoint.api_key_env = unquote(line.value);
  else if (line.key == "temperature") endpoint.temperature = parse_double(line.value, full);
  else if (line.key == "max_retries") {
    endpoint.max_retries = static_cast<int>(parse_int(line.value, full));
  } else if (line.key == "timeout_s") {
    endpoint.timeout_s = static_cast<int>(parse_int(line.value, full));
  } else {
    throw ConfigError("unknown config key '" + full + "'");
  }
}

}  // namespace

void load_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  std::string section;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = util::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = util::trim(line.substr(1, line.size() - 2));
      if (section != "endpoint" && section != "embeddings") {
        throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown section [" +
                          section + "]");
      }
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    ConfigLine entry{section, util::trim(line.substr(0, eq)),
                     util::trim(line.substr(eq + 1))};
    // Strip a trailing comment from unquoted values.
    if (!entry.value.empty() && entry.value.front() != '"' && entry.value.front() != '\'') {
      std::size_t hash = entry.value.find('#');
      if (hash != std::string::npos) entry.value = util::trim(entry.value.substr(0, hash));
    }

    if (entry.section == "endpoint") {
      apply_endpoint_key(config.endpoint, entry);
      config.endpoint_configured = true;
      continue;
    }
    if (entry.section == "embeddings") {
      apply_endpoint_key(config.embeddings, entry);
      config.embeddings_configured = true;
      continue;
    }

    const std::string& key = entry.key;
    if (key == "dataset") config.dataset_path = unquote(entry.value);
    else if (key == "schema") {
      config.schema = dataset::schema_from_string(unquote(entry.value));
      config.schema_set = true;
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_int(entry.value, key));
    } else if (key == "parallelism") {
      config.parallelism = static_cast<int>(parse_int(entry.value, key));
    } else if (key == "out") config.out_dir = unquote(entry.value);
    else if (key == "cache_dir") config.cache_dir = unquote(entry.value);
    else if (key == "scripted") config.scripted_dir = unquote(entry.value);
    else if (key == "templates_dir") config.templates_dir = unquote(entry.value);
    else if (key == "metrics") config.metrics = unquote(entry.value);
    else if (key == "keep_going") config.keep_going = parse_bool(entry.value, key);
    else if (key == "strict") config.strict = parse_bool(entry.value, key);
    else throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown config key '" +
                           key + "'");
  }
}

JudgeStack build_judge_stack(const RunConfig& config, bool need_embedder) {
  JudgeStack stack;
  stack.prompts = config.templates_dir.empty()
                      ? judge::PromptSet()
                      : judge::PromptSet::with_overrides(config.templates_dir);

  if (!config.scripted_dir.empty()) {
    stack.base = std::make_unique<judge::ScriptedJudge>(
        judge::ScriptedJudge::load(config.scripted_dir));
  } else {
    stack.base = std::make_unique<judge::HttpJudge>(config.endpoint);
  }
  stack.client = stack.base.get();
  if (!config.cache_dir.empty()) {
    stack.cached = std::make_unique<judge::CachingJudge>(*stack.client, config.cache_dir,
                                                         config.endpoint.model);
    stack.client = stack.cached.get();
  }

  if (need_embedder) {
    if (!config.scripted_dir.empty()) {
      stack.embedder_base = std::make_unique<judge::ScriptedEmbedder>(
          judge::ScriptedEmbedder::load(config.scripted_dir));
    } else if (config.embeddings_configured) {
      stack.embedder_base = std::make_unique<judge::HttpEmbedder>(config.embeddings);
    } else {
      throw ConfigError("answer_relevance needs an [embeddings] endpoint or scripted "
                        "embeddings");
    }
    stack.embedder = stack.embedder_base.get();
    if (!config.cache_dir.empty()) {
      stack.embedder_cached = std::make_unique<judge::CachingEmbedder>(
          *stack.embedder, config.cache_dir, config.embeddings.model);
      stack.embedder = stack.embedder_cached.get();
    }
  }
  return stack;
}

}  // namespace astrid::cli
