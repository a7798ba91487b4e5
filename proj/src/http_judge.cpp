#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "json.hpp"

#include "astrid/error.hpp"
#include "astrid/judge.hpp"
#include "astrid/util.hpp"

namespace astrid::judge {

namespace {

using nlohmann::json;

struct ParsedUrl {
  std::string scheme_host_port;  // httplib client target
  std::string path_prefix;       // e.g. "/v1"
};

ParsedUrl parse_base_url(const std::string& base_url) {
  std::size_t scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("judge base_url must start with http:// or https://: " + base_url);
  }
  std::size_t path_start = base_url.find('/', scheme_end + 3);
  ParsedUrl out;
  if (path_start == std::string::npos) {
    out.scheme_host_port = base_url;
  } else {
    out.scheme_host_port = base_url.substr(0, path_start);
    out.path_prefix = base_url.substr(path_start);
    while (!out.path_prefix.empty() && out.path_prefix.back() == '/') {
      out.path_prefix.pop_back();
    }
  }
  return out;
}

std::string resolve_api_key(const JudgeEndpoint& endpoint) {
  if (endpoint.api_key_env.empty()) return "";
  const char* value = std::getenv(endpoint.api_key_env.c_str());
  if (value == nullptr || *value == '\0') {
    throw ConfigError("environment variable '" + endpoint.api_key_env +
                      "' named in config is not set");
  }
  return value;
}

// POST with transport retries; 5xx and connection errors retry, other
// non-200 statuses fail immediately.
json post_json(const JudgeEndpoint& endpoint, const std::string& api_key,
               const std::string& path, const json& body) {
  ParsedUrl url = parse_base_url(endpoint.base_url);
  std::string payload = body.dump();
  std::string last_error;
  for (int attempt = 0; attempt <= endpoint.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(200 * attempt));
    }
    httplib::Client client(url.scheme_host_port);
    client.set_connection_timeout(endpoint.timeout_s);
    client.set_read_timeout(endpoint.timeout_s);
    httplib::Headers headers;
    if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);
    auto res = client.Post(url.path_prefix + path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "server error: HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw JudgeError("judge endpoint returned HTTP " + std::to_string(res->status) +
                       ": " + res->body.substr(0, 200));
    }
    try {
      return json::parse(res->body);
    } catch (const json::exception& e) {
      throw JudgeError(std::string("judge endpoint returned invalid JSON: ") + e.what());
    }
  }
  throw JudgeError("judge endpoint unreachable after " +
                   std::to_string(endpoint.max_retries + 1) + " attempts (" +
                   last_error + ")");
}

}  // namespace

HttpJudge::HttpJudge(JudgeEndpoint endpoint)
    : endpoint_(std::move(endpoint)), api_key_(resolve_api_key(endpoint_)) {}

std::string HttpJudge::complete(TemplateId, const std::string& prompt) {
  json body = {{"model", endpoint_.model},
               {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
               {"temperature", endpoint_.temperature}};
  json reply = post_json(endpoint_, api_key_, "/chat/completions", body);
  try {
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw JudgeError(std::string("unexpected chat-completions response shape: ") + e.what());
  }
}

HttpEmbedder::HttpEmbedder(JudgeEndpoint endpoint)
    : endpoint_(std::move(endpoint)), api_key_(resolve_api_key(endpoint_)) {}

std::vector<double> HttpEmbedder::embed(const std::string& text) {
  json body = {{"model", endpoint_.model}, {"input", text}};
  json reply = post_json(endpoint_, api_key_, "/embeddings", body);
  try {
    return reply.at("data").at(0).at("embedding").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw JudgeError(std::string("unexpected embeddings response shape: ") + e.what());
  }
}

}  // namespace astrid::judge
