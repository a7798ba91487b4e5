#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "astrid/parsing.hpp"
#include "astrid/prompts.hpp"

namespace astrid::judge {

struct JudgeEndpoint {
  std::string base_url;     // e.g. https://api.example.com/v1
  std::string model;
  std::string api_key_env;  // name of the env var holding the key; never the key
  double temperature = 0.0;
  int max_retries = 2;      // transport-level retries
  int timeout_s = 60;
};

class JudgeClient {
 public:
  virtual ~JudgeClient() = default;
  virtual std::string complete(TemplateId id, const std::string& prompt) = 0;
};

struct Exchange {
  TemplateId template_id;
  std::string key;  // sha256 over template name + prompt
  std::string prompt;
  std::string response;
};

std::string exchange_key(TemplateId id, const std::string& prompt);

// Deterministic fixture-backed judge: completions come from a store keyed
// by (template, prompt hash). Lookup misses are typed errors.
class ScriptedJudge : public JudgeClient {
 public:
  ScriptedJudge() = default;
  // `source` is a fixtures JSONL file, or a directory containing
  // scripted.jsonl. Lines: {"template": ..., "key": ..., "response": ...}.
  static ScriptedJudge load(const std::string& source);

  void add(TemplateId id, const std::string& prompt, std::string response);
  void add_key(const std::string& key, std::string response);
  std::size_t size() const { return replies_.size(); }

  std::string complete(TemplateId id, const std::string& prompt) override;

 private:
  std::map<std::string, std::string> replies_;
};

// Test/adapter shim: completion via an arbitrary function.
class CallbackJudge : public JudgeClient {
 public:
  using Fn = std::function<std::string(TemplateId, const std::string&)>;
  explicit CallbackJudge(Fn fn) : fn_(std::move(fn)) {}
  std::string complete(TemplateId id, const std::string& prompt) override {
    return fn_(id, prompt);
  }

 private:
  Fn fn_;
};

// OpenAI-compatible chat-completions client.
class HttpJudge : public JudgeClient {
 public:
  explicit HttpJudge(JudgeEndpoint endpoint);
  std::string complete(TemplateId id, const std::string& prompt) override;

 private:
  JudgeEndpoint endpoint_;
  std::string api_key_;
};

// Content-addressed completion cache in front of any judge. Writes are
// serialized; files are written atomically via rename.
class CachingJudge : public JudgeClient {
 public:
  CachingJudge(JudgeClient& inner, std::string cache_dir, std::string key_salt = "");
  std::string complete(TemplateId id, const std::string& prompt) override;

 private:
  JudgeClient& inner_;
  std::string cache_dir_;
  std::string key_salt_;
  std::mutex write_mutex_;
};

// Records every exchange passing through it (for audit logs).
class RecordingJudge : public JudgeClient {
 public:
  explicit RecordingJudge(JudgeClient& inner) : inner_(inner) {}
  std::string complete(TemplateId id, const std::string& prompt) override;
  const std::vector<Exchange>& exchanges() const { return exchanges_; }

 private:
  JudgeClient& inner_;
  std::vector<Exchange> exchanges_;
};

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::vector<double> embed(const std::string& text) = 0;
};

// OpenAI-compatible embeddings client.
class HttpEmbedder : public Embedder {
 public:
  explicit HttpEmbedder(JudgeEndpoint endpoint);
  std::vector<double> embed(const std::string& text) override;

 private:
  JudgeEndpoint endpoint_;
  std::string api_key_;
};

class ScriptedEmbedder : public Embedder {
 public:
  static ScriptedEmbedder load(const std::string& source);
  void add(const std::string& text, std::vector<double> vec);
  std::vector<double> embed(const std::string& text) override;

 private:
  std::map<std::string, std::vector<double>> vectors_;
};

class CallbackEmbedder : public Embedder {
 public:
  using Fn = std::function<std::vector<double>(const std::string&)>;
  explicit CallbackEmbedder(Fn fn) : fn_(std::move(fn)) {}
  std::vector<double> embed(const std::string& text) override { return fn_(text); }

 private:
  Fn fn_;
};

class CachingEmbedder : public Embedder {
 public:
  CachingEmbedder(Embedder& inner, std::string cache_dir, std::string key_salt = "");
  std::vector<double> embed(const std::string& text) override;

 private:
  Embedder& inner_;
  std::string cache_dir_;
  std::string key_salt_;
  std::mutex write_mutex_;
};

// Prompt set + transport, the unit the scoring operations work against.
// Malformed replies get one re-ask with a format reminder appended, then a
// typed error.
struct Judge {
  const PromptSet* prompts;
  JudgeClient* client;

  std::string ask(TemplateId id, const Bindings& bindings) const;
};

SentenceClassification classify_sentences(const Judge& judge,
                                          const std::vector<std::string>& sentences);

VerdictSet grounding_verdicts(const Judge& judge, const std::string& question,
                              const std::string& context,
                              const std::vector<std::string>& statements);

// true = the system refused to address the question.
bool refusal_verdict(const Judge& judge, const std::string& question,
                     const std::string& answer);

// Empty context short-circuits to false without a judge call.
bool context_relevance_verdict(const Judge& judge, const std::string& question,
                               const std::string& context);

std::vector<std::string> extract_statements(const Judge& judge,
                                            const std::string& question,
                                            const std::string& answer);

// nullopt when the judge produced no statements even after the format
// retry (a refusal-style answer); transport errors still propagate.
std::optional<std::vector<std::string>> try_extract_statements(const Judge& judge,
                                                               const std::string& question,
                                                               const std::string& answer);

std::vector<std::string> generate_questions(const Judge& judge,
                                            const std::string& answer, int n);

std::vector<double> embed_text(Embedder& embedder, const std::string& text);

}  // namespace astrid::judge
