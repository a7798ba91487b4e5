#include "astrid/judge.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "astrid/error.hpp"
#include "astrid/util.hpp"

namespace astrid::judge {

namespace fs = std::filesystem;
using nlohmann::json;

std::string exchange_key(TemplateId id, const std::string& prompt) {
  return util::sha256_hex(to_string(id) + "\n" + prompt);
}

ScriptedJudge ScriptedJudge::load(const std::string& source) {
  fs::path path(source);
  if (fs::is_directory(path)) path /= "scripted.jsonl";
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scripted judge fixtures: " + path.string());
  ScriptedJudge judge;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (util::trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": bad fixture line: " + e.what());
    }
    judge.add_key(j.at("key").get<std::string>(), j.at("response").get<std::string>());
  }
  return judge;
}

void ScriptedJudge::add(TemplateId id, const std::string& prompt, std::string response) {
  replies_[exchange_key(id, prompt)] = std::move(response);
}

void ScriptedJudge::add_key(const std::string& key, std::string response) {
  replies_[key] = std::move(response);
}

std::string ScriptedJudge::complete(TemplateId id, const std::string& prompt) {
  std::string key = exchange_key(id, prompt);
  auto it = replies_.find(key);
  if (it == replies_.end()) {
    throw JudgeError("no scripted completion for template " + to_string(id) +
                     " (key " + key.substr(0, 12) + "...)");
  }
  return it->second;
}

CachingJudge::CachingJudge(JudgeClient& inner, std::string cache_dir, std::string key_salt)
    : inner_(inner), cache_dir_(std::move(cache_dir)), key_salt_(std::move(key_salt)) {
  fs::create_directories(cache_dir_);
}

std::string CachingJudge::complete(TemplateId id, const std::string& prompt) {
  std::string key = util::sha256_hex("chat\n" + key_salt_ + "\n" + to_string(id) + "\n" + prompt);
  fs::path file = fs::path(cache_dir_) / (key + ".txt");
  {
    std::ifstream in(file, std::ios::binary);
    if (in) {
      std::ostringstream buf;
      buf << in.rdbuf();
      return buf.str();
    }
  }
  std::string response = inner_.complete(id, prompt);
  {
    std::lock_guard<std::mutex> lock(write_mutex_);
    fs::path tmp = fs::path(cache_dir_) / (key + ".tmp");
    std::ofstream out(tmp, std::ios::binary);
    out << response;
    out.close();
    fs::rename(tmp, file);
  }
  return response;
}

std::string RecordingJudge::complete(TemplateId id, const std::string& prompt) {
  std::string response = inner_.complete(id, prompt);
  exchanges_.push_back({id, exchange_key(id, prompt), prompt, response});
  return response;
}

void ScriptedEmbedder::add(const std::string& text, std::vector<double> vec) {
  vectors_[util::sha256_hex(text)] = std::move(vec);
}

ScriptedEmbedder ScriptedEmbedder::load(const std::string& source) {
  fs::path path(source);
  if (fs::is_directory(path)) path /= "embeddings.jsonl";
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scripted embeddings: " + path.string());
  ScriptedEmbedder embedder;
  std::string line;
  while (std::getline(in, line)) {
    if (util::trim(line).empty()) continue;
    json j = json::parse(line);
    embedder.vectors_[j.at("key").get<std::string>()] =
        j.at("vector").get<std::vector<double>>();
  }
  return embedder;
}

std::vector<double> ScriptedEmbedder::embed(const std::string& text) {
  auto it = vectors_.find(util::sha256_hex(text));
  if (it == vectors_.end()) {
    throw JudgeError("no scripted embedding for text hash " +
                     util::sha256_hex(text).substr(0, 12) + "...");
  }
  return it->second;
}

CachingEmbedder::CachingEmbedder(Embedder& inner, std::string cache_dir, std::string key_salt)
    : inner_(inner), cache_dir_(std::move(cache_dir)), key_salt_(std::move(key_salt)) {
  fs::create_directories(cache_dir_);
}

std::vector<double> CachingEmbedder::embed(const std::string& text) {
  std::string key = util::sha256_hex("embed\n" + key_salt_ + "\n" + text);
  fs::path file = fs::path(cache_dir_) / (key + ".json");
  {
    std::ifstream in(file, std::ios::binary);
    if (in) {
      json j = json::parse(in);
      return j.get<std::vector<double>>();
    }
  }
  std::vector<double> vec = inner_.embed(text);
  {
    std::lock_guard<std::mutex> lock(write_mutex_);
    fs::path tmp = fs::path(cache_dir_) / (key + ".tmp");
    std::ofstream out(tmp, std::ios::binary);
    out << json(vec).dump();
    out.close();
    fs::rename(tmp, file);
  }
  return vec;
}

std::string Judge::ask(TemplateId id, const Bindings& bindings) const {
  return client->complete(id, prompts->render(id, bindings));
}

namespace {

// One re-ask with a format reminder appended to the original prompt, then a
// typed error carrying both parse failures.
template <typename Parse>
auto ask_and_parse(const Judge& judge, TemplateId id, const Bindings& bindings,
                   const std::string& reminder, Parse parse)
    -> decltype(parse(std::string())) {
  std::string prompt = judge.prompts->render(id, bindings);
  std::string reply = judge.client->complete(id, prompt);
  try {
    return parse(reply);
  } catch (const JudgeError& first) {
    std::string retry_reply = judge.client->complete(id, prompt + "\n\n" + reminder);
    try {
      return parse(retry_reply);
    } catch (const JudgeError& second) {
      throw JudgeError(to_string(id) + ": " + second.what() +
                       " (after format retry; first attempt: " + first.what() + ")");
    }
  }
}

std::string sentences_as_json(const std::vector<std::string>& sentences) {
  return json(sentences).dump();
}

}  // namespace

SentenceClassification classify_sentences(const Judge& judge,
                                          const std::vector<std::string>& sentences) {
  if (sentences.empty()) throw DataError("classify_sentences: empty sentence list");
  const std::string reminder =
      "Reminder: respond with a single JSON object containing exactly the keys "
      "ACKNOWLEDGEMENTS, QUESTIONS and CONTAINING_INFORMATION. Every input "
      "statement must appear, verbatim, in exactly one of the three lists.";
  return ask_and_parse(
      judge, TemplateId::SentenceCategories, {{"statements", sentences_as_json(sentences)}},
      reminder,
      [&](const std::string& reply) { return parse_categories_reply(reply, sentences); });
}

VerdictSet grounding_verdicts(const Judge& judge, const std::string& question,
                              const std::string& context,
                              const std::vector<std::string>& statements) {
  if (statements.empty()) throw DataError("grounding_verdicts: empty statement list");
  const std::string reminder =
      "Reminder: for every numbered statement output an 'Explanation:' line "
      "followed by a 'Verdict: Yes.' or 'Verdict: No.' line, one pair per "
      "statement, in order.";
  return ask_and_parse(
      judge, TemplateId::GroundingVerdicts,
      {{"question", question},
       {"context", context},
       {"formatted_statements", format_statements(statements)}},
      reminder,
      [&](const std::string& reply) { return parse_grounding_reply(reply, statements); });
}

bool refusal_verdict(const Judge& judge, const std::string& question,
                     const std::string& answer) {
  const std::string reminder =
      "Reminder: finish with a line of the form 'Output: True' or "
      "'Output: False'.";
  return ask_and_parse(judge, TemplateId::RefusalEval,
                       {{"question", question}, {"answer", answer}}, reminder,
                       [](const std::string& reply) { return parse_refusal_reply(reply); });
}

bool context_relevance_verdict(const Judge& judge, const std::string& question,
                               const std::string& context) {
  if (util::trim(context).empty()) return false;
  const std::string reminder =
      "Reminder: your response must contain the final verdict token \"[[Yes]]\" "
      "or \"[[No]]\".";
  return ask_and_parse(
      judge, TemplateId::ContextRelevanceEval,
      {{"question", question}, {"context", context}}, reminder,
      [](const std::string& reply) { return parse_context_relevance_reply(reply); });
}

std::optional<std::vector<std::string>> try_extract_statements(const Judge& judge,
                                                               const std::string& question,
                                                               const std::string& answer) {
  if (util::trim(answer).empty()) throw DataError("extract_statements: empty answer");
  const std::string reminder =
      "Reminder: output the statements as a numbered list, one per line, and "
      "nothing else.";
  std::string prompt = judge.prompts->render(TemplateId::StatementExtraction,
                                             {{"question", question}, {"answer", answer}});
  auto items = parse_listed_items(judge.client->complete(TemplateId::StatementExtraction, prompt));
  if (!items.empty()) return items;
  items = parse_listed_items(
      judge.client->complete(TemplateId::StatementExtraction, prompt + "\n\n" + reminder));
  if (!items.empty()) return items;
  return std::nullopt;
}

std::vector<std::string> extract_statements(const Judge& judge, const std::string& question,
                                            const std::string& answer) {
  auto items = try_extract_statements(judge, question, answer);
  if (!items) {
    throw JudgeError("statement_extraction: no statements parsed after format retry");
  }
  return *items;
}

std::vector<std::string> generate_questions(const Judge& judge, const std::string& answer,
                                            int n) {
  if (n < 1) throw ConfigError("generate_questions: n must be >= 1");
  const std::string reminder = "Reminder: output exactly " + std::to_string(n) +
                               " numbered questions, one per line, and nothing else.";
  return ask_and_parse(judge, TemplateId::QuestionGeneration,
                       {{"n", std::to_string(n)}, {"answer", answer}}, reminder,
                       [n](const std::string& reply) {
                         auto items = parse_listed_items(reply);
                         if (static_cast<int>(items.size()) != n) {
                           throw JudgeError("expected " + std::to_string(n) +
                                            " questions, parsed " +
                                            std::to_string(items.size()));
                         }
                         return items;
                       });
}

std::vector<double> embed_text(Embedder& embedder, const std::string& text) {
  if (util::trim(text).empty()) throw DataError("embed: empty text rejected");
  return embedder.embed(text);
}

}  // namespace astrid::judge
