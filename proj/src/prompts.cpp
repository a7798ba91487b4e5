#include "astrid/prompts.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "astrid/error.hpp"
#include "astrid/util.hpp"

namespace astrid::judge {

namespace {

#include "prompt_bodies.inc"

// Statement extraction and question generation back the baseline metrics
// only. Their upstream prompts are not published, so these bodies are
// in-house reconstructions in the same format family (see docs/judge.md).
inline constexpr const char* k_statement_extraction_body =
    R"_T_(Given a question and an answer, break the answer down into one or more standalone statements. Each statement must be a declarative sentence expressing a single claim and must be understandable on its own; use the question to resolve pronouns and implied subjects. Do not deviate from the specified format.

Question: Can I drive after my operation?
Answer: Not right away. Most people can drive again once they meet the legal eyesight standard, usually within a few days.
Statements:
1. The patient should not drive immediately after the operation.
2. Most people can drive again once they meet the legal eyesight standard.
3. Most people meet the legal eyesight standard within a few days of the operation.

Question: {question}
Answer: {answer}
Statements:)_T_";

inline constexpr const char* k_question_generation_body =
    R"_T_(Generate {n} different questions that the given answer would directly and completely answer. Output exactly {n} numbered questions and nothing else.

Answer: {answer}
Questions:)_T_";

std::map<TemplateId, PromptTemplate> make_builtins() {
  std::map<TemplateId, PromptTemplate> m;
  m[TemplateId::GroundingVerdicts] = {TemplateId::GroundingVerdicts,
                                      k_grounding_verdicts_body,
                                      {"question", "context", "formatted_statements"}};
  m[TemplateId::SentenceCategories] = {
      TemplateId::SentenceCategories, k_sentence_categories_body, {"statements"}};
  m[TemplateId::RefusalEval] = {
      TemplateId::RefusalEval, k_refusal_eval_body, {"question", "answer"}};
  m[TemplateId::ContextRelevanceEval] = {TemplateId::ContextRelevanceEval,
                                         k_context_relevance_eval_body,
                                         {"question", "context"}};
  m[TemplateId::StatementExtraction] = {TemplateId::StatementExtraction,
                                        k_statement_extraction_body,
                                        {"question", "answer"}};
  m[TemplateId::QuestionGeneration] = {
      TemplateId::QuestionGeneration, k_question_generation_body, {"n", "answer"}};
  return m;
}

const std::map<TemplateId, PromptTemplate>& builtins() {
  static const std::map<TemplateId, PromptTemplate> m = make_builtins();
  return m;
}

}  // namespace

std::string to_string(TemplateId id) {
  switch (id) {
    case TemplateId::GroundingVerdicts: return "grounding_verdicts";
    case TemplateId::SentenceCategories: return "sentence_categories";
    case TemplateId::RefusalEval: return "refusal_eval";
    case TemplateId::ContextRelevanceEval: return "context_relevance_eval";
    case TemplateId::StatementExtraction: return "statement_extraction";
    case TemplateId::QuestionGeneration: return "question_generation";
  }
  return "unknown";
}

TemplateId template_id_from_string(const std::string& name) {
  for (TemplateId id : kAllTemplates) {
    if (to_string(id) == name) return id;
  }
  throw ConfigError("unknown template id '" + name + "'");
}

const PromptTemplate& builtin_template(TemplateId id) {
  return builtins().at(id);
}

std::string render_template(const PromptTemplate& tmpl, const Bindings& bindings) {
  std::string out = tmpl.body;
  for (const std::string& name : tmpl.placeholders) {
    auto it = bindings.find(name);
    if (it == bindings.end()) {
      throw ConfigError("template " + to_string(tmpl.id) +
                        ": missing binding for placeholder '" + name + "'");
    }
    const std::string token = "{" + name + "}";
    std::size_t pos = 0;
    bool replaced = false;
    while ((pos = out.find(token, pos)) != std::string::npos) {
      out.replace(pos, token.size(), it->second);
      pos += it->second.size();
      replaced = true;
    }
    if (!replaced) {
      throw InternalError("template " + to_string(tmpl.id) +
                          ": declared placeholder '" + name + "' not found in body");
    }
  }
  return out;
}

std::string render_prompt(TemplateId id, const Bindings& bindings) {
  return render_template(builtin_template(id), bindings);
}

PromptSet::PromptSet() : templates_(builtins()) {}

PromptSet PromptSet::with_overrides(const std::string& dir) {
  PromptSet set;
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw ConfigError("template override directory not found: " + dir);
  }
  for (TemplateId id : kAllTemplates) {
    fs::path p = fs::path(dir) / (to_string(id) + ".txt");
    if (!fs::exists(p)) continue;
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string body = buf.str();
    while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.pop_back();
    for (const std::string& name : set.templates_.at(id).placeholders) {
      if (body.find("{" + name + "}") == std::string::npos) {
        throw ConfigError("override template " + p.string() +
                          " is missing placeholder '{" + name + "}'");
      }
    }
    set.templates_.at(id).body = body;
  }
  return set;
}

const PromptTemplate& PromptSet::get(TemplateId id) const {
  return templates_.at(id);
}

std::string PromptSet::render(TemplateId id, const Bindings& bindings) const {
  return render_template(templates_.at(id), bindings);
}

std::string PromptSet::content_hash() const {
  std::string all;
  for (const auto& [id, tmpl] : templates_) {
    all += to_string(id);
    all += '\0';
    all += tmpl.body;
    all += '\0';
  }
  return util::sha256_hex(all);
}

std::string format_statements(const std::vector<std::string>& statements) {
  std::string out;
  for (std::size_t i = 0; i < statements.size(); ++i) {
    if (i > 0) out += "\n";
    out += std::to_string(i + 1) + ". " + statements[i];
  }
  return out;
}

}  // namespace astrid::judge
