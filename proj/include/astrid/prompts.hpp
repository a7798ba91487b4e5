#pragma once

#include <map>
#include <string>
#include <vector>

namespace astrid::judge {

enum class TemplateId {
  GroundingVerdicts,
  SentenceCategories,
  RefusalEval,
  ContextRelevanceEval,
  StatementExtraction,
  QuestionGeneration,
};

inline constexpr TemplateId kAllTemplates[] = {
    TemplateId::GroundingVerdicts,   TemplateId::SentenceCategories,
    TemplateId::RefusalEval,         TemplateId::ContextRelevanceEval,
    TemplateId::StatementExtraction, TemplateId::QuestionGeneration,
};

std::string to_string(TemplateId id);
TemplateId template_id_from_string(const std::string& name);

struct PromptTemplate {
  TemplateId id;
  std::string body;                       // text with {name} placeholders
  std::vector<std::string> placeholders;  // declared placeholder names
};

using Bindings = std::map<std::string, std::string>;

const PromptTemplate& builtin_template(TemplateId id);

// Substitutes every declared placeholder; literal braces elsewhere in the
// body (e.g. the few-shot JSON) are left untouched. No escaping is applied
// to the bound text.
std::string render_template(const PromptTemplate& tmpl, const Bindings& bindings);
std::string render_prompt(TemplateId id, const Bindings& bindings);

// Bundled templates plus optional per-model overrides loaded from a
// directory of <template_name>.txt files.
class PromptSet {
 public:
  PromptSet();
  static PromptSet with_overrides(const std::string& dir);

  const PromptTemplate& get(TemplateId id) const;
  std::string render(TemplateId id, const Bindings& bindings) const;

  // Content hash over all template bodies; embedded in reports so prompt
  // drift across runs is detectable.
  std::string content_hash() const;

 private:
  std::map<TemplateId, PromptTemplate> templates_;
};

// "1. <stmt>\n2. <stmt>..." block for the grounding template.
std::string format_statements(const std::vector<std::string>& statements);

}  // namespace astrid::judge
