#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>

#include "astrid/error.hpp"
#include "astrid/prompts.hpp"
#include "test_support.hpp"

using namespace astrid;
using namespace astrid::judge;

namespace {

std::string golden_body(const std::string& name) {
  std::string text = test_support::read_file(test_support::golden_path("prompt_" + name + ".txt"));
  while (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

}  // namespace

TEST_CASE("bundled templates match their golden copies byte for byte") {
  for (TemplateId id : {TemplateId::GroundingVerdicts, TemplateId::SentenceCategories,
                        TemplateId::RefusalEval, TemplateId::ContextRelevanceEval}) {
    CHECK_MESSAGE(builtin_template(id).body == golden_body(to_string(id)),
                  "template drift: " << to_string(id));
  }
}

TEST_CASE("rendering substitutes every declared placeholder") {
  std::string prompt = render_prompt(TemplateId::ContextRelevanceEval,
                                     {{"question", "Can I swim?"},
                                      {"context", "Avoid pools for two weeks."}});
  CHECK(prompt.find("Question: Can I swim?") != std::string::npos);
  CHECK(prompt.find("Information: Avoid pools for two weeks.") != std::string::npos);
  CHECK(prompt.find("{question}") == std::string::npos);
  CHECK(prompt.find("{context}") == std::string::npos);
}

TEST_CASE("sentence categories prompt ends with the bound statements") {
  std::string prompt =
      render_prompt(TemplateId::SentenceCategories, {{"statements", "[\"Sure.\"]"}});
  CHECK(prompt.find("statements: [\"Sure.\"]\ncategories:") != std::string::npos);
  // The few-shot block's literal braces survive rendering.
  CHECK(prompt.find("\"ACKNOWLEDGEMENTS\": [\"Sure.\"]") != std::string::npos);
}

TEST_CASE("missing bindings name the placeholder") {
  CHECK_THROWS_WITH_AS(
      render_prompt(TemplateId::GroundingVerdicts,
                    {{"question", "q"}, {"formatted_statements", "1. s"}}),
      doctest::Contains("context"), ConfigError);
}

TEST_CASE("no escaping is applied to clinical text") {
  std::string tricky = "Dose: 1 \"drop\" {morning} & <night>\nLine two.";
  std::string prompt = render_prompt(TemplateId::RefusalEval,
                                     {{"question", "q"}, {"answer", tricky}});
  CHECK(prompt.find(tricky) != std::string::npos);
}

TEST_CASE("format_statements numbers one statement per line") {
  CHECK(format_statements({"A", "B"}) == "1. A\n2. B");
  CHECK(format_statements({}) == "");
}

TEST_CASE("prompt set content hash is stable and sensitive to overrides") {
  PromptSet defaults;
  CHECK(defaults.content_hash() == PromptSet().content_hash());

  test_support::TempDir dir("tmpl");
  {
    std::ofstream out(dir.path() / "refusal_eval.txt");
    out << "Judge refusal for {question} and {answer}.\n";
  }
  PromptSet overridden = PromptSet::with_overrides(dir.str());
  CHECK(overridden.content_hash() != defaults.content_hash());
  std::string prompt = overridden.render(TemplateId::RefusalEval,
                                         {{"question", "q1"}, {"answer", "a1"}});
  CHECK(prompt == "Judge refusal for q1 and a1.");
  // Untouched templates keep their bundled bodies.
  CHECK(overridden.get(TemplateId::ContextRelevanceEval).body ==
        defaults.get(TemplateId::ContextRelevanceEval).body);
}

TEST_CASE("override templates must keep the declared placeholders") {
  test_support::TempDir dir("tmpl2");
  {
    std::ofstream out(dir.path() / "refusal_eval.txt");
    out << "Missing both placeholders.\n";
  }
  CHECK_THROWS_AS(PromptSet::with_overrides(dir.str()), ConfigError);
  CHECK_THROWS_AS(PromptSet::with_overrides(dir.str() + "/nope"), ConfigError);
}

TEST_CASE("template ids round-trip through their names") {
  for (TemplateId id : kAllTemplates) {
    CHECK(template_id_from_string(to_string(id)) == id);
  }
  CHECK_THROWS_AS(template_id_from_string("bogus"), ConfigError);
}
