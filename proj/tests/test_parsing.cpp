#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include "astrid/error.hpp"
#include "astrid/parsing.hpp"
#include "astrid/util.hpp"
#include "test_support.hpp"

using namespace astrid;
using namespace astrid::judge;
using nlohmann::json;

namespace {

// The worked grounding example bundled with the template: five statements
// about a student, verdicts No/No/Yes/No/Yes.
const std::vector<std::string> kStudentStatements = {
    "John is majoring in Biology.",
    "John is taking a course on Artificial Intelligence.",
    "John is a dedicated student.",
    "John has a part-time job.",
    "John is interested in computer programming."};

const char* kStudentReply = R"(1. John is majoring in Biology.
Explanation: John's major is explicitly mentioned as Computer Science. There is no information suggesting he is majoring in Biology.
Verdict: No.

2. John is taking a course on Artificial Intelligence.
Explanation: The context mentions the courses John is currently enrolled in, and Artificial Intelligence is not mentioned.
Verdict: No.

3. John is a dedicated student.
Explanation: He spends a significant amount of time studying and completing assignments, which implies dedication.
Verdict: Yes.

4. John has a part-time job.
Explanation: There is no information given in the context about John having a part-time job.
Verdict: No.

5. John is interested in computer programming.
Explanation: Pursuing a degree in Computer Science implies an interest in computer programming.
Verdict: Yes.)";

}  // namespace

TEST_CASE("worked grounding example parses to No No Yes No Yes") {
  VerdictSet set = parse_grounding_reply(kStudentReply, kStudentStatements);
  REQUIRE(set.entries.size() == 5);
  std::vector<bool> verdicts;
  for (const auto& e : set.entries) verdicts.push_back(e.supported);
  CHECK(verdicts == std::vector<bool>{false, false, true, false, true});
  CHECK(set.supported_count() == 2);
  CHECK(set.entries[2].statement == "John is a dedicated student.");
  CHECK(set.entries[0].explanation.find("Computer Science") != std::string::npos);
}

TEST_CASE("verdict count mismatch reports expected and parsed counts") {
  std::string reply = "Verdict: Yes.\nVerdict: No.\nVerdict: Yes.\nVerdict: No.";
  CHECK_THROWS_WITH_AS(parse_grounding_reply(reply, kStudentStatements),
                       doctest::Contains("expected 5 verdicts, parsed 4"), JudgeError);
}

TEST_CASE("unparseable verdict tokens are typed errors, not defaults") {
  CHECK_THROWS_WITH_AS(parse_grounding_reply("Verdict: perhaps", {"s"}),
                       doctest::Contains("unparseable verdict token"), JudgeError);
}

TEST_CASE("categories reply with the bundled few-shot output") {
  std::vector<std::string> sentences = {
      "Sure.",
      "As a precaution, avoid water exposure to the eyes, especially in the first month after surgery.",
      "It's fine to shower and wash your hair, just be careful not to get water in your eyes.",
      "You should also avoid exercise for the first week, but after that, you can go back to light activities like brisk walking, gardening, light jogging, and gentle cycling.",
      "Is there anything else I can help you with?"};
  json reply = {
      {"ACKNOWLEDGEMENTS", {sentences[0]}},
      {"QUESTIONS", {sentences[4]}},
      {"CONTAINING_INFORMATION", {sentences[1], sentences[2], sentences[3]}}};
  SentenceClassification got = parse_categories_reply(reply.dump(), sentences);
  CHECK(got.acknowledgements.size() == 1);
  CHECK(got.questions.size() == 1);
  CHECK(got.informative.size() == 3);
}

TEST_CASE("coverage violations and omissions are typed errors") {
  std::vector<std::string> sentences = {"One.", "Two."};
  json missing = {{"ACKNOWLEDGEMENTS", json::array()},
                  {"QUESTIONS", json::array()},
                  {"CONTAINING_INFORMATION", {"One."}}};
  CHECK_THROWS_WITH_AS(parse_categories_reply(missing.dump(), sentences),
                       doctest::Contains("missing from all categories"), JudgeError);

  json doubled = {{"ACKNOWLEDGEMENTS", {"One."}},
                  {"QUESTIONS", {"One."}},
                  {"CONTAINING_INFORMATION", {"Two."}}};
  CHECK_THROWS_AS(parse_categories_reply(doubled.dump(), sentences), JudgeError);
}

TEST_CASE("json object extraction is string- and escape-aware") {
  std::string text = R"(prefix {"a": "brace } in string", "b": {"c": 1}} suffix)";
  auto object = extract_json_object(text);
  REQUIRE(object);
  CHECK(json::parse(*object).at("b").at("c") == 1);
  CHECK_FALSE(extract_json_object("no braces here"));
  CHECK_FALSE(extract_json_object("{unclosed"));
}

TEST_CASE("refusal output parsing tolerates case and punctuation; last output wins") {
  CHECK(parse_refusal_reply("Output: TRUE.") == true);
  CHECK(parse_refusal_reply("output:false") == false);
  CHECK(parse_refusal_reply("Output: True\nOutput: False") == false);
  CHECK_THROWS_AS(parse_refusal_reply("no structured output"), JudgeError);
}

TEST_CASE("context relevance: the last bracket token decides") {
  CHECK(parse_context_relevance_reply("blah [[Yes]]") == true);
  CHECK(parse_context_relevance_reply("[[NO]]") == false);
  CHECK(parse_context_relevance_reply("…[[No]] …[[Yes]]") == true);
  CHECK(parse_context_relevance_reply("[[Yes]] then [[no]]") == false);
  CHECK_THROWS_AS(parse_context_relevance_reply("Yes"), JudgeError);
}

TEST_CASE("listed item parsing accepts numbers and dashes") {
  CHECK(parse_listed_items("1. Alpha\n2) Beta\n- Gamma") ==
        std::vector<std::string>{"Alpha", "Beta", "Gamma"});
  CHECK(parse_listed_items("prose only").empty());
}

TEST_CASE("malformed corpus: every case yields a typed value or a typed error") {
  std::string text =
      test_support::read_file(test_support::golden_path("malformed_replies.jsonl"));
  int checked = 0;
  for (const std::string& line : util::split_lines(text)) {
    if (util::trim(line).empty()) continue;
    json c = json::parse(line);
    ++checked;
    CAPTURE(c.at("case").get<int>());
    std::string template_name = c.at("template");
    std::string reply = c.at("reply");
    bool expect_value = c.at("expect") == "value";

    try {
      if (template_name == "grounding_verdicts") {
        auto statements = c.at("statements").get<std::vector<std::string>>();
        VerdictSet set = parse_grounding_reply(reply, statements);
        REQUIRE(expect_value);
        std::vector<bool> got;
        for (const auto& e : set.entries) got.push_back(e.supported);
        CHECK(got == c.at("verdicts").get<std::vector<bool>>());
      } else if (template_name == "sentence_categories") {
        auto sentences = c.at("sentences").get<std::vector<std::string>>();
        SentenceClassification got = parse_categories_reply(reply, sentences);
        REQUIRE(expect_value);
        CHECK(got.acknowledgements == c.at("acks").get<std::vector<std::string>>());
        CHECK(got.questions == c.at("questions").get<std::vector<std::string>>());
        CHECK(got.informative == c.at("informative").get<std::vector<std::string>>());
      } else if (template_name == "refusal_eval") {
        bool got = parse_refusal_reply(reply);
        REQUIRE(expect_value);
        CHECK(got == c.at("value").get<bool>());
      } else if (template_name == "context_relevance_eval") {
        bool got = parse_context_relevance_reply(reply);
        REQUIRE(expect_value);
        CHECK(got == c.at("value").get<bool>());
      } else if (template_name == "statement_extraction") {
        auto got = parse_listed_items(reply);
        REQUIRE(expect_value);
        CHECK(got == c.at("items").get<std::vector<std::string>>());
      } else {
        FAIL("unknown template in corpus: " << template_name);
      }
    } catch (const JudgeError&) {
      CHECK_MESSAGE(!expect_value, "case " << c.at("case") << " expected a value");
    }
  }
  CHECK(checked == 50);
}

TEST_CASE("refusal golden file parses to the annotated labels") {
  std::string text =
      test_support::read_file(test_support::golden_path("refusal_cases.jsonl"));
  int checked = 0;
  for (const std::string& line : util::split_lines(text)) {
    if (util::trim(line).empty()) continue;
    json c = json::parse(line);
    ++checked;
    CAPTURE(c.at("question").get<std::string>());
    CHECK(parse_refusal_reply(c.at("reply")) == c.at("expected").get<bool>());
  }
  CHECK(checked == 20);
}
