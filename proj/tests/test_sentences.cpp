#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "astrid/sentences.hpp"
#include "astrid/util.hpp"
#include "test_support.hpp"

using namespace astrid;
using namespace astrid::judge;

namespace {

struct GoldenCase {
  std::string input;
  std::vector<std::string> expected;
};

std::vector<GoldenCase> load_golden() {
  std::string text = test_support::read_file(test_support::golden_path("sentence_cases.txt"));
  std::vector<GoldenCase> cases;
  for (const std::string& line : util::split_lines(text)) {
    if (line.empty() || line[0] == '#') continue;
    std::size_t sep = line.find(":::");
    REQUIRE(sep != std::string::npos);
    GoldenCase c;
    c.input = line.substr(0, sep);
    std::string rest = line.substr(sep + 3);
    std::size_t start = 0;
    while (!rest.empty()) {
      std::size_t next = rest.find("|||", start);
      if (next == std::string::npos) {
        c.expected.push_back(rest.substr(start));
        break;
      }
      c.expected.push_back(rest.substr(start, next - start));
      start = next + 3;
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

}  // namespace

TEST_CASE("golden file: thirty hand-checked splits") {
  auto cases = load_golden();
  REQUIRE(cases.size() == 30);
  for (const GoldenCase& c : cases) {
    CAPTURE(c.input);
    CHECK(split_sentences(c.input) == c.expected);
  }
}

TEST_CASE("span concatenation reconstructs the input byte for byte") {
  auto cases = load_golden();
  for (const GoldenCase& c : cases) {
    std::string rebuilt;
    for (const std::string& span : split_sentence_spans(c.input)) rebuilt += span;
    CHECK(rebuilt == c.input);
  }

  // And over random mashups of clinical-ish fragments.
  std::mt19937_64 rng(99);
  const std::vector<std::string> fragments = {
      "Sure.",  "Use 0.5 mg drops twice daily.", "Dr. Patel will call you.",
      "Why?",   "Rest!",                          "e.g. light walking is fine",
      "No. 12", "It settles in 3.5 days usually.", "   ", "ok then"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    int parts = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < parts; ++i) {
      text += fragments[rng() % fragments.size()];
      if (rng() % 2 == 0) text += " ";
    }
    std::string rebuilt;
    for (const std::string& span : split_sentence_spans(text)) rebuilt += span;
    CHECK(rebuilt == text);
  }
}

TEST_CASE("multi-line answers split on newline-separated sentences") {
  std::vector<std::string> got = split_sentences("First line.\nSecond line.\n");
  CHECK(got == std::vector<std::string>{"First line.", "Second line."});
}

TEST_CASE("whitespace-only input yields no sentences") {
  CHECK(split_sentences("").empty());
  CHECK(split_sentences(" \n\t ").empty());
}
