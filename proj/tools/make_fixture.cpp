// Regenerates the bundled offline evaluation fixture: a 132-record dataset
// (87 in-scope, 45 out-of-scope) plus the scripted judge completions for
// every triad call the evaluate command makes over it.
//
//   astrid-make-fixture [out_dir]    (default fixtures/unique132)

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "astrid/dataset.hpp"
#include "astrid/judge.hpp"
#include "astrid/sentences.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace astrid;

namespace {

const std::vector<std::string> kActivities = {
    "wash my hair",       "go swimming",        "bend over to garden",
    "lift heavy shopping", "watch television",   "read small print",
    "cook over a hot stove", "go for a brisk walk", "wear eye makeup",
    "fly on a plane",     "play golf",          "drive at night",
    "use my old glasses", "rub my eye",         "sleep on the operated side"};

const std::vector<std::string> kTimeframes = {
    "today", "this week", "after two days", "after the first week",
    "this month", "before my check-up"};

const std::vector<std::string> kOutOfScopeTopics = {
    "persistent lower back pain",      "a sudden skin rash on my arms",
    "frequent migraine headaches",     "stomach cramps and vomiting",
    "a swollen ankle after a fall",    "chest tightness when climbing stairs",
    "trouble sleeping through the night", "a sore throat and mild fever",
    "numbness in my left hand",        "heart palpitations in the evening"};

const std::vector<std::string> kAcks = {
    "Sure.", "Of course.", "I understand your concern.", "Thanks for asking.",
    "That's a good question."};

const std::vector<std::string> kFollowUps = {
    "Is there anything else I can help you with?", "Does that answer your question?",
    "Would you like more detail on any of this?"};

const std::string kRefusal =
    "I'm sorry, I can only help with questions about your cataract surgery recovery.";

struct Plan {
  dataset::Record record;
  std::vector<std::string> sentences;
  std::vector<std::string> acks, questions, informative;
  std::vector<bool> grounded;  // aligned with informative
  bool refused = false;
  bool cr_relevant = false;
};

std::string guidance_sentence(std::size_t i) {
  static const std::vector<std::string> kGuidance = {
      "Avoid getting water in your operated eye for the first week after surgery.",
      "Use the prescribed eye drops four times a day for two weeks.",
      "Mild grittiness and light sensitivity are common in the first days.",
      "Do not rub or press on the operated eye.",
      "You can resume light activities such as walking after a day or two.",
      "Avoid strenuous exercise and heavy lifting for the first week.",
      "Wear the protective shield at night for the first five nights.",
      "Contact the clinic immediately if you notice worsening pain or vision loss.",
      "Most patients can return to reading and television within a couple of days.",
      "Do not drive until you meet the legal eyesight standard."};
  return kGuidance[i % kGuidance.size()];
}

std::string informative_sentence(std::size_t i) {
  static const std::vector<std::string> kAdvice = {
      "You should keep the operated eye dry for the first week.",
      "It is fine to continue your usual eye drop schedule.",
      "Light activity is safe once you feel comfortable.",
      "Mild irritation at this stage is expected and usually settles.",
      "You should wear the protective shield while sleeping this week.",
      "Avoid dusty environments until your follow-up visit.",
      "A gritty feeling in the eye is normal in the first few days.",
      "You can shower as long as you keep water out of the eye.",
      "Heavy lifting should wait until after your first check-up.",
      "Your vision may stay a little blurry while the eye settles."};
  return kAdvice[i % kAdvice.size()];
}

Plan make_plan(std::size_t i) {
  Plan plan;
  dataset::QacTriplet& t = plan.record.triplet;
  const bool in_scope = i < 87;

  char id[16];
  std::snprintf(id, sizeof(id), "q%03zu", i + 1);
  t.id = id;
  t.scope = in_scope ? dataset::Scope::InScope : dataset::Scope::OutOfScope;
  if (in_scope) {
    static const std::vector<std::string> kModels = {"palm-2", "mistral-7b", "llama-3-8b"};
    t.generator_model = kModels[i % 3];
    t.question = "Can I " + kActivities[i % kActivities.size()] + " " +
                 kTimeframes[(i / kActivities.size()) % kTimeframes.size()] +
                 " after my cataract operation?";
  } else {
    static const std::vector<std::string> kModels = {"palm-2", "llama-3-8b"};
    t.generator_model = kModels[i % 2];
    t.question = "What should I do about " + kOutOfScopeTopics[i % kOutOfScopeTopics.size()] +
                 " (case " + std::to_string(i) + ")?";
  }

  std::size_t n_chunks = 1 + (i % 3);
  for (std::size_t c = 0; c < n_chunks; ++c) {
    t.context_chunks.push_back(guidance_sentence(i + c * 3) + " " +
                               guidance_sentence(i + c * 3 + 1));
  }

  if (in_scope) {
    plan.refused = (i % 11 == 10);  // occasional wrong refusal
    plan.cr_relevant = (i % 9 != 8);
  } else {
    plan.refused = (i % 7 != 6);  // occasional wrong answer
    plan.cr_relevant = (i % 5 == 4);
  }

  if (plan.refused) {
    plan.acks.push_back(kRefusal);
    plan.questions.push_back(kFollowUps[i % kFollowUps.size()]);
  } else {
    switch (i % 5) {
      case 0:
        plan.acks.push_back(kAcks[i % kAcks.size()]);
        plan.informative = {informative_sentence(i), informative_sentence(i + 1)};
        plan.grounded = {true, true};
        plan.questions.push_back(kFollowUps[i % kFollowUps.size()]);
        break;
      case 1:
        plan.informative = {informative_sentence(i), informative_sentence(i + 2),
                            informative_sentence(i + 4)};
        plan.grounded = {true, false, true};
        break;
      case 2:
        plan.acks.push_back(kAcks[i % kAcks.size()]);
        plan.informative = {informative_sentence(i + 1)};
        plan.grounded = {false};
        break;
      case 3:
        plan.informative = {informative_sentence(i), informative_sentence(i + 3)};
        plan.grounded = {true, true};
        plan.questions.push_back(kFollowUps[(i + 1) % kFollowUps.size()]);
        break;
      default:
        plan.acks.push_back(kAcks[(i + 2) % kAcks.size()]);
        plan.informative = {informative_sentence(i + 5)};
        plan.grounded = {true};
        break;
    }
  }

  std::string answer;
  auto append = [&answer](const std::string& s) {
    if (!answer.empty()) answer += " ";
    answer += s;
  };
  for (const auto& s : plan.acks) append(s);
  for (const auto& s : plan.informative) append(s);
  for (const auto& s : plan.questions) append(s);
  t.answer = answer;
  plan.sentences = judge::split_sentences(answer);

  // Human ratings mirror the scripted outcomes (unique-QAC shape).
  dataset::HumanRatings ratings;
  ratings.ra_human = plan.refused;
  ratings.cr_human = plan.cr_relevant;
  if (!plan.informative.empty()) {
    int grounded = 0;
    for (bool g : plan.grounded) grounded += g ? 1 : 0;
    ratings.cf_human = static_cast<double>(grounded) /
                       static_cast<double>(plan.informative.size());
    ratings.perceived_faithfulness = *ratings.cf_human >= 0.5;
  }
  plan.record.human_ratings = ratings;
  return plan;
}

std::string categories_reply(const Plan& plan) {
  json reply = {{"ACKNOWLEDGEMENTS", plan.acks},
                {"QUESTIONS", plan.questions},
                {"CONTAINING_INFORMATION", plan.informative}};
  return "categories: " + reply.dump(2);
}

std::string grounding_reply(const Plan& plan) {
  std::string reply;
  for (std::size_t k = 0; k < plan.informative.size(); ++k) {
    reply += std::to_string(k + 1) + ". " + plan.informative[k] + "\n";
    if (plan.grounded[k]) {
      reply += "Explanation: The context gives this advice directly.\n";
      reply += "Verdict: Yes.\n\n";
    } else {
      reply += "Explanation: The context does not mention this point.\n";
      reply += "Verdict: No.\n\n";
    }
  }
  return reply;
}

std::string refusal_reply(const Plan& plan) {
  std::string reply;
  if (plan.refused) {
    reply += "Parts not addressed: The doctor declined to discuss the question.\n";
    reply += "Parts addressed: None.\n";
    reply += "Summary: The doctor refused to engage with the concern.\n";
    reply += "Output: True\n";
  } else {
    reply += "Parts not addressed: None.\n";
    reply += "Parts addressed: The doctor gave direct advice on the question.\n";
    reply += "Summary: The doctor attempted to address the concern.\n";
    reply += "Output: False\n";
  }
  return reply;
}

std::string cr_reply(const Plan& plan) {
  if (plan.cr_relevant) {
    return "The information covers the topic the patient is asking about. [[Yes]]";
  }
  return "The information does not relate to the patient's question. [[No]]";
}

}  // namespace

int main(int argc, char** argv) {
  std::string out_dir = argc > 1 ? argv[1] : "fixtures/unique132";
  fs::create_directories(out_dir);

  judge::PromptSet prompts;
  std::ofstream dataset_file(fs::path(out_dir) / "dataset.jsonl", std::ios::binary);
  std::ofstream scripted_file(fs::path(out_dir) / "scripted.jsonl", std::ios::binary);
  if (!dataset_file || !scripted_file) {
    std::cerr << "cannot open output files under " << out_dir << "\n";
    return 1;
  }

  auto emit = [&scripted_file, &prompts](judge::TemplateId id, const judge::Bindings& b,
                                         const std::string& response) {
    std::string prompt = prompts.render(id, b);
    json line = {{"template", judge::to_string(id)},
                 {"key", judge::exchange_key(id, prompt)},
                 {"response", response}};
    scripted_file << line.dump() << "\n";
  };

  for (std::size_t i = 0; i < 132; ++i) {
    Plan plan = make_plan(i);
    dataset_file << dataset::record_to_json(plan.record).dump() << "\n";

    const auto& t = plan.record.triplet;
    emit(judge::TemplateId::SentenceCategories,
         {{"statements", json(plan.sentences).dump()}}, categories_reply(plan));
    if (!plan.informative.empty()) {
      emit(judge::TemplateId::GroundingVerdicts,
           {{"question", t.question},
            {"context", t.joined_context()},
            {"formatted_statements", judge::format_statements(plan.informative)}},
           grounding_reply(plan));
    }
    emit(judge::TemplateId::RefusalEval,
         {{"question", t.question}, {"answer", t.answer}}, refusal_reply(plan));
    emit(judge::TemplateId::ContextRelevanceEval,
         {{"question", t.question}, {"context", t.joined_context()}}, cr_reply(plan));
  }

  std::cout << "wrote " << out_dir << "/dataset.jsonl and " << out_dir
            << "/scripted.jsonl\n";
  return 0;
}
