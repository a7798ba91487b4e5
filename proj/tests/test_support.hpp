#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "astrid/dataset.hpp"
#include "astrid/judge.hpp"

namespace test_support {

inline std::string source_dir() { return ASTRID_SOURCE_DIR; }

inline std::string golden_path(const std::string& name) {
  return source_dir() + "/tests/golden/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(in), "missing file: " << path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Scratch directory unique per test binary run.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("astrid_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string str() const { return path_.string(); }
  std::filesystem::path path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Judge wrapper counting wire calls (cache transparency checks).
class CountingJudge : public astrid::judge::JudgeClient {
 public:
  explicit CountingJudge(astrid::judge::JudgeClient& inner) : inner_(inner) {}
  std::string complete(astrid::judge::TemplateId id, const std::string& prompt) override {
    ++calls_;
    return inner_.complete(id, prompt);
  }
  int calls() const { return calls_; }

 private:
  astrid::judge::JudgeClient& inner_;
  int calls_ = 0;
};

inline astrid::dataset::Record make_record(
    const std::string& id, const std::string& question, const std::string& answer,
    std::vector<std::string> chunks,
    std::optional<astrid::dataset::Scope> scope = astrid::dataset::Scope::InScope) {
  astrid::dataset::Record record;
  record.triplet.id = id;
  record.triplet.question = question;
  record.triplet.answer = answer;
  record.triplet.context_chunks = std::move(chunks);
  record.triplet.scope = scope;
  return record;
}

}  // namespace test_support
