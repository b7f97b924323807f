#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "json.hpp"

namespace umcqa::test {

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("umcqa-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_race_file(const std::filesystem::path& path, const std::string& id,
                            int questions) {
  nlohmann::json doc;
  doc["id"] = id;
  doc["article"] = "Tom lives in a small town. He likes apples and his dog, Max.";
  for (int q = 0; q < questions; ++q) {
    doc["questions"].push_back("What does Tom like " + std::to_string(q) + "?");
    doc["options"].push_back({"apples", "pears", "cars", "rain"});
    doc["answers"].push_back(std::string(1, static_cast<char>('A' + q % 4)));
  }
  std::ofstream(path) << doc.dump();
}

// MCTest-style files: each story has one "one:" question followed by three
// "multiple:" ones; answers cycle A, B, C, D.
inline void write_mctest(const std::filesystem::path& stories,
                         const std::filesystem::path& answers, int count) {
  std::ofstream s(stories);
  std::ofstream a(answers);
  for (int i = 0; i < count; ++i) {
    s << "mc500.dev." << i << "\tAuthor: x;Work Time(s): 1\t"
      << "Ann ate a red apple.\\newline\\newlineThen she went home to see Bob.";
    const char* qs[] = {"one: What did Ann eat?", "multiple: Where did Ann go after eating?",
                        "multiple: Who did Ann see?", "multiple: Why did Ann go home?"};
    for (const char* q : qs) s << '\t' << q << "\tan apple\thome\tBob\tto see Bob";
    s << '\n';
    a << "A\tB\tC\tD\n";
  }
}

}  // namespace umcqa::test
