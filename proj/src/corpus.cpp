#include "umcqa/corpus.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "umcqa/error.hpp"

namespace umcqa {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool is_token_char(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

char ascii_lower(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      cols.emplace_back(line.substr(start));
      break;
    }
    cols.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return cols;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

int answer_index(std::string_view letter, const std::string& where) {
  if (letter.size() == 1 && letter[0] >= 'A' && letter[0] <= 'D') return letter[0] - 'A';
  throw Error(where + ": answer letter '" + std::string(letter) + "' outside A..D");
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

void load_race_file(const fs::path& file, Subset subset, std::vector<Example>& out) {
  json doc;
  try {
    doc = json::parse(read_file(file));
  } catch (const json::exception& e) {
    throw Error(file.string() + ": malformed JSON: " + e.what());
  }
  try {
    const auto& article = doc.at("article").get_ref<const std::string&>();
    const auto& questions = doc.at("questions");
    const auto& options = doc.at("options");
    const auto& answers = doc.at("answers");
    if (!questions.is_array() || questions.size() != options.size() ||
        questions.size() != answers.size()) {
      throw Error(file.string() + ": questions/options/answers lengths differ");
    }
    std::string file_id;
    if (doc.contains("id") && doc["id"].is_string()) {
      file_id = doc["id"].get<std::string>();
      if (file_id.ends_with(".txt")) file_id.resize(file_id.size() - 4);
    } else {
      file_id = std::string(subset == Subset::RaceM ? "middle" : "high") + file.stem().string();
    }
    for (std::size_t q = 0; q < questions.size(); ++q) {
      auto choices = options[q].get<std::vector<std::string>>();
      if (choices.size() != 4) {
        throw Error(file.string() + ": question " + std::to_string(q) + " has " +
                    std::to_string(choices.size()) + " options, expected 4");
      }
      int gold = answer_index(answers[q].get<std::string>(), file.string());
      out.push_back(make_example(file_id + "-q" + std::to_string(q), article,
                                 questions[q].get<std::string>(), std::move(choices), gold,
                                 subset));
    }
  } catch (const json::exception& e) {
    throw Error(file.string() + ": malformed RACE document: " + e.what());
  }
}

}  // namespace

std::string_view to_string(Subset s) {
  switch (s) {
    case Subset::RaceM: return "RaceM";
    case Subset::RaceH: return "RaceH";
    case Subset::Mc500One: return "Mc500One";
    case Subset::Mc500Multi: return "Mc500Multi";
    case Subset::Other: return "Other";
  }
  return "Other";
}

std::string_view to_string(QuestionType q) {
  switch (q) {
    case QuestionType::Why: return "Why";
    case QuestionType::What: return "What";
    case QuestionType::Where: return "Where";
    case QuestionType::When: return "When";
    case QuestionType::Who: return "Who";
    case QuestionType::How: return "How";
    case QuestionType::Other: return "Other";
  }
  return "Other";
}

std::string_view to_string(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    case Split::Test: return "test";
  }
  return "train";
}

Subset parse_subset(std::string_view s) {
  for (auto v : {Subset::RaceM, Subset::RaceH, Subset::Mc500One, Subset::Mc500Multi,
                 Subset::Other}) {
    if (to_string(v) == s) return v;
  }
  throw Error("unknown subset '" + std::string(s) + "'");
}

QuestionType parse_question_type(std::string_view s) {
  for (auto v : kAllQuestionTypes) {
    if (to_string(v) == s) return v;
  }
  throw Error("unknown question type '" + std::string(s) + "'");
}

Split parse_split(std::string_view s) {
  for (auto v : {Split::Train, Split::Dev, Split::Test}) {
    if (to_string(v) == s) return v;
  }
  throw Error("unknown split '" + std::string(s) + "'");
}

TokenSeq tokenize(std::string_view text) {
  TokenSeq tokens;
  std::string cur;
  for (unsigned char c : text) {
    if (is_token_char(c)) {
      cur.push_back(ascii_lower(c));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

QuestionType classify_question_type(std::string_view question_raw) {
  static constexpr std::array<std::pair<std::string_view, QuestionType>, 6> kKeywords{{
      {"why", QuestionType::Why},
      {"what", QuestionType::What},
      {"where", QuestionType::Where},
      {"when", QuestionType::When},
      {"who", QuestionType::Who},
      {"how", QuestionType::How},
  }};
  for (const auto& tok : tokenize(question_raw)) {
    for (const auto& [word, type] : kKeywords) {
      if (tok == word) return type;
    }
  }
  return QuestionType::Other;
}

Example make_example(std::string id, std::string passage_raw, std::string question_raw,
                     std::vector<std::string> choices_raw, std::optional<int> gold,
                     Subset subset) {
  Example ex;
  ex.id = std::move(id);
  ex.passage = tokenize(passage_raw);
  ex.passage_raw = std::move(passage_raw);
  ex.question = tokenize(question_raw);
  ex.qtype = classify_question_type(question_raw);
  ex.question_raw = std::move(question_raw);
  for (const auto& c : choices_raw) ex.choices.push_back(tokenize(c));
  ex.choices_raw = std::move(choices_raw);
  ex.gold = gold;
  ex.subset = subset;
  return ex;
}

UnlabeledExample strip_gold(const Example& ex) {
  return UnlabeledExample{ex.id, ex.passage, ex.question, ex.choices_raw, ex.choices};
}

std::vector<UnlabeledExample> strip_gold(const std::vector<Example>& examples) {
  std::vector<UnlabeledExample> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) out.push_back(strip_gold(ex));
  return out;
}

ExampleSet load_race(const fs::path& root, Split split) {
  if (!fs::is_directory(root)) throw Error("RACE root is not a directory: " + root.string());
  ExampleSet set;
  set.name = "race";
  set.split = split;
  const fs::path split_dir = root / std::string(to_string(split));
  for (auto [dir, subset] : {std::pair{"middle", Subset::RaceM}, std::pair{"high", Subset::RaceH}}) {
    const fs::path sub = split_dir / dir;
    if (!fs::is_directory(sub)) continue;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(sub)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) load_race_file(f, subset, set.examples);
  }
  validate(set);
  return set;
}

ExampleSet load_mctest(const fs::path& story_file, const fs::path& answer_file, Split split) {
  std::ifstream stories(story_file);
  if (!stories) throw Error("cannot open " + story_file.string());
  std::ifstream answers(answer_file);
  if (!answers) throw Error("cannot open " + answer_file.string());

  ExampleSet set;
  set.name = story_file.stem().string();
  set.split = split;

  constexpr std::size_t kQuestions = 4;
  constexpr std::size_t kColumns = 3 + kQuestions * 5;
  std::string line;
  std::string answer_line;
  std::size_t row = 0;
  while (std::getline(stories, line)) {
    strip_cr(line);
    ++row;
    if (line.empty()) continue;
    auto cols = split_tabs(line);
    const std::string where = story_file.string() + " row " + std::to_string(row);
    if (cols.size() != kColumns) {
      throw Error(where + ": expected " + std::to_string(kColumns) + " columns, got " +
                  std::to_string(cols.size()));
    }
    do {
      if (!std::getline(answers, answer_line)) {
        throw Error(answer_file.string() + ": fewer answer lines than stories (story " + where + ")");
      }
      strip_cr(answer_line);
    } while (answer_line.empty());
    auto letters = split_tabs(answer_line);
    if (letters.size() != kQuestions) {
      throw Error(answer_file.string() + ": expected 4 answers for " + where);
    }

    std::string story = cols[2];
    replace_all(story, "\\newline", " ");
    for (std::size_t q = 0; q < kQuestions; ++q) {
      const std::size_t base = 3 + q * 5;
      std::string question = cols[base];
      Subset subset = Subset::Other;
      if (question.starts_with("one:")) {
        subset = Subset::Mc500One;
        question.erase(0, 4);
      } else if (question.starts_with("multiple:")) {
        subset = Subset::Mc500Multi;
        question.erase(0, 9);
      }
      if (!question.empty() && question.front() == ' ') question.erase(0, 1);
      std::vector<std::string> choices(cols.begin() + base + 1, cols.begin() + base + 5);
      set.examples.push_back(make_example(cols[0] + "-q" + std::to_string(q), story,
                                          std::move(question), std::move(choices),
                                          answer_index(letters[q], answer_file.string()), subset));
    }
  }
  while (std::getline(answers, answer_line)) {
    strip_cr(answer_line);
    if (!answer_line.empty()) {
      throw Error(answer_file.string() + ": more answer lines than stories in " +
                  story_file.string());
    }
  }
  validate(set);
  return set;
}

void validate(const ExampleSet& set) {
  std::unordered_set<std::string> ids;
  for (const auto& ex : set.examples) {
    if (!ids.insert(ex.id).second) throw Error("duplicate example id " + ex.id);
    if (ex.choices.size() < 2 || ex.choices.size() != ex.choices_raw.size()) {
      throw Error("example " + ex.id + " needs at least 2 consistent choices");
    }
    if (ex.gold && (*ex.gold < 0 || *ex.gold >= static_cast<int>(ex.choices.size()))) {
      throw Error("example " + ex.id + " has gold index out of range");
    }
  }
}

}  // namespace umcqa
