#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace umcqa {

using TokenSeq = std::vector<std::string>;

enum class Subset { RaceM, RaceH, Mc500One, Mc500Multi, Other };
enum class QuestionType { Why, What, Where, When, Who, How, Other };
enum class Split { Train, Dev, Test };

std::string_view to_string(Subset s);
std::string_view to_string(QuestionType q);
std::string_view to_string(Split s);
Subset parse_subset(std::string_view s);
QuestionType parse_question_type(std::string_view s);
Split parse_split(std::string_view s);

inline constexpr QuestionType kAllQuestionTypes[] = {
    QuestionType::Why, QuestionType::What, QuestionType::Where, QuestionType::When,
    QuestionType::Who, QuestionType::How,  QuestionType::Other};

struct Example {
  std::string id;
  std::string passage_raw;
  TokenSeq passage;
  std::string question_raw;
  TokenSeq question;
  std::vector<std::string> choices_raw;
  std::vector<TokenSeq> choices;
  std::optional<int> gold;
  Subset subset = Subset::Other;
  QuestionType qtype = QuestionType::Other;

  std::size_t num_choices() const { return choices.size(); }
  bool operator==(const Example&) const = default;
};

// An Example with the gold label removed. Training code only ever sees these.
struct UnlabeledExample {
  std::string id;
  TokenSeq passage;
  TokenSeq question;
  std::vector<std::string> choices_raw;
  std::vector<TokenSeq> choices;

  std::size_t num_choices() const { return choices.size(); }
};

UnlabeledExample strip_gold(const Example& ex);
std::vector<UnlabeledExample> strip_gold(const std::vector<Example>& examples);

struct ExampleSet {
  std::string name;
  Split split = Split::Train;
  std::vector<Example> examples;

  bool operator==(const ExampleSet&) const = default;
};

/// Lowercases ASCII letters and splits on every character that is not an
/// ASCII letter or digit. Non-ASCII bytes act as separators.
TokenSeq tokenize(std::string_view text);

/// Earliest whole-token occurrence of why/what/where/when/who/how, else Other.
QuestionType classify_question_type(std::string_view question_raw);

/// Builds an Example from raw text, tokenizing and classifying once.
Example make_example(std::string id, std::string passage_raw, std::string question_raw,
                     std::vector<std::string> choices_raw, std::optional<int> gold,
                     Subset subset);

/// Reads `<root>/<split>/{middle,high}/*.txt`. A missing split directory
/// yields an empty set; a missing root is an error.
ExampleSet load_race(const std::filesystem::path& root, Split split);

/// Reads an MCTest tab-separated story file and its parallel answer file.
ExampleSet load_mctest(const std::filesystem::path& story_file,
                       const std::filesystem::path& answer_file, Split split = Split::Dev);

// Throws if ids repeat, n < 2, or a gold index is out of range.
void validate(const ExampleSet& set);

}  // namespace umcqa
