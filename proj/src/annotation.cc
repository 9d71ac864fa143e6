// Copyright 2026 The biasprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "biasprobe/annotation.h"

#include "biasprobe/errors.h"
#include "biasprobe/io.h"
#include "biasprobe/text.h"

namespace biasprobe {
namespace {

struct WordClass {
  const char* pos;
  const char* dep;  // nullptr: leave the dependency table alone
  std::vector<const char*> words;
};

// Penn Treebank tags for closed classes and a few frequent open-class words.
const std::vector<WordClass>& BuiltinClasses() {
  static const std::vector<WordClass> kClasses = {
      {"PRP", "nsubj", {"i", "you", "he", "she", "it", "we", "they"}},
      {"PRP", "dobj", {"me", "him", "us", "them"}},
      {"PRP", "dobj",
       {"myself", "yourself", "himself", "herself", "itself", "ourselves",
        "themselves"}},
      {"PRP$", "poss", {"my", "your", "his", "her", "its", "our", "their"}},
      {"DT", "det",
       {"the", "a", "an", "this", "that", "these", "those", "every", "each",
        "some", "any", "no", "all", "both", "another", "either", "neither"}},
      {"IN", "prep",
       {"of", "in", "on", "at", "by", "for", "with", "from", "about", "into",
        "over", "after", "before", "under", "between", "through", "during",
        "without", "within", "against", "among", "than", "upon", "toward",
        "towards", "across", "behind", "near", "like", "as"}},
      {"IN", "mark",
       {"because", "since", "while", "although", "though", "if", "whether",
        "unless"}},
      {"TO", "aux", {"to"}},
      {"CC", "cc", {"and", "or", "but", "nor", "yet"}},
      {"MD", "aux",
       {"can", "could", "will", "would", "shall", "should", "may", "might",
        "must"}},
      {"VBZ", "aux", {"is", "has", "does"}},
      {"VBP", "aux", {"are", "am", "have", "do"}},
      {"VBD", "aux", {"was", "were", "had", "did"}},
      {"VB", "aux", {"be"}},
      {"VBN", "aux", {"been"}},
      {"VBG", "aux", {"being"}},
      {"RB", "neg", {"not", "n't", "never"}},
      {"RB", "advmod",
       {"very", "so", "too", "also", "just", "only", "always", "often",
        "still", "even", "really", "here", "there", "now", "then", "again",
        "quite", "almost", "already", "ever", "perhaps", "rather"}},
      {"WP", "nsubj", {"who", "what"}},
      {"WP", "dobj", {"whom"}},
      {"WP$", "poss", {"whose"}},
      {"WDT", "nsubj", {"which"}},
      {"WRB", "advmod", {"when", "where", "why", "how"}},
      {"CD", "nummod",
       {"one", "two", "three", "four", "five", "six", "seven", "eight",
        "nine", "ten", "hundred", "thousand", "million"}},
      {"VBZ", nullptr,
       {"seems", "makes", "loves", "likes", "says", "gets", "goes", "takes",
        "comes", "gives", "knows", "thinks", "wants", "looks"}},
      {"VBD", nullptr,
       {"made", "gave", "took", "saw", "said", "went", "came", "got", "knew",
        "thought", "told", "found", "left", "felt", "became", "began", "kept",
        "held", "brought", "wrote", "sat", "stood", "ran", "met", "won",
        "lost", "paid", "sent", "built", "spent", "heard", "meant", "sold"}},
      {"VBN", nullptr,
       {"seen", "done", "given", "taken", "known", "gone", "written",
        "shown", "born", "become"}},
      {"VB", nullptr,
       {"make", "take", "see", "go", "get", "know", "think", "tell", "find",
        "give", "recognise", "recognize", "laugh", "watch", "love", "want",
        "say", "come", "look", "help", "keep", "let", "put", "seem"}},
      {"VBP", nullptr, {"waste", "know", "think", "love"}},
      {"JJ", nullptr,
       {"good", "bad", "great", "new", "old", "special", "funny", "cute",
        "fat", "thin", "young", "happy", "sad", "beautiful", "hilarious",
        "terrible", "awful", "boring", "big", "small", "little", "other",
        "many", "few", "much", "white", "black", "brown", "british",
        "pakistani", "american", "asian", "african", "european", "indian",
        "chinese", "mexican", "arab", "jewish", "muslim", "christian", "gay",
        "straight", "lesbian", "trans", "disabled", "masculine", "feminine",
        "manly", "tall", "short", "rich", "poor", "strong", "weak", "nice",
        "real", "same", "whole", "first", "last", "long", "high", "low"}},
      {"JJR", nullptr, {"better", "worse", "more", "less"}},
      {"JJS", nullptr, {"best", "worst", "most", "least", "greatest"}},
      {"NNS", nullptr,
       {"people", "men", "women", "children", "persons", "folks", "guys",
        "girls", "boys", "moviegoers", "films", "movies"}},
      {"NN", nullptr,
       {"man", "woman", "boy", "girl", "person", "child", "film", "movie",
        "world", "heaven", "dog", "actor", "actress", "time", "show",
        "story", "performance", "review", "case", "court", "applicant"}},
  };
  return kClasses;
}

std::string PunctuationTag(char c) {
  switch (c) {
    case '.':
    case '!':
    case '?':
      return ".";
    case ',':
      return ",";
    case ':':
    case ';':
    case '-':
      return ":";
    case '"':
    case '\'':
    case '`':
      return "''";
    case '(':
    case '[':
    case '{':
      return "-LRB-";
    case ')':
    case ']':
    case '}':
      return "-RRB-";
    case '$':
      return "$";
    case '#':
      return "#";
    default:
      return "SYM";
  }
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool AllDigits(std::string_view s) {
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return !s.empty();
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

std::vector<std::string> SentenceAnnotation::PosSequence() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.pos);
  return out;
}

std::vector<std::string> SentenceAnnotation::DepSequence() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.dep);
  return out;
}

SentenceAnnotation Annotate(const Annotator& annotator,
                            std::string_view sentence) {
  if (Trim(sentence).empty()) {
    throw PreconditionError("cannot annotate an empty sentence");
  }
  return annotator.Annotate(sentence);
}

LexiconAnnotator LexiconAnnotator::Builtin() {
  LexiconAnnotator lexicon;
  for (const WordClass& cls : BuiltinClasses()) {
    for (const char* word : cls.words) {
      lexicon.SetPos(word, cls.pos);
      if (cls.dep) lexicon.SetDep(word, cls.dep);
    }
  }
  return lexicon;
}

void LexiconAnnotator::SetPos(std::string_view word, std::string pos) {
  pos_[AsciiLower(word)] = std::move(pos);
}

void LexiconAnnotator::SetDep(std::string_view word, std::string dep) {
  dep_[AsciiLower(word)] = std::move(dep);
}

void LexiconAnnotator::LoadLexicon(const std::filesystem::path& path) {
  const std::string content = ReadFile(path);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string::npos) eol = content.size();
    std::string_view line(content.data() + pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || Trim(line).front() == '#') continue;
    const auto fields = SplitTabs(line);
    if (fields.size() < 2 || fields.size() > 3 || Trim(fields[0]).empty() ||
        Trim(fields[1]).empty()) {
      throw ParseError(path.string(), line_no, "expected word<TAB>pos[<TAB>dep]");
    }
    SetPos(Trim(fields[0]), std::string(Trim(fields[1])));
    if (fields.size() == 3 && !Trim(fields[2]).empty()) {
      SetDep(Trim(fields[0]), std::string(Trim(fields[2])));
    }
  }
}

std::string LexiconAnnotator::TagWord(std::string_view word) const {
  const std::string key = AsciiLower(word);
  if (auto it = pos_.find(key); it != pos_.end()) return it->second;
  if (AllDigits(key)) return "CD";
  if (key.size() > 3 && EndsWith(key, "ly")) return "RB";
  if (key.size() > 4 && EndsWith(key, "ing")) return "VBG";
  if (key.size() > 3 && EndsWith(key, "ed")) return "VBD";
  return "NN";
}

std::string LexiconAnnotator::DepWord(std::string_view word) const {
  if (auto it = dep_.find(AsciiLower(word)); it != dep_.end()) return it->second;
  return "dep";
}

SentenceAnnotation LexiconAnnotator::Annotate(std::string_view sentence) const {
  SentenceAnnotation out;
  for (const Token& token : Tokenize(sentence)) {
    if (token.is_word) {
      out.tokens.push_back(
          {std::string(token.text), TagWord(token.text), DepWord(token.text)});
    } else {
      out.tokens.push_back(
          {std::string(token.text), PunctuationTag(token.text[0]), "punct"});
    }
  }
  return out;
}

SentenceAnnotation ConlluAnnotator::Annotate(std::string_view sentence) const {
  if (auto it = sentences_.find(std::string(sentence)); it != sentences_.end()) {
    return it->second;
  }
  throw AnnotationError(std::string(sentence),
                        "no CoNLL-U annotation for sentence \"" +
                            std::string(sentence) + "\"");
}

std::unique_ptr<ConlluAnnotator> ParseConllu(std::string_view content,
                                             const std::string& origin) {
  std::unordered_map<std::string, SentenceAnnotation> sentences;
  SentenceAnnotation current;
  std::string text;
  bool has_text = false;
  std::size_t sentence_line = 0;

  auto flush = [&]() {
    if (current.tokens.empty()) {
      has_text = false;
      text.clear();
      sentence_line = 0;
      return;
    }
    if (!has_text) {
      text.clear();
      for (const auto& t : current.tokens) {
        if (!text.empty()) text += ' ';
        text += t.token;
      }
    }
    auto [it, inserted] = sentences.emplace(text, current);
    if (!inserted && !(it->second == current)) {
      throw ParseError(origin, sentence_line,
                       "sentence \"" + text +
                           "\" annotated twice with different tags");
    }
    current.tokens.clear();
    text.clear();
    has_text = false;
    sentence_line = 0;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (Trim(line).empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') {
      constexpr std::string_view kText = "# text = ";
      if (line.substr(0, kText.size()) == kText) {
        if (!current.tokens.empty()) flush();
        text = std::string(line.substr(kText.size()));
        has_text = true;
        sentence_line = line_no;
      }
      continue;
    }

    const auto fields = SplitTabs(line);
    if (fields.size() != 10) {
      throw ParseError(origin, line_no,
                       "expected 10 tab-separated columns, got " +
                           std::to_string(fields.size()));
    }
    const std::string_view id = fields[0];
    if (!AllDigits(id)) {
      const auto sep = id.find_first_of("-.");
      if (sep != std::string_view::npos && sep > 0 &&
          AllDigits(id.substr(0, sep)) && AllDigits(id.substr(sep + 1))) {
        continue;  // multiword range or empty node
      }
      throw ParseError(origin, line_no,
                       "ID column is not an integer: \"" + std::string(id) + "\"");
    }
    if (current.tokens.empty() && sentence_line == 0) sentence_line = line_no;
    const std::string_view form = fields[1];
    const std::string_view upos = fields[3];
    const std::string_view xpos = fields[4];
    const std::string_view deprel = fields[7];
    const std::string_view tag = xpos == "_" ? upos : xpos;
    if (form.empty() || tag.empty() || tag == "_" || deprel.empty() ||
        deprel == "_") {
      throw ParseError(origin, line_no, "token line lacks FORM, POS or DEPREL");
    }
    current.tokens.push_back(
        {std::string(form), std::string(tag), std::string(deprel)});
  }
  flush();
  return std::make_unique<ConlluAnnotator>(std::move(sentences));
}

std::unique_ptr<ConlluAnnotator> LoadConlluAnnotations(
    const std::filesystem::path& path) {
  return ParseConllu(ReadFile(path), path.string());
}

}  // namespace biasprobe
