// Copyright 2026 The multiequi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "multiequi/scan.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <numeric>
#include <sstream>
#include <utility>

namespace multiequi::scan {
namespace {

constexpr std::array<std::string_view, 4> kPrimitiveNames = {"walk", "look", "run", "jump"};
constexpr std::array<std::string_view, 4> kDirectionNames = {"left", "right", "up", "down"};
constexpr std::array<std::string_view, 8> kActionNames = {"WALK",  "LOOK",  "RUN",   "JUMP",
                                                          "LTURN", "RTURN", "UTURN", "DTURN"};

template <std::size_t N>
std::optional<std::uint8_t> lookup(const std::array<std::string_view, N>& names,
                                   std::string_view word) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == word) return static_cast<std::uint8_t>(i);
  }
  return std::nullopt;
}

Action primitive_action(Primitive p) { return static_cast<Action>(static_cast<int>(p)); }
Action turn_action(Direction d) { return static_cast<Action>(4 + static_cast<int>(d)); }

std::vector<std::string_view> split_words(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] != ' ') ++pos;
    if (pos > start) words.push_back(text.substr(start, pos - start));
  }
  return words;
}

std::string phrase_to_string(const VerbPhrase& v) {
  const std::string head(v.verb ? name(*v.verb) : "turn");
  const std::string dir(name(v.direction));
  switch (v.kind) {
    case VerbPhrase::Kind::opposite:
      return head + " opposite " + dir;
    case VerbPhrase::Kind::around:
      return head + " around " + dir;
    case VerbPhrase::Kind::directed:
      return head + " " + dir;
    case VerbPhrase::Kind::bare:
      return head;
  }
  return head;
}

std::string sentence_to_string(const Sentence& s) {
  std::string out = phrase_to_string(s.phrase);
  if (s.repeat == Repeat::twice) out += " twice";
  if (s.repeat == Repeat::thrice) out += " thrice";
  return out;
}

Sentence parse_sentence(std::span<const std::string_view> words, std::string_view text) {
  auto fail = [&](const char* why) {
    return ParseError("cannot parse command '" + std::string(text) + "': " + why);
  };
  if (words.empty()) throw fail("empty phrase");
  Sentence s;
  if (words.back() == "twice" || words.back() == "thrice") {
    s.repeat = words.back() == "twice" ? Repeat::twice : Repeat::thrice;
    words = words.first(words.size() - 1);
  }
  if (words.empty() || words.size() > 3) throw fail("bad phrase length");

  std::optional<Primitive> verb;
  if (words[0] != "turn") {
    auto p = lookup(kPrimitiveNames, words[0]);
    if (!p) throw fail("unknown verb");
    verb = static_cast<Primitive>(*p);
  }
  s.phrase.verb = verb;
  if (words.size() == 1) {
    if (!verb) throw fail("'turn' needs a direction");
    s.phrase.kind = VerbPhrase::Kind::bare;
    return s;
  }
  auto dir = lookup(kDirectionNames, words.back());
  if (!dir) throw fail("unknown direction");
  s.phrase.direction = static_cast<Direction>(*dir);
  if (words.size() == 2) {
    s.phrase.kind = VerbPhrase::Kind::directed;
  } else if (words[1] == "opposite") {
    s.phrase.kind = VerbPhrase::Kind::opposite;
  } else if (words[1] == "around") {
    s.phrase.kind = VerbPhrase::Kind::around;
  } else {
    throw fail("expected 'opposite' or 'around'");
  }
  return s;
}

void append_phrase(const VerbPhrase& v, ActionSeq& out) {
  const Action turn = turn_action(v.direction);
  switch (v.kind) {
    case VerbPhrase::Kind::bare:
      out.push_back(primitive_action(*v.verb));
      return;
    case VerbPhrase::Kind::directed:
      out.push_back(turn);
      if (v.verb) out.push_back(primitive_action(*v.verb));
      return;
    case VerbPhrase::Kind::opposite:
      out.push_back(turn);
      out.push_back(turn);
      if (v.verb) out.push_back(primitive_action(*v.verb));
      return;
    case VerbPhrase::Kind::around:
      for (int k = 0; k < 4; ++k) {
        out.push_back(turn);
        if (v.verb) out.push_back(primitive_action(*v.verb));
      }
      return;
  }
}

void append_sentence(const Sentence& s, ActionSeq& out) {
  const int times = s.repeat == Repeat::once ? 1 : s.repeat == Repeat::twice ? 2 : 3;
  for (int k = 0; k < times; ++k) append_phrase(s.phrase, out);
}

VocabPermutation identity_permutation() {
  VocabPermutation p{};
  for (std::uint8_t i = 0; i < 4; ++i) p.primitive[i] = p.direction[i] = i;
  for (std::uint8_t i = 0; i < 8; ++i) p.action[i] = i;
  return p;
}

// (a . b)(w) = a(b(w))
VocabPermutation compose(const VocabPermutation& a, const VocabPermutation& b) {
  VocabPermutation out{};
  for (int i = 0; i < 4; ++i) {
    out.primitive[i] = a.primitive[b.primitive[i]];
    out.direction[i] = a.direction[b.direction[i]];
  }
  for (int i = 0; i < 8; ++i) out.action[i] = a.action[b.action[i]];
  return out;
}

VocabPermutation as_permutation(const VocabSwap& sw) {
  VocabPermutation p{};
  for (std::uint8_t i = 0; i < 4; ++i) {
    p.primitive[i] = static_cast<std::uint8_t>(sw.apply(static_cast<Primitive>(i)));
    p.direction[i] = static_cast<std::uint8_t>(sw.apply(static_cast<Direction>(i)));
  }
  for (std::uint8_t i = 0; i < 8; ++i) {
    p.action[i] = static_cast<std::uint8_t>(sw.apply(static_cast<Action>(i)));
  }
  return p;
}

Sentence apply_sentence(const VocabPermutation& sigma, Sentence s) {
  if (s.phrase.verb) {
    s.phrase.verb = static_cast<Primitive>(sigma.primitive[static_cast<int>(*s.phrase.verb)]);
  }
  if (s.phrase.kind != VerbPhrase::Kind::bare) {
    s.phrase.direction =
        static_cast<Direction>(sigma.direction[static_cast<int>(s.phrase.direction)]);
  }
  return s;
}

bool has_word(const Sentence& s, Primitive p) { return s.phrase.verb == p; }
bool has_word(const Sentence& s, Direction d) {
  return s.phrase.kind != VerbPhrase::Kind::bare && s.phrase.direction == d;
}

template <class Word>
bool command_has(const Command& c, Word w) {
  return has_word(c.first, w) || (c.rest && has_word(c.rest->sentence, w));
}

bool is_bare_form(const Command& c) {
  if (c.rest || c.first.repeat != Repeat::once) return false;
  const VerbPhrase& v = c.first.phrase;
  if (v.kind == VerbPhrase::Kind::bare) return v.verb == Primitive::jump;
  return v.kind == VerbPhrase::Kind::directed && !v.verb &&
         (v.direction == Direction::left || v.direction == Direction::up);
}

}  // namespace

std::string_view name(Primitive p) { return kPrimitiveNames[static_cast<int>(p)]; }
std::string_view name(Direction d) { return kDirectionNames[static_cast<int>(d)]; }
std::string_view name(Action a) { return kActionNames[static_cast<int>(a)]; }

std::string to_string(const Command& c) {
  std::string out = sentence_to_string(c.first);
  if (c.rest) {
    out += c.rest->conjunction == Conjunction::and_ ? " and " : " after ";
    out += sentence_to_string(c.rest->sentence);
  }
  return out;
}

std::string to_string(const ActionSeq& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ' ';
    out += name(a[i]);
  }
  return out;
}

Command parse_command(std::string_view text) {
  const auto words = split_words(text);
  const std::span<const std::string_view> all(words);
  const auto conj = std::find_if(words.begin(), words.end(), [](std::string_view w) {
    return w == "and" || w == "after";
  });
  Command c;
  if (conj == words.end()) {
    c.first = parse_sentence(all, text);
    return c;
  }
  const auto at = static_cast<std::size_t>(conj - words.begin());
  c.first = parse_sentence(all.first(at), text);
  c.rest = Command::Tail{*conj == "and" ? Conjunction::and_ : Conjunction::after,
                         parse_sentence(all.subspan(at + 1), text)};
  return c;
}

ActionSeq parse_actions(std::string_view text) {
  ActionSeq out;
  for (auto w : split_words(text)) {
    auto a = lookup(kActionNames, w);
    if (!a) throw ParseError("unknown action token '" + std::string(w) + "'");
    out.push_back(static_cast<Action>(*a));
  }
  if (out.empty()) throw ParseError("empty action sequence");
  return out;
}

std::vector<Command> enumerate_commands(std::span<const Direction> directions) {
  std::vector<std::optional<Primitive>> heads(std::begin(kPrimitives), std::end(kPrimitives));
  heads.push_back(std::nullopt);  // turn

  std::vector<VerbPhrase> phrases;
  for (auto kind : {VerbPhrase::Kind::opposite, VerbPhrase::Kind::around,
                    VerbPhrase::Kind::directed}) {
    for (const auto& head : heads) {
      for (Direction d : directions) phrases.push_back({kind, head, d});
    }
  }
  for (Primitive p : kPrimitives) phrases.push_back({VerbPhrase::Kind::bare, p, Direction::left});

  std::vector<Sentence> sentences;
  for (auto rep : {Repeat::twice, Repeat::thrice, Repeat::once}) {
    for (const auto& v : phrases) sentences.push_back({v, rep});
  }

  std::vector<Command> out;
  out.reserve(2 * sentences.size() * sentences.size() + sentences.size());
  for (auto conj : {Conjunction::and_, Conjunction::after}) {
    for (const auto& s1 : sentences) {
      for (const auto& s2 : sentences) out.push_back({s1, Command::Tail{conj, s2}});
    }
  }
  for (const auto& s : sentences) out.push_back({s, std::nullopt});
  return out;
}

ActionSeq interpret(const Command& c) {
  ActionSeq out;
  if (!c.rest) {
    append_sentence(c.first, out);
  } else if (c.rest->conjunction == Conjunction::and_) {
    append_sentence(c.first, out);
    append_sentence(c.rest->sentence, out);
  } else {
    append_sentence(c.rest->sentence, out);
    append_sentence(c.first, out);
  }
  return out;
}

// ---------------------------------------------------------------------------

VocabSwap::VocabSwap(std::string_view word_a, std::string_view word_b, Action action_a,
                     Action action_b)
    : word_a_(word_a), word_b_(word_b), action_a_(action_a), action_b_(action_b) {
  const bool prims = lookup(kPrimitiveNames, word_a) && lookup(kPrimitiveNames, word_b);
  const bool dirs = lookup(kDirectionNames, word_a) && lookup(kDirectionNames, word_b);
  if (!prims && !dirs) {
    throw Error("vocabulary swap needs two primitives or two directions, got '" +
                word_a_ + "' and '" + word_b_ + "'");
  }
  if (word_a == word_b || action_a == action_b) {
    throw Error("vocabulary swap of a word with itself");
  }
}

VocabSwap VocabSwap::jump_walk() { return {"jump", "walk", Action::JUMP, Action::WALK}; }
VocabSwap VocabSwap::left_right() { return {"left", "right", Action::LTURN, Action::RTURN}; }
VocabSwap VocabSwap::up_down() { return {"up", "down", Action::UTURN, Action::DTURN}; }

Primitive VocabSwap::apply(Primitive p) const {
  if (name(p) == word_a_) return static_cast<Primitive>(*lookup(kPrimitiveNames, word_b_));
  if (name(p) == word_b_) return static_cast<Primitive>(*lookup(kPrimitiveNames, word_a_));
  return p;
}

Direction VocabSwap::apply(Direction d) const {
  if (name(d) == word_a_) return static_cast<Direction>(*lookup(kDirectionNames, word_b_));
  if (name(d) == word_b_) return static_cast<Direction>(*lookup(kDirectionNames, word_a_));
  return d;
}

Action VocabSwap::apply(Action a) const {
  if (a == action_a_) return action_b_;
  if (a == action_b_) return action_a_;
  return a;
}

Command apply_swap(const VocabSwap& sw, const Command& c) {
  return scan::apply(as_permutation(sw), c);
}

ActionSeq apply_swap_actions(const VocabSwap& sw, const ActionSeq& a) {
  return scan::apply(as_permutation(sw), a);
}

std::vector<VocabPermutation> generated_vocab_group(std::span<const VocabSwap> swaps) {
  std::vector<VocabPermutation> gens;
  for (const auto& sw : swaps) gens.push_back(as_permutation(sw));
  std::vector<VocabPermutation> out{identity_permutation()};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : gens) {
      const VocabPermutation next = compose(out[head], g);
      if (std::find(out.begin(), out.end(), next) == out.end()) out.push_back(next);
    }
  }
  return out;
}

Command apply(const VocabPermutation& sigma, const Command& c) {
  Command out = c;
  out.first = apply_sentence(sigma, c.first);
  if (out.rest) out.rest->sentence = apply_sentence(sigma, c.rest->sentence);
  return out;
}

ActionSeq apply(const VocabPermutation& sigma, const ActionSeq& a) {
  ActionSeq out(a.size());
  std::transform(a.begin(), a.end(), out.begin(), [&](Action x) {
    return static_cast<Action>(sigma.action[static_cast<int>(x)]);
  });
  return out;
}

EquivarianceReport verify_semantic_equivariance(std::span<const VocabSwap> swaps,
                                                std::span<const Command> corpus) {
  const auto group = generated_vocab_group(swaps);
  EquivarianceReport report;
  report.group_order = group.size();
  report.commands_checked = corpus.size();
  for (const auto& c : corpus) {
    const ActionSeq base = interpret(c);
    for (std::size_t s = 0; s < group.size(); ++s) {
      if (interpret(scan::apply(group[s], c)) != scan::apply(group[s], base)) {
        ++report.violations;
        if (report.examples.size() < 8) {
          report.examples.push_back(to_string(c) + " | sigma " + std::to_string(s));
        }
      }
    }
  }
  return report;
}

EquivarianceReport verify_semantic_equivariance(std::span<const VocabSwap> swaps) {
  const auto corpus = enumerate_commands();
  return verify_semantic_equivariance(swaps, corpus);
}

// ---------------------------------------------------------------------------

std::string_view name(Split s) {
  switch (s) {
    case Split::train:
      return "train";
    case Split::jump:
      return "jump";
    case Split::turn_left:
      return "turn_left";
    case Split::turn_up:
      return "turn_up";
    case Split::turn_up_jump_turn_left:
      return "turn_up_jump_turn_left";
  }
  return "?";
}

Split classify(const Command& c) {
  const bool jump = command_has(c, Primitive::jump);
  const bool left = command_has(c, Direction::left);
  const bool up = command_has(c, Direction::up);
  const int held_out = int{jump} + int{left} + int{up};
  if (held_out == 0 || is_bare_form(c)) return Split::train;
  if (held_out >= 2) return Split::turn_up_jump_turn_left;
  if (jump) return Split::jump;
  return left ? Split::turn_left : Split::turn_up;
}

bool in_split(Split s, const Command& c) { return classify(c) == s; }

std::vector<Dataset> make_splits(std::span<const Command> corpus) {
  std::vector<Dataset> out;
  for (Split s : kSplits) out.push_back({s, {}});
  for (const auto& c : corpus) {
    out[static_cast<std::size_t>(classify(c))].examples.push_back({c, interpret(c)});
  }
  return out;
}

std::vector<Dataset> make_splits() {
  const auto corpus = enumerate_commands();
  return make_splits(corpus);
}

std::string format_example(const Example& e) {
  return "IN: " + to_string(e.command) + " OUT: " + to_string(e.actions);
}

Example parse_example(std::string_view line) {
  constexpr std::string_view in_tag = "IN: ";
  constexpr std::string_view out_tag = " OUT: ";
  if (line.substr(0, in_tag.size()) != in_tag) {
    throw ParseError("dataset line lacks 'IN: ' prefix: " + std::string(line));
  }
  const auto at = line.find(out_tag);
  if (at == std::string_view::npos) {
    throw ParseError("dataset line lacks ' OUT: ' marker: " + std::string(line));
  }
  return {parse_command(line.substr(in_tag.size(), at - in_tag.size())),
          parse_actions(line.substr(at + out_tag.size()))};
}

void write_dataset(std::span<const Example> examples, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("write_dataset: cannot open '" + path.string() + "' for writing");
  for (const auto& e : examples) out << format_example(e) << '\n';
  out.flush();
  if (!out) throw Error("write_dataset: write failed for '" + path.string() + "'");
}

std::vector<Example> read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("read_dataset: cannot open '" + path.string() + "'");
  std::vector<Example> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(parse_example(line));
  }
  if (in.bad()) throw Error("read_dataset: read failed for '" + path.string() + "'");
  return out;
}

}  // namespace multiequi::scan
