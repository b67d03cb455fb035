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

// SCAN-II: the SCAN command grammar extended with the directions "up" and
// "down", its action semantics, vocabulary swaps, and dataset splits.
//
// Grammar (the language is finite):
//   C -> S and S | S after S | S
//   S -> V twice | V thrice | V
//   V -> D[1] opposite D[2] | D[1] around D[2] | D | U
//   D -> U dir | turn dir                     dir in {left, right, up, down}
//   U -> walk | look | run | jump
//
// Enumeration order is depth-lexicographic over production choices, in the
// order written above: the outermost production varies slowest, then the
// left child, then the right child. Heads run walk, look, run, jump, turn and
// directions run left, right, up, down, with the head varying slower.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multiequi/errors.hpp"

namespace multiequi::scan {

enum class Primitive : std::uint8_t { walk, look, run, jump };
enum class Direction : std::uint8_t { left, right, up, down };
enum class Action : std::uint8_t { WALK, LOOK, RUN, JUMP, LTURN, RTURN, UTURN, DTURN };

inline constexpr Primitive kPrimitives[] = {Primitive::walk, Primitive::look,
                                            Primitive::run, Primitive::jump};
inline constexpr Direction kAllDirections[] = {Direction::left, Direction::right,
                                               Direction::up, Direction::down};
// Directions of the original SCAN corpus.
inline constexpr Direction kLeftRight[] = {Direction::left, Direction::right};

std::string_view name(Primitive p);
std::string_view name(Direction d);
std::string_view name(Action a);

class ParseError : public Error {
 public:
  using Error::Error;
};

// V-level phrase. `verb` empty means "turn"; bare phrases carry a verb and
// ignore `direction`.
struct VerbPhrase {
  enum class Kind : std::uint8_t { opposite, around, directed, bare };

  Kind kind = Kind::bare;
  std::optional<Primitive> verb;
  Direction direction = Direction::left;

  friend bool operator==(const VerbPhrase&, const VerbPhrase&) = default;
};

enum class Repeat : std::uint8_t { twice, thrice, once };

// S-level phrase.
struct Sentence {
  VerbPhrase phrase;
  Repeat repeat = Repeat::once;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

enum class Conjunction : std::uint8_t { and_, after };

struct Command {
  struct Tail {
    Conjunction conjunction;
    Sentence sentence;
    friend bool operator==(const Tail&, const Tail&) = default;
  };

  Sentence first;
  std::optional<Tail> rest;

  friend bool operator==(const Command&, const Command&) = default;
};

using ActionSeq = std::vector<Action>;

std::string to_string(const Command& c);
std::string to_string(const ActionSeq& a);

// Inverses of to_string; throw ParseError on anything the grammar rejects.
Command parse_command(std::string_view text);
ActionSeq parse_actions(std::string_view text);

// Every derivable command over the given directions, duplicate-free, in the
// documented order. 73,920 commands for all four directions and 20,910 for
// the left/right fragment.
std::vector<Command> enumerate_commands(std::span<const Direction> directions = kAllDirections);

ActionSeq interpret(const Command& c);

// Exchanges two command words (both primitives or both directions) together
// with the corresponding pair of action tokens.
class VocabSwap {
 public:
  // Throws Error if the words are unknown, of different categories, or equal.
  VocabSwap(std::string_view word_a, std::string_view word_b, Action action_a,
            Action action_b);

  static VocabSwap jump_walk();
  static VocabSwap left_right();
  static VocabSwap up_down();

  const std::string& word_a() const { return word_a_; }
  const std::string& word_b() const { return word_b_; }
  Action action_a() const { return action_a_; }
  Action action_b() const { return action_b_; }

  Primitive apply(Primitive p) const;
  Direction apply(Direction d) const;
  Action apply(Action a) const;

 private:
  std::string word_a_;
  std::string word_b_;
  Action action_a_;
  Action action_b_;
};

Command apply_swap(const VocabSwap& sw, const Command& c);
ActionSeq apply_swap_actions(const VocabSwap& sw, const ActionSeq& a);

// Element of the group generated by a set of swaps, stored as its effect on
// the eight content words and the eight action tokens.
struct VocabPermutation {
  std::uint8_t primitive[4];
  std::uint8_t direction[4];
  std::uint8_t action[8];

  friend bool operator==(const VocabPermutation&, const VocabPermutation&) = default;
};

std::vector<VocabPermutation> generated_vocab_group(std::span<const VocabSwap> swaps);
Command apply(const VocabPermutation& sigma, const Command& c);
ActionSeq apply(const VocabPermutation& sigma, const ActionSeq& a);

struct EquivarianceReport {
  std::size_t commands_checked = 0;
  std::size_t group_order = 0;
  std::size_t violations = 0;
  // First few offending "command | sigma-index" descriptions.
  std::vector<std::string> examples;

  bool ok() const { return violations == 0; }
};

// Checks interpret(sigma . c) == sigma . interpret(c) for every command and
// every element of the group generated by `swaps`.
EquivarianceReport verify_semantic_equivariance(std::span<const VocabSwap> swaps,
                                                std::span<const Command> corpus);
EquivarianceReport verify_semantic_equivariance(std::span<const VocabSwap> swaps);

// Splits. The held-out words are "jump", "left" and "up"; their bare forms
// are the commands "jump", "turn left" and "turn up".
//   train                   no held-out word, or exactly a bare form
//   jump / turn_left / turn_up
//                           exactly one held-out word, not a bare form
//   turn_up_jump_turn_left  two or more distinct held-out words
// Every command lands in exactly one split.
enum class Split : std::uint8_t { train, jump, turn_left, turn_up, turn_up_jump_turn_left };

inline constexpr Split kSplits[] = {Split::train, Split::jump, Split::turn_left,
                                    Split::turn_up, Split::turn_up_jump_turn_left};

std::string_view name(Split s);
Split classify(const Command& c);
bool in_split(Split s, const Command& c);

struct Example {
  Command command;
  ActionSeq actions;

  friend bool operator==(const Example&, const Example&) = default;
};

struct Dataset {
  Split split;
  std::vector<Example> examples;
};

// The five datasets in kSplits order, each in enumeration order.
std::vector<Dataset> make_splits(std::span<const Command> corpus);
std::vector<Dataset> make_splits();

// "IN: <command> OUT: <actions>"
std::string format_example(const Example& e);
Example parse_example(std::string_view line);

// One newline-terminated line per example. Throws Error naming the path on
// I/O failure.
void write_dataset(std::span<const Example> examples, const std::filesystem::path& path);
std::vector<Example> read_dataset(const std::filesystem::path& path);

}  // namespace multiequi::scan
