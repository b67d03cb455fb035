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
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

namespace multiequi::scan {
namespace {

namespace fs = std::filesystem;

std::string Translate(std::string_view command) {
  return to_string(interpret(parse_command(command)));
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path TempDir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("multiequi_scan_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

class Corpus : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { corpus_ = new std::vector<Command>(enumerate_commands()); }
  static void TearDownTestSuite() {
    delete corpus_;
    corpus_ = nullptr;
  }
  static const std::vector<Command>& corpus() { return *corpus_; }

 private:
  static std::vector<Command>* corpus_;
};

std::vector<Command>* Corpus::corpus_ = nullptr;

TEST(Interpret, BasicExamples) {
  EXPECT_EQ(Translate("jump"), "JUMP");
  EXPECT_EQ(Translate("turn around left"), "LTURN LTURN LTURN LTURN");
  EXPECT_EQ(Translate("jump left twice"), "LTURN JUMP LTURN JUMP");
  EXPECT_EQ(Translate("walk after run"), "RUN WALK");
}

TEST(Interpret, MoreRules) {
  EXPECT_EQ(Translate("turn left"), "LTURN");
  EXPECT_EQ(Translate("turn opposite up"), "UTURN UTURN");
  EXPECT_EQ(Translate("look opposite down"), "DTURN DTURN LOOK");
  EXPECT_EQ(Translate("run around right"), "RTURN RUN RTURN RUN RTURN RUN RTURN RUN");
  EXPECT_EQ(Translate("walk thrice and turn down"), "WALK WALK WALK DTURN");
  EXPECT_EQ(Translate("jump up after look twice"), "LOOK LOOK UTURN JUMP");
}

TEST(Parse, RoundTripsAndRejects) {
  for (const char* text : {"jump", "turn around left thrice", "walk opposite up and run",
                           "look down twice after turn right"}) {
    EXPECT_EQ(to_string(parse_command(text)), text);
  }
  EXPECT_THROW(parse_command(""), ParseError);
  EXPECT_THROW(parse_command("turn"), ParseError);
  EXPECT_THROW(parse_command("jump twice twice"), ParseError);
  EXPECT_THROW(parse_command("walk and run and look"), ParseError);
  EXPECT_THROW(parse_command("fly left"), ParseError);
  EXPECT_EQ(parse_actions("LTURN JUMP"), (ActionSeq{Action::LTURN, Action::JUMP}));
  EXPECT_THROW(parse_actions("LTURN FLY"), ParseError);
}

TEST_F(Corpus, CountsAndContents) {
  // V = 3 * (5 heads * 4 dirs) + 4 = 64, S = 3V, C = 2 S^2 + S.
  EXPECT_EQ(corpus().size(), 73920u);
  std::set<std::string> text;
  for (const auto& c : corpus()) text.insert(to_string(c));
  EXPECT_EQ(text.size(), corpus().size());
  EXPECT_TRUE(text.count("jump"));
  EXPECT_TRUE(text.count("turn up"));
  EXPECT_TRUE(text.count("turn down"));
  EXPECT_FALSE(text.count("turn"));
}

TEST(Enumerate, LeftRightFragmentMatchesOriginalCorpus) {
  EXPECT_EQ(enumerate_commands(kLeftRight).size(), 20910u);
}

TEST(Enumerate, OrderIsDocumented) {
  const auto cs = enumerate_commands(kLeftRight);
  EXPECT_EQ(to_string(cs.front()), "walk opposite left twice and walk opposite left twice");
  EXPECT_EQ(to_string(cs.back()), "jump");
  EXPECT_EQ(enumerate_commands(kLeftRight), cs);
}

TEST(Swap, Examples) {
  const auto jw = VocabSwap::jump_walk();
  EXPECT_EQ(to_string(apply_swap(jw, parse_command("jump left"))), "walk left");
  const auto c = parse_command("walk around up and jump");
  EXPECT_EQ(apply_swap(jw, apply_swap(jw, c)), c);
  EXPECT_EQ(apply_swap_actions(VocabSwap::left_right(), {Action::LTURN, Action::RTURN}),
            (ActionSeq{Action::RTURN, Action::LTURN}));
  const auto ud = VocabSwap::up_down();
  const auto c2 = parse_command("turn opposite up");
  EXPECT_EQ(to_string(interpret(apply_swap(ud, c2))), "DTURN DTURN");
  EXPECT_EQ(apply_swap_actions(ud, interpret(c2)), interpret(apply_swap(ud, c2)));
}

TEST(Swap, RejectsBadPairs) {
  EXPECT_THROW(VocabSwap("jump", "left", Action::JUMP, Action::LTURN), Error);
  EXPECT_THROW(VocabSwap("jump", "jump", Action::JUMP, Action::JUMP), Error);
  EXPECT_THROW(VocabSwap("fly", "walk", Action::JUMP, Action::WALK), Error);
}

TEST(VocabGroup, ThreeSwapsGenerateEight) {
  const VocabSwap swaps[] = {VocabSwap::jump_walk(), VocabSwap::left_right(),
                             VocabSwap::up_down()};
  const auto g = generated_vocab_group(swaps);
  EXPECT_EQ(g.size(), 8u);
  EXPECT_EQ(generated_vocab_group(std::span<const VocabSwap>(swaps, 1)).size(), 2u);
}

TEST_F(Corpus, SemanticEquivarianceHoldsEverywhere) {
  const VocabSwap swaps[] = {VocabSwap::jump_walk(), VocabSwap::left_right(),
                             VocabSwap::up_down()};
  const auto report = verify_semantic_equivariance(swaps, corpus());
  EXPECT_EQ(report.group_order, 8u);
  EXPECT_EQ(report.commands_checked, 73920u);
  EXPECT_TRUE(report.ok()) << report.violations;
}

TEST(SemanticEquivariance, BrokenSemanticsWouldBeCaught) {
  // Pairing "jump" with the wrong action tokens breaks equivariance.
  const VocabSwap bad[] = {VocabSwap("jump", "walk", Action::LOOK, Action::WALK)};
  const auto cs = enumerate_commands(kLeftRight);
  const auto report = verify_semantic_equivariance(bad, cs);
  EXPECT_FALSE(report.ok());
  EXPECT_FALSE(report.examples.empty());
}

TEST(Splits, MembershipExamples) {
  EXPECT_EQ(classify(parse_command("jump")), Split::train);
  EXPECT_EQ(classify(parse_command("turn left")), Split::train);
  EXPECT_EQ(classify(parse_command("turn up")), Split::train);
  EXPECT_EQ(classify(parse_command("walk right twice")), Split::train);
  EXPECT_EQ(classify(parse_command("jump twice")), Split::jump);
  EXPECT_FALSE(in_split(Split::train, parse_command("jump twice")));
  EXPECT_EQ(classify(parse_command("walk left")), Split::turn_left);
  EXPECT_EQ(classify(parse_command("turn up twice")), Split::turn_up);
  EXPECT_EQ(classify(parse_command("jump around left")), Split::turn_up_jump_turn_left);
  EXPECT_FALSE(in_split(Split::jump, parse_command("jump around left")));
  EXPECT_FALSE(in_split(Split::turn_left, parse_command("jump around left")));
  EXPECT_EQ(classify(parse_command("jump and turn left")), Split::turn_up_jump_turn_left);
  EXPECT_EQ(classify(parse_command("turn left and turn left")), Split::turn_left);
}

TEST_F(Corpus, SplitsPartitionTheCorpus) {
  const auto sets = make_splits(corpus());
  ASSERT_EQ(sets.size(), 5u);
  std::size_t total = 0;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    EXPECT_EQ(sets[k].split, kSplits[k]);
    EXPECT_FALSE(sets[k].examples.empty());
    for (const auto& e : sets[k].examples) {
      ASSERT_EQ(classify(e.command), sets[k].split);
      ASSERT_EQ(e.actions, interpret(e.command));
    }
    total += sets[k].examples.size();
  }
  EXPECT_EQ(total, corpus().size());
}

TEST(Dataset, FormatAndParse) {
  const Example e{parse_command("jump"), {Action::JUMP}};
  EXPECT_EQ(format_example(e), "IN: jump OUT: JUMP");
  EXPECT_EQ(parse_example("IN: jump OUT: JUMP"), e);
  EXPECT_THROW(parse_example("jump JUMP"), ParseError);
}

TEST(Dataset, EmptySplitWritesEmptyFile) {
  const auto dir = TempDir("empty");
  write_dataset({}, dir / "empty.txt");
  EXPECT_TRUE(fs::exists(dir / "empty.txt"));
  EXPECT_EQ(fs::file_size(dir / "empty.txt"), 0u);
  EXPECT_TRUE(read_dataset(dir / "empty.txt").empty());
}

TEST(Dataset, RoundTripAndByteReproducible) {
  const auto dir = TempDir("roundtrip");
  const auto sets = make_splits(enumerate_commands(kLeftRight));
  const auto& jump = sets[1].examples;
  write_dataset(jump, dir / "a.txt");
  write_dataset(jump, dir / "b.txt");
  EXPECT_EQ(read_dataset(dir / "a.txt"), jump);
  const std::string bytes = Slurp(dir / "a.txt");
  EXPECT_EQ(bytes, Slurp(dir / "b.txt"));
  EXPECT_EQ(std::count(bytes.begin(), bytes.end(), '\n'),
            static_cast<std::ptrdiff_t>(jump.size()));
}

TEST(Dataset, IoErrorsNameThePath) {
  const fs::path bad = "/nonexistent-dir/for/multiequi/x.txt";
  try {
    write_dataset({}, bad);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find(bad.string()), std::string::npos);
  }
  EXPECT_THROW(read_dataset(bad), Error);
}

}  // namespace
}  // namespace multiequi::scan
