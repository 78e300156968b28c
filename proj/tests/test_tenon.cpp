// Copyright 2026 The etenon Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "etenon/error.hpp"
#include "etenon/tenon/pointer.hpp"
#include "etenon/tenon/preprocess.hpp"
#include "etenon/tenon/record.hpp"
#include "etenon/tenon/structure.hpp"
#include "etenon/tenon/tokenize.hpp"
#include "support/generators.hpp"

using namespace etenon;
using namespace etenon::tenon;
using algebra::Rng;

namespace {

std::vector<std::string> blocks_of(std::string_view text) {
  return tokenize(text, Stopwords::defaults()).blocks;
}

std::string join(const std::vector<std::string>& blocks) {
  std::string out;
  for (const auto& b : blocks) {
    if (!out.empty()) out += ' ';
    out += b;
  }
  return out;
}

}  // namespace

TEST(Pointer, UuidTextRoundTrip) {
  auto rng = Rng::from_seed(1);
  for (int i = 0; i < 100; ++i) {
    auto p = Pointer::generate(rng);
    auto text = p.to_string();
    ASSERT_EQ(text.size(), 36u);
    EXPECT_EQ(text[14], '4');
    EXPECT_NE(std::string("89ab").find(text[19]), std::string::npos);
    EXPECT_EQ(Pointer::parse(text), p);
  }
  EXPECT_EQ(Pointer::parse("9458FDCC-6BED-46EC-B883-0076409E76F0").to_string(),
            "9458fdcc-6bed-46ec-b883-0076409e76f0");
}

TEST(Pointer, RejectsShortUuid) {
  EXPECT_THROW(Pointer::parse("9458fdcc-6bed-46ec-b883-0076409e76f"), DecodeError);
  EXPECT_THROW(Pointer::parse("9458fdcc-6bed-46ec-b883-0076409e76fg"), DecodeError);
  EXPECT_THROW(Pointer::parse("9458fdcc6bed-46ec-b883-0076409e76f00"), DecodeError);
  EXPECT_THROW(Pointer::from_bytes(std::vector<std::uint8_t>(15)), DecodeError);
}

TEST(Pointer, TenThousandUnique) {
  auto rng = Rng::from_os();
  std::unordered_set<Pointer> seen;
  for (int i = 0; i < 10000; ++i) seen.insert(Pointer::generate(rng));
  EXPECT_EQ(seen.size(), 10000u);
}

TEST(Pointer, NotCounterLike) {
  // Successive draws differ in about half of their 122 random bits.
  auto rng = Rng::from_os();
  auto prev = Pointer::generate(rng);
  std::size_t total = 0;
  for (int i = 0; i < 1000; ++i) {
    auto p = Pointer::generate(rng);
    for (std::size_t b = 0; b < Pointer::kBytes; ++b) total += std::popcount(static_cast<unsigned>(p.bytes()[b] ^ prev.bytes()[b]));
    prev = p;
  }
  const double mean = static_cast<double>(total) / 1000.0;
  EXPECT_GT(mean, 55.0);
  EXPECT_LT(mean, 67.0);
}

TEST(Classification, DefaultRules) {
  const auto& rules = ClassificationRules::defaults();
  EXPECT_EQ(rules.lookup("NINO"), RuleClass::kIdentifiable);
  EXPECT_EQ(rules.lookup("mobile number"), RuleClass::kIdentifiable);
  EXPECT_EQ(rules.lookup("blood pressure"), RuleClass::kNonPii);
  EXPECT_EQ(rules.lookup("Symptom"), RuleClass::kNonPii);
  EXPECT_EQ(rules.lookup("medical condition"), RuleClass::kNonPii);
  EXPECT_EQ(rules.lookup("gender"), RuleClass::kAtomic);
  EXPECT_EQ(rules.lookup("favourite colour"), RuleClass::kIdentifiable);
  EXPECT_TRUE(rules.has_default());
}

TEST(Classification, ClassifyLabelsEveryColumn) {
  EhrRecord r{{{"NINO", "QQ123456C", {}, false},
               {"blood pressure", "140 over 90", {}, false},
               {"gender", "not stated", {}, false}}};
  auto c = classify(r, ClassificationRules::defaults());
  EXPECT_EQ(c.columns[0].cls, ColumnClass::kIdentifiable);
  EXPECT_EQ(c.columns[1].cls, ColumnClass::kNonPii);
  EXPECT_EQ(c.columns[2].cls, ColumnClass::kNonPii);
  EXPECT_TRUE(c.columns[2].atomic);
  EXPECT_TRUE(classify(EhrRecord{}, ClassificationRules::defaults()).columns.empty());
}

TEST(Classification, ConfigErrors) {
  auto no_default = ClassificationRules::parse("symptom = nonpii\n");
  EXPECT_EQ(no_default.lookup("symptom"), RuleClass::kNonPii);
  EXPECT_THROW(no_default.lookup("NINO"), ConfigError);
  EXPECT_THROW(classify(EhrRecord{{{"NINO", "x", {}, false}}}, no_default), ConfigError);
  EXPECT_THROW(ClassificationRules::parse("symptom = secret\n"), ConfigError);
  EXPECT_THROW(ClassificationRules::parse("symptom nonpii\n"), ConfigError);
  EXPECT_THROW(ClassificationRules::parse("default = nonpii\ndefault = atomic\n"), ConfigError);
  auto first_wins = ClassificationRules::parse("# c\nsym* = atomic\nsymptom = identifiable\n");
  EXPECT_EQ(first_wins.lookup("symptom"), RuleClass::kAtomic);
  EXPECT_EQ(first_wins.size(), 2u);
}

TEST(Tokenize, Examples) {
  EXPECT_EQ(blocks_of("cough"), (std::vector<std::string>{"cough"}));
  Stopwords sw(std::set<std::string>{"in", "the"});
  EXPECT_EQ(tokenize("pain in the chest", sw).blocks, (std::vector<std::string>{"pain", "in the chest"}));
  EXPECT_EQ(blocks_of("pain in the chest"), (std::vector<std::string>{"pain", "in the chest"}));
  auto tail = tokenize("in the", Stopwords::defaults());
  EXPECT_EQ(tail.blocks, (std::vector<std::string>{"in the"}));
  EXPECT_TRUE(tail.trailing_stopwords);
  auto mixed = tokenize("pain in the", Stopwords::defaults());
  EXPECT_EQ(mixed.blocks, (std::vector<std::string>{"pain in the"}));
  EXPECT_TRUE(mixed.trailing_stopwords);
  EXPECT_TRUE(tokenize("   \n ", Stopwords::defaults()).blocks.empty());
  EXPECT_EQ(blocks_of("  Shortness   OF\tbreath "), (std::vector<std::string>{"Shortness", "OF breath"}));
}

TEST(Tokenize, NormalizeAndPredicate) {
  EXPECT_EQ(normalize("  a \t b\n\nc  "), "a b c");
  EXPECT_EQ(normalize(""), "");
  EXPECT_FALSE(is_tokenizable({"x", "cough", {}, false}));
  EXPECT_TRUE(is_tokenizable({"x", "dry cough", {}, false}));
  EXPECT_FALSE(is_tokenizable({"x", "dry cough", {}, true}));
  auto atomic = column_blocks({"gender", " not  stated ", ColumnClass::kNonPii, true}, Stopwords::defaults());
  EXPECT_EQ(atomic.blocks, (std::vector<std::string>{"not stated"}));
  EXPECT_TRUE(column_blocks({"x", "  ", ColumnClass::kNonPii, false}, Stopwords::defaults()).blocks.empty());
}

TEST(Tokenize, StopwordParsing) {
  auto sw = Stopwords::parse("# list\nThe\n\n  of \n");
  EXPECT_EQ(sw.size(), 2u);
  EXPECT_TRUE(sw.contains("the"));
  EXPECT_TRUE(sw.contains("OF"));
  EXPECT_FALSE(sw.contains("pain"));
  EXPECT_GE(Stopwords::defaults().size(), 40u);
}

TEST(Tokenize, RoundTripProperty) {
  auto rng = Rng::from_seed(2);
  const auto& sw = Stopwords::defaults();
  for (int trial = 0; trial < 1000; ++trial) {
    auto text = etenon::testing::random_text(rng, 50);
    auto t = tokenize(text, sw);
    ASSERT_EQ(join(t.blocks), normalize(text)) << text;
    for (std::size_t i = 0; i < t.blocks.size(); ++i) {
      std::vector<std::string> words;
      std::string w;
      for (char c : t.blocks[i] + " ") {
        if (c == ' ') {
          words.push_back(w);
          w.clear();
        } else {
          w += c;
        }
      }
      const bool last = i + 1 == t.blocks.size();
      std::size_t main_words = std::count_if(words.begin(), words.end(), [&](const auto& x) { return !sw.contains(x); });
      if (!(last && t.trailing_stopwords)) {
        ASSERT_EQ(main_words, 1u) << t.blocks[i];
        ASSERT_FALSE(sw.contains(words.back())) << t.blocks[i];
      }
    }
  }
}

TEST(Structure, SingleBlock) {
  auto rng = Rng::from_seed(3);
  auto s = build_structure({"cough"}, rng);
  ASSERT_EQ(s.triples.size(), 1u);
  EXPECT_EQ(s.triples[0].self, s.head);
  EXPECT_FALSE(s.triples[0].next.has_value());
  EXPECT_THROW(build_structure({}, rng), InvalidArgument);
}

TEST(Structure, ChainInvariants) {
  auto rng = Rng::from_seed(4);
  std::vector<std::string> blocks;
  for (int i = 0; i < 30; ++i) blocks.push_back("b" + std::to_string(i));
  auto s = build_structure(blocks, rng);
  std::set<Pointer> selves;
  std::size_t terminals = 0;
  for (const auto& t : s.triples) {
    selves.insert(t.self);
    terminals += t.next ? 0 : 1;
  }
  EXPECT_EQ(selves.size(), blocks.size());
  EXPECT_EQ(terminals, 1u);
  std::vector<std::string> storage;
  for (const auto& t : s.triples) storage.push_back(t.block);
  EXPECT_NE(storage, blocks);
  auto r = reconstruct(s.head, s.triples);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.blocks, blocks);
}

TEST(Structure, TruncatedChain) {
  auto rng = Rng::from_seed(5);
  std::vector<std::string> blocks{"pain", "in the chest", "and shortness", "of breath", "at rest"};
  auto s = build_structure(blocks, rng);
  // Drop the third block in chain order.
  auto chain = reconstruct(s.head, s.triples);
  ASSERT_TRUE(chain.complete);
  Pointer cursor = s.head;
  for (int i = 0; i < 2; ++i) {
    cursor = *std::find_if(s.triples.begin(), s.triples.end(), [&](const Triple& t) { return t.self == cursor; })->next;
  }
  std::vector<Triple> partial;
  for (const auto& t : s.triples) {
    if (t.self != cursor) partial.push_back(t);
  }
  auto r = reconstruct(s.head, partial);
  EXPECT_FALSE(r.complete);
  EXPECT_EQ(r.blocks, (std::vector<std::string>{"pain", "in the chest"}));
  EXPECT_TRUE(reconstruct(Pointer::generate(rng), s.triples).blocks.empty());
}

TEST(Structure, HostileInput) {
  auto rng = Rng::from_seed(6);
  auto a = Pointer::generate(rng);
  auto b = Pointer::generate(rng);
  std::vector<Triple> cycle{{a, "x", b}, {b, "y", a}};
  EXPECT_THROW(reconstruct(a, cycle), StructuralError);
  std::vector<Triple> self_loop{{a, "x", a}};
  EXPECT_THROW(reconstruct(a, self_loop), StructuralError);
  std::vector<Triple> dup{{a, "x", std::nullopt}, {a, "y", std::nullopt}};
  EXPECT_THROW(reconstruct(a, dup), StructuralError);
}

TEST(Structure, PermutationInvariance) {
  auto rng = Rng::from_seed(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto blocks = tokenize(etenon::testing::random_text(rng, 50), Stopwords::defaults()).blocks;
    if (blocks.empty()) continue;
    auto s = build_structure(blocks, rng);
    auto expected = reconstruct(s.head, s.triples);
    ASSERT_EQ(expected.blocks, blocks);
    for (int perm = 0; perm < 5; ++perm) {
      std::shuffle(s.triples.begin(), s.triples.end(), rng);
      auto r = reconstruct(s.head, s.triples);
      ASSERT_EQ(r.blocks, expected.blocks);
      ASSERT_TRUE(r.complete);
    }
  }
}

TEST(Preprocess, SplitsIdentifiableFromChains) {
  auto rng = Rng::from_seed(8);
  EhrRecord r{{{"NINO", "QQ 12 34 56 C", {}, false},
               {"symptom", "pain in the chest", {}, false},
               {"gender", "female", {}, false},
               {"notes", "   ", {}, false}}};
  auto p = preprocess(r, ClassificationRules::defaults(), Stopwords::defaults(), rng);
  ASSERT_EQ(p.identifiable.size(), 1u);
  EXPECT_EQ(p.identifiable[0].name, "NINO");
  ASSERT_EQ(p.chains.size(), 2u);
  EXPECT_EQ(p.chains[0].column, "symptom");
  EXPECT_EQ(p.chains[0].structure.triples.size(), 2u);
  EXPECT_EQ(p.chains[1].structure.triples.size(), 1u);
  for (const auto& chain : p.chains) {
    for (const auto& t : chain.structure.triples) EXPECT_EQ(t.block.find("QQ"), std::string::npos);
  }
}

TEST(Preprocess, RandomRecordsRoundTrip) {
  auto rng = Rng::from_seed(9);
  static const std::vector<std::string> names{"symptom", "medical condition", "blood pressure", "notes",
                                              "treatment plan", "gender", "NINO", "mobile", "diagnosis"};
  for (int trial = 0; trial < 200; ++trial) {
    EhrRecord r;
    for (const auto& n : names) {
      if (etenon::testing::uniform(rng, 0, 1) == 1) r.columns.push_back({n, etenon::testing::random_text(rng, 50), {}, false});
    }
    auto p = preprocess(r, ClassificationRules::defaults(), Stopwords::defaults(), rng);
    std::size_t nonpii = 0;
    for (const auto& c : r.columns) {
      if (ClassificationRules::defaults().lookup(c.name) != RuleClass::kIdentifiable && !normalize(c.value).empty()) ++nonpii;
    }
    ASSERT_EQ(p.chains.size(), nonpii);
    for (const auto& chain : p.chains) {
      auto col = std::find_if(r.columns.begin(), r.columns.end(), [&](const Column& c) { return c.name == chain.column; });
      auto rec = reconstruct(chain.structure.head, chain.structure.triples);
      ASSERT_TRUE(rec.complete);
      ASSERT_EQ(join(rec.blocks), normalize(col->value));
    }
  }
}
