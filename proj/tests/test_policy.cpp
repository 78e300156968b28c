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
#include <numeric>

#include "etenon/algebra/group.hpp"
#include "etenon/error.hpp"
#include "etenon/policy/access_tree.hpp"
#include "etenon/policy/json.hpp"
#include "etenon/policy/parser.hpp"
#include "etenon/policy/shares.hpp"
#include "support/generators.hpp"

using namespace etenon;
using namespace etenon::policy;
using algebra::Rng;

namespace {

PolicyError parse_error(std::string_view text) {
  try {
    parse_policy(text);
  } catch (const PolicyError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for: " << text;
  return PolicyError(PolicyError::Kind::kSyntax, 0, 0, "none");
}

/// All leaf subsets of the tree's attribute universe.
std::vector<AttributeSet> all_subsets(const AccessTree& tree) {
  std::set<std::string> universe;
  for (const Node* leaf : tree.leaves()) universe.insert(leaf->attribute);
  std::vector<std::string> u(universe.begin(), universe.end());
  std::vector<AttributeSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << u.size()); ++mask) {
    AttributeSet s;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if ((mask >> i) & 1U) s.insert(u[i]);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(Parser, MinimalPolicy) {
  auto t = parse_policy("tree: threshold(1, attr:doctor)\nlevel 1 requires [1]\n");
  ASSERT_EQ(t.child_count(), 1u);
  EXPECT_TRUE(t.child(1).is_leaf());
  EXPECT_EQ(t.child(1).attribute, "doctor");
  EXPECT_EQ(t.level_ids(), (std::set<LevelId>{1}));
}

TEST(Parser, CommentsAndNewlinesInsideTree) {
  auto t = parse_policy(
      "# ward policy\nlevel 2 requires [1, 2]\nlevel 1 requires [2]\n"
      "tree: threshold(2,\n  threshold(1, attr:doctor, attr:nurse), # staff\n  attr:oncology)\n");
  EXPECT_EQ(t.root_threshold(), 2u);
  EXPECT_EQ(t.levels().at(2), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(t.leaf_count(), 3u);
}

TEST(Parser, ThresholdOutOfRange) {
  auto e = parse_error("level 1 requires [1]\ntree: threshold(1, threshold(4, attr:a, attr:b))");
  EXPECT_EQ(e.kind(), PolicyError::Kind::kThresholdOutOfRange);
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 30u);
  EXPECT_EQ(parse_error("level 1 requires [1]\ntree: threshold(0, attr:a)").kind(),
            PolicyError::Kind::kThresholdOutOfRange);
}

TEST(Parser, UnknownChildIndex) {
  auto e = parse_error("level 1 requires [1]\nlevel 7 requires [3]\ntree: threshold(1, attr:a, attr:b)");
  EXPECT_EQ(e.kind(), PolicyError::Kind::kUnknownChildIndex);
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 7u);
}

TEST(Parser, InvalidLevels) {
  EXPECT_EQ(parse_error("level 1 requires []\ntree: threshold(1, attr:a)").kind(),
            PolicyError::Kind::kInvalidLevel);
  EXPECT_EQ(parse_error("tree: threshold(1, attr:a)").kind(), PolicyError::Kind::kInvalidLevel);
  EXPECT_EQ(parse_error("level 1 requires [1, 1]\ntree: threshold(1, attr:a)").kind(),
            PolicyError::Kind::kInvalidLevel);
  EXPECT_EQ(parse_error("level 1 requires [1]\nlevel 1 requires [1]\ntree: threshold(1, attr:a)").kind(),
            PolicyError::Kind::kInvalidLevel);
}

TEST(Parser, SyntaxErrorsCarryPosition) {
  auto e = parse_error("level 1 requires [1]\ntree: threshold(1, attr:a");
  EXPECT_EQ(e.kind(), PolicyError::Kind::kSyntax);
  EXPECT_EQ(e.line(), 2u);
  auto bad_char = parse_error("level 1 requires [1]\n  tree: threshold(1, attr:a) $");
  EXPECT_EQ(bad_char.line(), 2u);
  EXPECT_EQ(bad_char.column(), 30u);
  EXPECT_EQ(parse_error("level 1 requires [1]\ntree: attr:a").kind(), PolicyError::Kind::kSyntax);
  EXPECT_EQ(parse_error("level 1 requires [1]").kind(), PolicyError::Kind::kSyntax);
  EXPECT_EQ(parse_error("level 1 requires [1]\ntree: threshold(1, attr:a)\ntree: threshold(1, attr:b)").kind(),
            PolicyError::Kind::kSyntax);
  EXPECT_EQ(parse_error("level 1 requires [1]\ntree: threshold(1)").kind(), PolicyError::Kind::kSyntax);
  EXPECT_EQ(e.code(), ErrorCode::kParse);
}

TEST(AccessTreeValidation, RejectsBadShapes) {
  EXPECT_THROW(AccessTree(1, {Node::leaf("a")}, {}), InvalidArgument);
  EXPECT_THROW(AccessTree(1, {Node::leaf("a")}, {{1, {}}}), InvalidArgument);
  EXPECT_THROW(AccessTree(1, {Node::leaf("a")}, {{1, {2}}}), InvalidArgument);
  EXPECT_THROW(AccessTree(1, {Node::leaf("")}, {{1, {1}}}), InvalidArgument);
  EXPECT_THROW(AccessTree(1, {Node::gate(3, {Node::leaf("a"), Node::leaf("b")})}, {{1, {1}}}), InvalidArgument);
  EXPECT_THROW(AccessTree(2, {Node::leaf("a")}, {{1, {1}}}), InvalidArgument);
}

TEST(AccessTreeValidation, LintFlagsRepeatedAttribute) {
  auto t = parse_policy("level 1 requires [1]\ntree: threshold(1, threshold(1, attr:a, attr:a))");
  EXPECT_EQ(t.lint().size(), 1u);
  EXPECT_TRUE(parse_policy("level 1 requires [1]\ntree: threshold(1, attr:a, attr:a)").lint().size() >= 1);
  EXPECT_TRUE(parse_policy("level 1 requires [1]\ntree: threshold(1, attr:a, attr:b)").lint().empty());
}

TEST(Satisfies, Examples) {
  EXPECT_TRUE(satisfies(Node::leaf("doctor"), {"doctor"}));
  auto two_of_two = Node::gate(2, {Node::leaf("doctor"), Node::leaf("oncology")});
  EXPECT_FALSE(satisfies(two_of_two, {"doctor"}));
  auto two_of_three = Node::gate(2, {Node::leaf("doctor"), Node::leaf("oncology"), Node::leaf("nurse")});
  EXPECT_TRUE(satisfies(two_of_three, {"doctor", "oncology"}));
}

TEST(Satisfies, LevelsNeedEverySubTree) {
  auto t = parse_policy("level 1 requires [1]\nlevel 2 requires [1, 2]\ntree: threshold(1, attr:a, attr:b)");
  EXPECT_EQ(satisfied_levels(t, {"a"}), (std::set<LevelId>{1}));
  EXPECT_EQ(satisfied_levels(t, {"b"}), (std::set<LevelId>{}));
  EXPECT_EQ(satisfied_levels(t, {"a", "b"}), (std::set<LevelId>{1, 2}));
  EXPECT_FALSE(level_satisfied(t, 2, {"a"}));
}

TEST(Satisfies, MatchesBruteForceOracle) {
  auto rng = Rng::from_seed(101);
  for (int trial = 0; trial < 200; ++trial) {
    auto tree = etenon::testing::random_tree(rng);
    for (const auto& attrs : all_subsets(tree)) {
      for (const auto& child : tree.children()) {
        ASSERT_EQ(satisfies(child, attrs), etenon::testing::oracle_satisfies(child, attrs));
      }
      ASSERT_EQ(satisfied_levels(tree, attrs), etenon::testing::oracle_levels(tree, attrs));
    }
  }
}

TEST(Satisfies, Monotone) {
  auto rng = Rng::from_seed(102);
  for (int trial = 0; trial < 200; ++trial) {
    auto tree = etenon::testing::random_tree(rng);
    auto attrs = etenon::testing::random_attributes(rng);
    auto before = satisfied_levels(tree, attrs);
    for (const auto& extra : etenon::testing::attribute_pool()) {
      auto bigger = attrs;
      bigger.insert(extra);
      auto after = satisfied_levels(tree, bigger);
      for (auto l : before) ASSERT_TRUE(after.count(l)) << format_policy(tree);
    }
  }
}

TEST(Format, RoundTripsRandomTrees) {
  auto rng = Rng::from_seed(103);
  for (int trial = 0; trial < 200; ++trial) {
    auto tree = etenon::testing::random_tree(rng);
    auto text = format_policy(tree);
    EXPECT_EQ(parse_policy(text), tree) << text;
    EXPECT_EQ(format_policy(parse_policy(text)), text);
  }
}

TEST(Json, RoundTripsRandomTrees) {
  auto rng = Rng::from_seed(104);
  for (int trial = 0; trial < 100; ++trial) {
    auto tree = etenon::testing::random_tree(rng);
    EXPECT_EQ(tree_from_json(to_json(tree)), tree);
    EXPECT_EQ(tree_from_json(nlohmann::json::parse(to_json(tree).dump())), tree);
  }
}

TEST(Json, MalformedInput) {
  EXPECT_THROW(tree_from_json(nlohmann::json::parse(R"({"children":3})")), DecodeError);
  EXPECT_THROW(tree_from_json(nlohmann::json::parse(
                   R"({"children":[{"kind":"leaf","attribute":"a"}],"levels":[{"id":1,"requires":[2]}],"root_threshold":1})")),
               InvalidArgument);
  EXPECT_THROW(tree_from_json(nlohmann::json::parse(
                   R"({"children":[{"kind":"blob"}],"levels":[{"id":1,"requires":[1]}],"root_threshold":1})")),
               DecodeError);
}

TEST(Lagrange, HandValues) {
  auto f = algebra::ScalarField::create(101);
  std::vector<std::size_t> s12{1, 2};
  EXPECT_EQ(lagrange_coefficient(1, s12, *f).to_u64(), 2u);
  EXPECT_EQ(lagrange_coefficient(2, s12, *f).to_u64(), 100u);
  std::vector<std::size_t> single{4};
  EXPECT_EQ(lagrange_coefficient(4, single, *f).to_u64(), 1u);
  EXPECT_THROW(lagrange_coefficient(3, s12, *f), InvalidArgument);
}

TEST(Lagrange, InterpolatesRandomQuadratics) {
  auto suite = algebra::make_mock_suite();
  const auto& f = suite->scalars();
  auto rng = Rng::from_seed(105);
  std::vector<std::size_t> set{1, 2, 3};
  for (int trial = 0; trial < 100; ++trial) {
    auto q = Polynomial::random(f.random(rng), 2, rng);
    auto acc = f.zero();
    for (auto i : set) acc += lagrange_coefficient(i, set, f) * q.evaluate(i);
    ASSERT_EQ(acc, q.coefficients[0]);
  }
}

TEST(Shares, LevelSecretFromFixedRoot) {
  auto f = algebra::ScalarField::create(101);
  auto rng = Rng::from_seed(106);
  auto tree = parse_policy("level 1 requires [1, 2]\nlevel 2 requires [2]\ntree: threshold(1, attr:a, attr:b)");
  auto s = f->from_u64(40);
  auto plan = assign_shares(tree, Polynomial{{s, f->from_u64(3)}}, rng);
  EXPECT_EQ(plan.level_secrets.at(1).to_u64(), (2 * 40 + 9) % 101);
  EXPECT_EQ(plan.level_secrets.at(2).to_u64(), (40 + 6) % 101);
}

TEST(Shares, ThresholdOneGateCopiesShare) {
  auto f = algebra::ScalarField::create(101);
  auto rng = Rng::from_seed(107);
  auto tree = parse_policy("level 1 requires [1]\ntree: threshold(1, threshold(1, attr:a, attr:b, attr:c))");
  auto plan = assign_shares(tree, *f, rng);
  ASSERT_EQ(plan.leaf_shares.size(), 3u);
  EXPECT_EQ(plan.leaf_shares[0], plan.leaf_shares[1]);
  EXPECT_EQ(plan.leaf_shares[1], plan.leaf_shares[2]);
  EXPECT_EQ(plan.node_polynomials[0].degree(), 0u);
}

TEST(Shares, RootDegreeIsChildCountMinusOne) {
  auto suite = algebra::make_mock_suite();
  auto rng = Rng::from_seed(108);
  for (int trial = 0; trial < 50; ++trial) {
    auto tree = etenon::testing::random_tree(rng);
    auto plan = assign_shares(tree, suite->scalars(), rng);
    EXPECT_EQ(plan.root.coefficients.size(), tree.child_count());
  }
}

TEST(Shares, EveryGateReconstructsFromAnyThresholdSubset) {
  auto suite = algebra::make_mock_suite();
  const auto& f = suite->scalars();
  auto rng = Rng::from_seed(109);
  for (int trial = 0; trial < 100; ++trial) {
    auto tree = etenon::testing::random_tree(rng);
    auto plan = assign_shares(tree, f, rng);
    const auto nodes = tree.nodes();
    ASSERT_EQ(nodes.size(), plan.node_polynomials.size());
    std::map<const Node*, std::size_t> pos;
    for (std::size_t i = 0; i < nodes.size(); ++i) pos[nodes[i]] = i;

    // Root children carry q_root(index).
    for (std::size_t i = 1; i <= tree.child_count(); ++i) {
      ASSERT_EQ(plan.node_polynomials[pos[&tree.child(i)]].coefficients[0], plan.root.evaluate(i));
    }
    std::size_t leaf_i = 0;
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      const Node* node = nodes[n];
      const auto& poly = plan.node_polynomials[n];
      if (node->is_leaf()) {
        ASSERT_EQ(plan.leaf_shares[leaf_i++], poly.coefficients[0]);
        continue;
      }
      ASSERT_EQ(poly.degree(), node->threshold - 1);
      for (std::size_t c = 0; c < node->children.size(); ++c) {
        ASSERT_EQ(plan.node_polynomials[pos[&node->children[c]]].coefficients[0], poly.evaluate(c + 1));
      }
      // A random t-subset of the children interpolates the gate's share.
      std::vector<std::size_t> idx(node->children.size());
      std::iota(idx.begin(), idx.end(), 1);
      std::shuffle(idx.begin(), idx.end(), rng);
      idx.resize(node->threshold);
      auto acc = f.zero();
      for (auto i : idx) {
        acc += lagrange_coefficient(i, idx, f) *
               plan.node_polynomials[pos[&node->children[i - 1]]].coefficients[0];
      }
      ASSERT_EQ(acc, poly.coefficients[0]);
    }
    for (const auto& [id, set] : tree.levels()) {
      auto sum = f.zero();
      for (auto i : set) sum += plan.root.evaluate(i);
      ASSERT_EQ(plan.level_secrets.at(id), sum);
    }
  }
}
