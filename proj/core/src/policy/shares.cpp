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

#include "etenon/policy/shares.hpp"

#include <algorithm>

#include "etenon/error.hpp"

namespace etenon::policy {
namespace {

void propagate(const Node& node, const Scalar& share, algebra::Rng& rng, SharePlan& plan) {
  const std::size_t degree = node.is_leaf() ? 0 : node.threshold - 1;
  Polynomial poly = Polynomial::random(share, degree, rng);
  plan.node_polynomials.push_back(poly);
  if (node.is_leaf()) {
    plan.leaf_shares.push_back(share);
    return;
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    propagate(node.children[i], poly.evaluate(i + 1), rng, plan);
  }
}

}  // namespace

Polynomial Polynomial::random(const Scalar& constant, std::size_t degree, algebra::Rng& rng) {
  Polynomial p;
  p.coefficients.reserve(degree + 1);
  p.coefficients.push_back(constant);
  for (std::size_t i = 0; i < degree; ++i) {
    p.coefficients.push_back(constant.field().random(rng));
  }
  return p;
}

Scalar Polynomial::evaluate(const Scalar& x) const {
  if (coefficients.empty()) throw InvalidArgument("empty polynomial");
  Scalar acc = coefficients.back();
  for (auto it = coefficients.rbegin() + 1; it != coefficients.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

Scalar Polynomial::evaluate(std::size_t x) const {
  if (coefficients.empty()) throw InvalidArgument("empty polynomial");
  return evaluate(coefficients.front().field().from_u64(x));
}

SharePlan assign_shares(const AccessTree& tree, const algebra::ScalarField& field,
                        algebra::Rng& rng) {
  const Scalar secret = field.random(rng);
  return assign_shares(tree, Polynomial::random(secret, tree.child_count() - 1, rng), rng);
}

SharePlan assign_shares(const AccessTree& tree, Polynomial root, algebra::Rng& rng) {
  SharePlan plan;
  plan.root = std::move(root);
  for (const auto& [id, indices] : tree.levels()) {
    Scalar sum = plan.root.coefficients.front().field().zero();
    for (auto index : indices) sum += plan.root.evaluate(index);
    plan.level_secrets.emplace(id, sum);
  }
  for (std::size_t i = 0; i < tree.child_count(); ++i) {
    propagate(tree.children()[i], plan.root.evaluate(i + 1), rng, plan);
  }
  return plan;
}

Scalar lagrange_coefficient(std::size_t i, std::span<const std::size_t> set,
                            const algebra::ScalarField& field) {
  if (i == 0 || std::find(set.begin(), set.end(), i) == set.end()) {
    throw InvalidArgument("lagrange index must be a nonzero member of the set");
  }
  Scalar num = field.one();
  Scalar den = field.one();
  const Scalar xi = field.from_u64(i);
  for (auto j : set) {
    if (j == i) continue;
    if (j == 0) throw InvalidArgument("lagrange indices must be nonzero");
    const Scalar xj = field.from_u64(j);
    num *= -xj;
    den *= xi - xj;
  }
  return num * den.inverse();
}

}  // namespace etenon::policy
