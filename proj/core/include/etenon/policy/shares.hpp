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

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "etenon/algebra/rng.hpp"
#include "etenon/algebra/scalar.hpp"
#include "etenon/policy/access_tree.hpp"

namespace etenon::policy {

using algebra::Scalar;

/// q(x) = c0 + c1 x + ... ; coefficients[0] is q(0).
struct Polynomial {
  std::vector<Scalar> coefficients;

  static Polynomial random(const Scalar& constant, std::size_t degree, algebra::Rng& rng);
  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  Scalar evaluate(const Scalar& x) const;
  Scalar evaluate(std::size_t x) const;
};

/// Secret-sharing state drawn for one encryption.
struct SharePlan {
  Polynomial root;
  /// Enciphering secret per level: sum of q_root(i) over the level's indices.
  std::map<LevelId, Scalar> level_secrets;
  /// Polynomial of every non-root node, in AccessTree::nodes() order. For a
  /// node x, polynomials[x].coefficients[0] is its share q_x(0).
  std::vector<Polynomial> node_polynomials;
  /// q_y(0) for each leaf, in AccessTree::leaves() order.
  std::vector<Scalar> leaf_shares;
};

/// Draws a root polynomial of degree (child count - 1) and propagates shares
/// down: each gate of threshold t gets a fresh degree t-1 polynomial whose
/// constant term is q_parent(index).
SharePlan assign_shares(const AccessTree& tree, const algebra::ScalarField& field,
                        algebra::Rng& rng);

/// Same propagation from a caller-fixed root polynomial.
SharePlan assign_shares(const AccessTree& tree, Polynomial root, algebra::Rng& rng);

/// Lagrange basis at zero: prod_{j in set, j != i} (0 - j) / (i - j) mod p.
/// Indices must be distinct and nonzero, and `set` must contain `i`.
Scalar lagrange_coefficient(std::size_t i, std::span<const std::size_t> set,
                            const algebra::ScalarField& field);

}  // namespace etenon::policy
