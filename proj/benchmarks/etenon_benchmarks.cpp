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

#include <benchmark/benchmark.h>

#include "etenon/algebra/group.hpp"
#include "etenon/algebra/rng.hpp"
#include "etenon/mlabe/mlabe.hpp"
#include "etenon/musig/session.hpp"
#include "etenon/policy/parser.hpp"

using namespace etenon;

namespace {

algebra::SuitePtr suite_for(int index) {
  return index == 0 ? algebra::make_mock_suite() : algebra::make_bls12_381_suite();
}

const char* suite_label(int index) { return index == 0 ? "mock" : "bls12-381"; }

/// `leaves` single-attribute children, level j over child j.
policy::AccessTree flat_tree(std::size_t levels, std::size_t leaves) {
  std::vector<policy::Node> children;
  for (std::size_t i = 0; i < leaves; ++i) children.push_back(policy::Node::leaf("a" + std::to_string(i)));
  policy::AccessTree::LevelMap map;
  for (std::size_t j = 1; j <= levels; ++j) map[static_cast<policy::LevelId>(j)] = {(j - 1) % leaves + 1};
  return policy::AccessTree(1, std::move(children), std::move(map));
}

policy::AttributeSet all_attributes(std::size_t leaves) {
  policy::AttributeSet s;
  for (std::size_t i = 0; i < leaves; ++i) s.insert("a" + std::to_string(i));
  return s;
}

void BM_Pairing(benchmark::State& state) {
  auto suite = suite_for(static_cast<int>(state.range(0)));
  auto rng = algebra::Rng::from_seed(1);
  auto a = suite->exp_g(suite->scalars().random(rng));
  auto b = suite->exp_g(suite->scalars().random(rng));
  for (auto _ : state) benchmark::DoNotOptimize(suite->pair(a, b));
  state.SetLabel(suite_label(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Pairing)->Arg(0)->Arg(1);

void BM_Exponentiation(benchmark::State& state) {
  auto suite = suite_for(static_cast<int>(state.range(0)));
  auto rng = algebra::Rng::from_seed(2);
  auto k = suite->scalars().random(rng);
  for (auto _ : state) benchmark::DoNotOptimize(suite->exp_g(k));
  state.SetLabel(suite_label(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Exponentiation)->Arg(0)->Arg(1);

void BM_EncryptPointers(benchmark::State& state) {
  auto suite = algebra::make_bls12_381_suite();
  auto rng = algebra::Rng::from_seed(3);
  auto [pp, msk] = mlabe::setup(suite, rng);
  const auto levels = static_cast<std::size_t>(state.range(0));
  const auto leaves = static_cast<std::size_t>(state.range(1));
  auto tree = flat_tree(levels, leaves);
  std::map<policy::LevelId, tenon::Pointer> ptrs;
  for (auto id : tree.level_ids()) ptrs[id] = tenon::Pointer::generate(rng);
  for (auto _ : state) benchmark::DoNotOptimize(mlabe::encrypt_pointers(pp, ptrs, tree, rng));
}
BENCHMARK(BM_EncryptPointers)->Args({1, 1})->Args({5, 10})->Unit(benchmark::kMillisecond);

void BM_DecryptPointers(benchmark::State& state) {
  auto suite = algebra::make_bls12_381_suite();
  auto rng = algebra::Rng::from_seed(4);
  auto [pp, msk] = mlabe::setup(suite, rng);
  const auto levels = static_cast<std::size_t>(state.range(0));
  const auto leaves = static_cast<std::size_t>(state.range(1));
  auto tree = flat_tree(levels, leaves);
  std::map<policy::LevelId, tenon::Pointer> ptrs;
  for (auto id : tree.level_ids()) ptrs[id] = tenon::Pointer::generate(rng);
  auto ct = mlabe::encrypt_pointers(pp, ptrs, tree, rng);
  auto keys = mlabe::keygen(pp, msk, all_attributes(leaves), rng);
  for (auto _ : state) benchmark::DoNotOptimize(mlabe::decrypt_pointers(pp, ct, keys.dk));
}
BENCHMARK(BM_DecryptPointers)->Args({1, 1})->Args({5, 10})->Unit(benchmark::kMillisecond);

void BM_MultiSign(benchmark::State& state) {
  auto suite = algebra::make_bls12_381_suite();
  auto rng = algebra::Rng::from_seed(5);
  auto [pp, msk] = mlabe::setup(suite, rng);
  std::vector<musig::SignerKeys> signers;
  musig::Roster roster;
  for (int i = 0; i < state.range(0); ++i) {
    signers.push_back(mlabe::keygen(pp, msk, {"s"}, rng).signer);
    roster.push_back(signers.back().vk);
  }
  const algebra::Bytes msg{1, 2, 3};
  for (auto _ : state) benchmark::DoNotOptimize(musig::sign_locally(suite, signers, roster, msg, rng));
}
BENCHMARK(BM_MultiSign)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
  auto suite = algebra::make_bls12_381_suite();
  auto rng = algebra::Rng::from_seed(6);
  auto [pp, msk] = mlabe::setup(suite, rng);
  std::vector<musig::SignerKeys> signers;
  musig::Roster roster;
  for (int i = 0; i < state.range(0); ++i) {
    signers.push_back(mlabe::keygen(pp, msk, {"s"}, rng).signer);
    roster.push_back(signers.back().vk);
  }
  const algebra::Bytes msg{1, 2, 3};
  auto sig = musig::sign_locally(suite, signers, roster, msg, rng);
  for (auto _ : state) benchmark::DoNotOptimize(musig::verify(*suite, sig, roster, msg));
}
BENCHMARK(BM_Verify)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
