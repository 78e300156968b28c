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

#include "etenon/cli/bench.hpp"

#include <charconv>
#include <chrono>
#include <iomanip>

#include "etenon/algebra/counters.hpp"
#include "etenon/error.hpp"
#include "etenon/mlabe/mlabe.hpp"
#include "etenon/musig/session.hpp"

namespace etenon::cli {
namespace {

std::size_t to_size(std::string_view s) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || v == 0) {
    throw InvalidArgument("expected a positive integer, got '" + std::string(s) + "'");
  }
  return v;
}

double millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

const char* const kBenchCsvHeader =
    "section,levels,leaves,signers,exponentiations,multiplications,ciphertext_elements,"
    "sign_exp_per_signer,verify_exponentiations,verify_hashes,signature_group_elements,"
    "signature_scalars,verified,millis";

Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  Range r;
  if (dots == std::string::npos) {
    r.lo = r.hi = to_size(text);
  } else {
    r.lo = to_size(std::string_view(text).substr(0, dots));
    r.hi = to_size(std::string_view(text).substr(dots + 2));
  }
  if (r.lo > r.hi) throw InvalidArgument("empty range '" + text + "'");
  return r;
}

std::vector<EncryptRow> bench_encrypt(const algebra::SuitePtr& suite, Range levels, Range leaves,
                                      std::uint64_t seed) {
  auto rng = algebra::Rng::from_seed(seed);
  const auto [pp, msk] = mlabe::setup(suite, rng);
  std::vector<EncryptRow> rows;
  for (std::size_t l = leaves.lo; l <= leaves.hi; ++l) {
    std::vector<policy::Node> children;
    for (std::size_t i = 1; i <= l; ++i) children.push_back(policy::Node::leaf("a" + std::to_string(i)));
    for (std::size_t k = levels.lo; k <= levels.hi; ++k) {
      policy::AccessTree::LevelMap map;
      std::map<policy::LevelId, tenon::Pointer> pointers;
      for (std::size_t j = 1; j <= k; ++j) {
        map[static_cast<policy::LevelId>(j)] = {((j - 1) % l) + 1};
        pointers[static_cast<policy::LevelId>(j)] = tenon::Pointer::generate(rng);
      }
      const policy::AccessTree tree(1, children, map);
      const auto start = std::chrono::steady_clock::now();
      algebra::CounterSpan span;
      const auto ct = mlabe::encrypt_pointers(pp, pointers, tree, rng);
      const auto ops = span.elapsed();
      rows.push_back({k, l, ops.exponentiations, ops.multiplications, ct.component_count(), millis_since(start)});
    }
  }
  return rows;
}

std::vector<SignRow> bench_sign(const algebra::SuitePtr& suite, Range signers, std::uint64_t seed) {
  auto rng = algebra::Rng::from_seed(seed);
  std::vector<SignRow> rows;
  for (std::size_t n = signers.lo; n <= signers.hi; ++n) {
    std::vector<musig::SignerKeys> keys;
    musig::Roster roster;
    for (std::size_t i = 0; i < n; ++i) {
      keys.push_back(musig::self_issue_keys(*suite, rng, true));
      roster.push_back(keys.back().vk);
    }
    const algebra::Bytes msg = algebra::to_bytes("bench message " + std::to_string(n));
    const auto start = std::chrono::steady_clock::now();

    // Drive the sessions by hand so the first signer's own cost can be
    // isolated from everyone else's.
    std::vector<musig::SignSession> sessions;
    std::vector<musig::RoundMessage> outbox;
    algebra::OpCounters own{};
    for (std::size_t i = 0; i < n; ++i) {
      algebra::CounterSpan span;
      auto [s, m] = musig::SignSession::start(suite, "bench", keys[i], roster, msg, rng);
      if (i == 0) own = own + span.elapsed();
      sessions.push_back(std::move(s));
      outbox.push_back(std::move(m));
    }
    std::optional<musig::MultiSig> sig;
    for (int round = 0; round < 3; ++round) {
      std::vector<musig::RoundMessage> next;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<musig::RoundMessage> in;
        for (const auto& m : outbox) {
          if (m.sender != i) in.push_back(m);
        }
        algebra::CounterSpan span;
        auto r = sessions[i].step(in);
        if (i == 0) own = own + span.elapsed();
        if (auto* m = std::get_if<musig::RoundMessage>(&r)) next.push_back(std::move(*m));
        if (auto* s = std::get_if<musig::MultiSig>(&r)) sig = *s;
      }
      outbox = std::move(next);
    }
    algebra::CounterSpan vspan;
    const bool ok = musig::verify(*suite, *sig, roster, msg);
    const auto vops = vspan.elapsed();
    // The aggregate's wire form: one group element and one scalar.
    const std::size_t group_elements = sig->rc.empty() ? 0 : 1;
    const std::size_t scalars = sig->ms.valid() ? 1 : 0;
    rows.push_back({n, own.exponentiations, vops.exponentiations, vops.hashes, group_elements, scalars, ok,
                    millis_since(start)});
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<EncryptRow>& enc, const std::vector<SignRow>& sig) {
  out << kBenchCsvHeader << '\n';
  for (const auto& r : enc) {
    out << "encrypt," << r.levels << ',' << r.leaves << ",," << r.exponentiations << ','
        << r.multiplications << ',' << r.ciphertext_elements << ",,,,,,," << std::fixed
        << std::setprecision(3) << r.millis << '\n';
  }
  for (const auto& r : sig) {
    out << "sign,,," << r.signers << ",,,," << r.sign_exp_per_signer << ',' << r.verify_exponentiations
        << ',' << r.verify_hashes << ',' << r.signature_group_elements << ',' << r.signature_scalars << ','
        << (r.verified ? "true" : "false") << ',' << std::fixed << std::setprecision(3) << r.millis << '\n';
  }
}

void write_table(std::ostream& out, const std::vector<EncryptRow>& enc, const std::vector<SignRow>& sig) {
  if (!enc.empty()) {
    out << "encryption\n"
        << std::setw(7) << "levels" << std::setw(8) << "leaves" << std::setw(6) << "exp" << std::setw(6)
        << "mult" << std::setw(10) << "elements" << std::setw(11) << "ms" << '\n';
    for (const auto& r : enc) {
      out << std::setw(7) << r.levels << std::setw(8) << r.leaves << std::setw(6) << r.exponentiations
          << std::setw(6) << r.multiplications << std::setw(10) << r.ciphertext_elements << std::setw(11)
          << std::fixed << std::setprecision(3) << r.millis << '\n';
    }
  }
  if (!sig.empty()) {
    out << "signing\n"
        << std::setw(8) << "signers" << std::setw(10) << "sign_exp" << std::setw(12) << "verify_exp"
        << std::setw(14) << "verify_hash" << std::setw(11) << "sig_size" << std::setw(10) << "verified"
        << std::setw(11) << "ms" << '\n';
    for (const auto& r : sig) {
      out << std::setw(8) << r.signers << std::setw(10) << r.sign_exp_per_signer << std::setw(12)
          << r.verify_exponentiations << std::setw(14) << r.verify_hashes << std::setw(11)
          << (std::to_string(r.signature_group_elements) + "G+" + std::to_string(r.signature_scalars) + "Zp")
          << std::setw(10) << (r.verified ? "yes" : "no") << std::setw(11) << std::fixed
          << std::setprecision(3) << r.millis << '\n';
    }
  }
}

}  // namespace etenon::cli
