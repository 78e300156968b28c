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

#include "etenon/workflow/scenario.hpp"

#include "etenon/error.hpp"
#include "etenon/policy/parser.hpp"
#include "etenon/workflow/agreement.hpp"
#include "etenon/workflow/retrieval.hpp"

namespace etenon::workflow {

using nlohmann::json;

json run_scenario(const json& s) {
  try {
    std::vector<EntitySpec> specs;
    for (const auto& e : s.at("entities")) {
      EntitySpec spec{e.at("name").get<std::string>(), role_from_string(e.at("role").get<std::string>()), {}};
      for (const auto& a : e.value("attributes", json::array())) spec.attributes.insert(a.get<std::string>());
      specs.push_back(std::move(spec));
    }
    auto suite = algebra::suite_from_id(s.value("suite", "mock"));
    System sys = phase_setup(suite, specs, algebra::Rng::from_seed(s.value("seed", std::uint64_t{1})));

    const auto tree = policy::parse_policy(s.at("policy").get<std::string>());
    tenon::EhrRecord record;
    for (const auto& c : s.at("record")) {
      record.columns.push_back({c.at(0).get<std::string>(), c.at(1).get<std::string>(), {}, false});
    }
    AgreementOptions base;
    base.column_levels = s.at("column_levels").get<std::map<std::string, policy::LevelId>>();
    base.access_label = s.value("access_label", base.access_label);
    base.timestamp = s.value("timestamp", base.timestamp);

    json agreements = s.value("agreements", json::array());
    if (agreements.empty()) {
      agreements.push_back({{"do", sys.only(Role::kDo)}, {"sp", sys.only(Role::kSp)}});
    }

    bool passed = true;
    json out_agreements = json::array();
    std::vector<std::string> entries;
    for (const auto& a : agreements) {
      AgreementOptions opt = base;
      opt.tamper = tamper_from_string(a.value("tamper", "none"));
      json result{{"do", a.at("do")}, {"sp", a.at("sp")}, {"tamper", to_string(opt.tamper)}};
      try {
        const auto tr = run_agreement(sys, a.at("do").get<std::string>(), a.at("sp").get<std::string>(),
                                      record, tree, opt);
        const bool identical = tr.verdict == Verdict::kIdentical;
        result["verdict"] = identical ? "identical" : "refused";
        result["signatures"] = tr.signature_count();
        if (!identical) result["mismatch"] = tr.mismatch;
        if (identical) {
          const auto outcome = submit(sys, tr);
          result["ingest"] = {{"accepted", outcome.accepted}, {"item", outcome.item}, {"reason", outcome.reason}};
          if (outcome.accepted) {
            entries.push_back(tr.batch->secret.entry_id);
            result["entry_id"] = tr.batch->secret.entry_id;
          }
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kAgreementImpossible) throw;
        result["verdict"] = "impossible";
        result["signatures"] = 0;
        result["error"] = e.what();
      }
      if (a.contains("expect") && a.at("expect") != result["verdict"]) {
        result["expectation_failed"] = true;
        passed = false;
      }
      out_agreements.push_back(std::move(result));
    }

    json out_retrievals = json::array();
    for (const auto& r : s.value("retrievals", json::array())) {
      const auto du = r.at("du").get<std::string>();
      for (const auto& id : entries) {
        const auto report = phase_retrieval(sys, du, id, r.value("access_label", base.access_label));
        json levels = json::array();
        for (const auto& [lid, l] : report.levels) {
          if (l.decrypted) levels.push_back(lid);
        }
        std::size_t verified = 0;
        for (const auto& row : report.rows) verified += row.verified ? 1 : 0;
        json ident = json::array();
        for (const auto& c : report.identifiable) ident.push_back({c.name, c.value});
        json result{{"du", du},
                    {"entry_id", id},
                    {"levels_decrypted", levels},
                    {"chains_recovered", report.chains_recovered()},
                    {"rows_verified", verified},
                    {"text", report.recovered_text()},
                    {"identifiable", ident}};
        if (r.contains("expect_chains") && r.at("expect_chains").get<std::size_t>() != report.chains_recovered()) {
          result["expectation_failed"] = true;
          passed = false;
        }
        out_retrievals.push_back(std::move(result));
      }
    }
    return {{"agreements", out_agreements}, {"retrievals", out_retrievals}, {"passed", passed}};
  } catch (const json::exception& e) {
    throw DecodeError(std::string("malformed scenario: ") + e.what());
  }
}

}  // namespace etenon::workflow
