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

#include "etenon/workflow/system.hpp"

#include <set>

#include "etenon/error.hpp"
#include "etenon/mlabe/serialize.hpp"

namespace etenon::workflow {

std::string_view to_string(Role r) {
  switch (r) {
    case Role::kCta: return "cta";
    case Role::kAa: return "aa";
    case Role::kDo: return "do";
    case Role::kSp: return "sp";
    case Role::kTdb: return "tdb";
    case Role::kDu: return "du";
  }
  return "?";
}

Role role_from_string(std::string_view s) {
  for (Role r : {Role::kCta, Role::kAa, Role::kDo, Role::kSp, Role::kTdb, Role::kDu}) {
    if (to_string(r) == s) return r;
  }
  throw InvalidArgument("unknown role '" + std::string(s) + "'");
}

Entity& System::entity(const std::string& name) {
  const auto it = entities.find(name);
  if (it == entities.end()) throw InvalidArgument("no entity named '" + name + "'");
  return it->second;
}

const Entity& System::entity(const std::string& name) const {
  const auto it = entities.find(name);
  if (it == entities.end()) throw InvalidArgument("no entity named '" + name + "'");
  return it->second;
}

std::string System::only(Role role) const {
  std::string found;
  for (const auto& [name, e] : entities) {
    if (e.role != role) continue;
    if (!found.empty()) throw InvalidArgument("more than one " + std::string(to_string(role)));
    found = name;
  }
  if (found.empty()) throw InvalidArgument("no " + std::string(to_string(role)) + " entity");
  return found;
}

namespace {

bool keyed(Role r) { return r == Role::kDo || r == Role::kSp || r == Role::kDu; }

void deliver_key(System& sys, const std::string& aa, const EntitySpec& spec) {
  if (spec.attributes.empty()) {
    throw InvalidArgument("entity '" + spec.name + "' needs at least one attribute");
  }
  auto keys = mlabe::keygen(sys.pp, *sys.aa_master_key, spec.attributes, sys.rng);
  sys.bus.send({aa, spec.name, "key_bundle", mlabe::to_json(*sys.pp.suite, keys)});
  const auto msg = sys.bus.expect(spec.name, aa, "key_bundle");
  sys.entity(spec.name).keys = mlabe::key_bundle_from_json(*sys.pp.suite, msg.body);
}

}  // namespace

System phase_setup(algebra::SuitePtr suite, const std::vector<EntitySpec>& entities, algebra::Rng rng,
                   std::optional<std::filesystem::path> tdb_log) {
  System sys{{}, {}, nullptr, {}, std::move(rng), std::nullopt};
  for (const auto& spec : entities) {
    if (spec.name.empty()) throw InvalidArgument("entity without a name");
    if (!sys.entities.emplace(spec.name, Entity{spec.name, spec.role, spec.attributes, {}, {}}).second) {
      throw InvalidArgument("duplicate entity '" + spec.name + "'");
    }
  }
  const std::string cta = sys.only(Role::kCta);
  const std::string aa = sys.only(Role::kAa);
  const std::string tdb_name = sys.only(Role::kTdb);

  // CTA: fresh parameters. The master key leaves the CTA in one message.
  {
    auto [pp, msk] = mlabe::setup(std::move(suite), sys.rng);
    sys.pp = pp;
    sys.bus.send({cta, aa, "master_key", mlabe::to_json(*pp.suite, msk)});
  }
  sys.aa_master_key = mlabe::master_key_from_json(*sys.pp.suite, sys.bus.expect(aa, cta, "master_key").body);

  const auto pp_json = mlabe::to_json(sys.pp);
  for (auto& [name, e] : sys.entities) {
    if (name == cta) {
      e.pp = sys.pp;
      continue;
    }
    sys.bus.send({cta, name, "public_params", pp_json});
    e.pp = mlabe::public_params_from_json(sys.bus.expect(name, cta, "public_params").body);
  }

  for (const auto& spec : entities) {
    if (keyed(spec.role)) deliver_key(sys, aa, spec);
  }

  if (tdb_log) {
    sys.tdb = tdb::Database::open(*sys.entity(tdb_name).pp, sys.rng.fork("tdb"), *tdb_log);
  } else {
    sys.tdb = std::make_unique<tdb::Database>(*sys.entity(tdb_name).pp, sys.rng.fork("tdb"));
  }
  return sys;
}

void issue_key(System& sys, const EntitySpec& spec) {
  if (!keyed(spec.role)) throw InvalidArgument("role does not hold keys");
  if (!sys.aa_master_key) throw InvalidArgument("system has no attribute authority key");
  const std::string aa = sys.only(Role::kAa);
  const std::string cta = sys.only(Role::kCta);
  if (!sys.entities.emplace(spec.name, Entity{spec.name, spec.role, spec.attributes, {}, {}}).second) {
    throw InvalidArgument("duplicate entity '" + spec.name + "'");
  }
  sys.bus.send({cta, spec.name, "public_params", mlabe::to_json(sys.pp)});
  sys.entity(spec.name).pp =
      mlabe::public_params_from_json(sys.bus.expect(spec.name, cta, "public_params").body);
  deliver_key(sys, aa, spec);
}

}  // namespace etenon::workflow
