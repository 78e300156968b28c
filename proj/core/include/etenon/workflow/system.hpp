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

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "etenon/mlabe/mlabe.hpp"
#include "etenon/policy/access_tree.hpp"
#include "etenon/tdb/database.hpp"
#include "etenon/tenon/preprocess.hpp"
#include "etenon/workflow/bus.hpp"

namespace etenon::workflow {

enum class Role { kCta, kAa, kDo, kSp, kTdb, kDu };

std::string_view to_string(Role r);
/// "cta", "aa", "do", "sp", "tdb" or "du"; throws InvalidArgument otherwise.
Role role_from_string(std::string_view s);

struct EntitySpec {
  std::string name;
  Role role = Role::kDu;
  policy::AttributeSet attributes;
};

/// One actor. Key material depends on the role: DO, SP and DU hold a key
/// bundle from the AA; nobody but the AA keeps the master key.
struct Entity {
  std::string name;
  Role role = Role::kDu;
  policy::AttributeSet attributes;
  std::optional<mlabe::PublicParams> pp;
  std::optional<mlabe::KeyBundle> keys;
};

struct System {
  mlabe::PublicParams pp;
  std::map<std::string, Entity> entities;
  std::unique_ptr<tdb::Database> tdb;
  Bus bus;
  algebra::Rng rng;

  Entity& entity(const std::string& name);
  const Entity& entity(const std::string& name) const;
  /// Name of the single entity with `role`; throws InvalidArgument if there
  /// is not exactly one.
  std::string only(Role role) const;

  /// AA-side state. Kept apart from every other entity.
  std::optional<mlabe::MasterKey> aa_master_key;
};

/// CTA runs setup and hands the master key to the AA, which issues a key
/// bundle to each DO, SP and DU; pp is broadcast to all. Needs exactly one
/// CTA, AA and TDB. Throws InvalidArgument for a keyed role with no
/// attributes or a duplicate name.
System phase_setup(algebra::SuitePtr suite, const std::vector<EntitySpec>& entities, algebra::Rng rng,
                   std::optional<std::filesystem::path> tdb_log = std::nullopt);

/// AA issues a key bundle to an entity added after setup.
void issue_key(System& sys, const EntitySpec& spec);

}  // namespace etenon::workflow
