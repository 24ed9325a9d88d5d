/* Copyright 2026 The HIO Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef HIO_SCENARIO_IO_H_
#define HIO_SCENARIO_IO_H_

#include <iosfwd>
#include <string>

#include "hio/plan.h"
#include "hio/scenario.h"

namespace hio {

inline constexpr int kSchemaVersion = 1;

// Scenario files are JSON documents; see docs/scenario_format.md.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text);
std::string serialize_scenario(const Scenario& s, int indent = 2);
void save_scenario(const Scenario& s, const std::string& path);

// SHA-256 over the canonical serialization, as lowercase hex. Independent of
// key order and whitespace in the source file.
std::string canonical_hash(const Scenario& s);

// Plans are flat `key = value` text; fractions carry 17 significant digits.
std::string serialize_plan(const Plan& p);
void write_plan(const Plan& p, std::ostream& out);
Plan parse_plan(const std::string& text);
Plan load_plan(const std::string& path);

}  // namespace hio

#endif  // HIO_SCENARIO_IO_H_
