// Copyright 2026 The Authors.
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

#ifndef NONSUBMAX_INSTANCE_IO_HPP_
#define NONSUBMAX_INSTANCE_IO_HPP_

#include <string>

#include "nonsubmax/problem.hpp"

namespace nonsubmax {

// Instance files are UTF-8 JSON:
//
//   {
//     "blocks": [["a", "b"], ["c"]],
//     "objective": {"kind": "modular", "weights": {"a": 3.0, "b": 2.0, "c": 5.0}},
//     "constraints": [
//       {"kind": "modular", "scope_block": 0, "budget": 2.0,
//        "payload": {"weights": {"a": 2.0, "b": 1.0}}},
//       {"kind": "latency", "scope_block": 1, "budget": 1.0,
//        "payload": {"compute": [0.0], "transmit": [1.0]}}
//     ],
//     "disjoint_blocks": true,
//     "shared_identity": {"b": "y", "c": "y"}   // optional
//   }
//
// Objective kinds: modular, cardinality, coverage, table, kalman.
// Constraint kinds: modular, cardinality, coverage, table, latency.
// Unknown kinds are rejected. See the README for the full field reference.
ProblemInstance parse_instance_text(const std::string& json_text);
ProblemInstance load_instance_file(const std::string& path);

// Serializes an instance built from the builtin kinds back to the schema
// above, with generated element labels. Parsing the output yields a
// behaviorally identical instance.
std::string instance_to_json(const ProblemInstance& instance);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace nonsubmax

#endif  // NONSUBMAX_INSTANCE_IO_HPP_
