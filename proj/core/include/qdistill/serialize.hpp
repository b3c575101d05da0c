// Copyright 2026 The qdistill authors
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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdistill/po_equivalence.hpp"
#include "qdistill/protocol.hpp"

/// JSON and CSV serialization.
///
/// All builders use nlohmann::ordered_json so that key order is the
/// insertion order fixed here, making serialized output canonical: equal
/// values produce byte-identical text.  Doubles are written in the shortest
/// form that round-trips exactly (both in JSON and in the CSV/table
/// formatters).
namespace qdistill {

using Json = nlohmann::ordered_json;

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

Json to_json(const FockBasisState& state);
Json to_json(const PureState& psi);
Json to_json(const DensityOperator& rho);
Json to_json(const DetectorSpec& detector);
Json to_json(const ProtocolConfig& config);
Json to_json(const IterationStats& stats);
Json to_json(const TrajectoryLog& log);

/// Trajectory logs are bulky and omitted unless requested.
Json to_json(const ProtocolResult& result, bool include_trajectories = false);

Json to_json(const SweepRow& row);
Json to_json(const ElementSpec& element);
Json to_json(const DetectorAction& action);
Json to_json(const PathStep& step);
Json to_json(const PathCertificate& certificate);

PureState pure_state_from_json(const Json& j);
DensityOperator density_from_json(const Json& j);
ProtocolResult protocol_result_from_json(const Json& j);
PathCertificate certificate_from_json(const Json& j);

/// CSV with header eps,eps_prime,p_lr,concurrence.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// Canonical single-line dump (no whitespace padding).
std::string canonical_dump(const Json& j);

}  // namespace qdistill
