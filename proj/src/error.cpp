// Copyright 2026 The costshare Authors
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

#include "costshare/error.hpp"

namespace costshare {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidSegment: return "InvalidSegment";
    case ErrorCode::ZeroCostSegment: return "ZeroCostSegment";
    case ErrorCode::DecreasingCost: return "DecreasingCost";
    case ErrorCode::NotNondecreasing: return "NotNondecreasing";
    case ErrorCode::NoFiniteCost: return "NoFiniteCost";
    case ErrorCode::InfeasibleDemand: return "InfeasibleDemand";
    case ErrorCode::OverCapacity: return "OverCapacity";
    case ErrorCode::UnrankedSegment: return "UnrankedSegment";
    case ErrorCode::TooFew: return "TooFew";
    case ErrorCode::WrongMechanism: return "WrongMechanism";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::MissingProbabilities: return "MissingProbabilities";
    case ErrorCode::ZeroProbability: return "ZeroProbability";
    case ErrorCode::MissingDisruptors: return "MissingDisruptors";
    case ErrorCode::ConstructionNotStable: return "ConstructionNotStable";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NoEquilibrium: return "NoEquilibrium";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvariantViolated: return "InvariantViolated";
  }
  return "Unknown";
}

}  // namespace costshare
