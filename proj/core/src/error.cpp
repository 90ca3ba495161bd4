// Copyright 2026 The Forgeline Authors
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

#include "forgeline/error.hpp"

namespace forgeline {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::WrongShape: return "WrongShape";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidSchedule: return "InvalidSchedule";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::BandTooWide: return "BandTooWide";
    case ErrorCode::InvalidBand: return "InvalidBand";
    case ErrorCode::InvalidOverlap: return "InvalidOverlap";
    case ErrorCode::InvalidScale: return "InvalidScale";
    case ErrorCode::EmptyKeyList: return "EmptyKeyList";
    case ErrorCode::DegenerateIntrinsics: return "DegenerateIntrinsics";
    case ErrorCode::NonDivisibleShape: return "NonDivisibleShape";
    case ErrorCode::InvalidMotionParams: return "InvalidMotionParams";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::BadTrajectory: return "BadTrajectory";
    case ErrorCode::NotImplemented: return "NotImplemented";
    case ErrorCode::InvalidKind: return "InvalidKind";
    case ErrorCode::TooFewFrames: return "TooFewFrames";
    case ErrorCode::EmptyImage: return "EmptyImage";
    case ErrorCode::MissingScore: return "MissingScore";
    case ErrorCode::MalformedTask: return "MalformedTask";
    case ErrorCode::EmptyBatch: return "EmptyBatch";
    case ErrorCode::IncompleteCaptionSet: return "IncompleteCaptionSet";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::OneStyleMissing: return "OneStyleMissing";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::BadMessage: return "BadMessage";
    case ErrorCode::QueueOverflow: return "QueueOverflow";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_io_error(ErrorCode code) noexcept { return code == ErrorCode::IoError; }

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code), detail_(detail) {}

}  // namespace forgeline
