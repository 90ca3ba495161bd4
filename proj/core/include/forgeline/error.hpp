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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace forgeline {

enum class ErrorCode {
  // core
  WrongShape,
  BadMagic,
  UnsupportedVersion,
  DimMismatch,
  TruncatedPayload,
  NonFinite,
  // denoise
  ShapeMismatch,
  InvalidSchedule,
  // seamless
  OddDimension,
  BandTooWide,
  InvalidBand,
  // tiled-sr
  InvalidOverlap,
  InvalidScale,
  // camera
  EmptyKeyList,
  DegenerateIntrinsics,
  NonDivisibleShape,
  InvalidMotionParams,
  UnknownKey,
  BadTrajectory,
  NotImplemented,
  // extend
  InvalidKind,
  TooFewFrames,
  EmptyImage,
  // curation
  MissingScore,
  MalformedTask,
  EmptyBatch,
  IncompleteCaptionSet,
  TooShort,
  OneStyleMissing,
  // cli-serve
  BadConfig,
  UnknownSession,
  BadMessage,
  QueueOverflow,
  // environment
  IoError,
};

std::string_view error_name(ErrorCode code) noexcept;

/// True for codes that signal a problem with the host environment (files,
/// sockets) rather than with the caller's input.
bool is_io_error(ErrorCode code) noexcept;

/// Every failure raised by the library. `what()` reads "<Name>: <detail>" so
/// diagnostics always carry the machine-readable error name first.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace forgeline
