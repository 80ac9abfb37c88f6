/*
 * Copyright 2026 The costeval Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "costeval/errors.h"

#include <array>
#include <string>

#include "absl/strings/str_cat.h"
#include "absl/strings/cord.h"

namespace costeval {
namespace {

constexpr char kPayloadUrl[] = "costeval/error_kind";

constexpr std::array<absl::string_view, 13> kNames = {
    "EmptyDataset",         "SingleClassDataset",  "NonFiniteScore",
    "ScoresOutOfUnitRange", "InvalidRate",         "InvalidArgument",
    "DegenerateSingleScore", "ZeroDensityPoint",   "NonConvexModel",
    "QuadratureFailure",    "UnknownModelName",    "ParseError",
    "IoError",
};

absl::StatusCode CodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnknownModelName:
    case ErrorKind::kIoError:
      return absl::StatusCode::kNotFound;
    case ErrorKind::kZeroDensityPoint:
    case ErrorKind::kNonConvexModel:
      return absl::StatusCode::kFailedPrecondition;
    case ErrorKind::kQuadratureFailure:
      return absl::StatusCode::kInternal;
    default:
      return absl::StatusCode::kInvalidArgument;
  }
}

}  // namespace

absl::string_view ErrorKindName(ErrorKind kind) {
  return kNames[static_cast<int>(kind)];
}

absl::Status MakeError(ErrorKind kind, absl::string_view message) {
  absl::Status status(CodeFor(kind),
                      absl::StrCat(ErrorKindName(kind), ": ", message));
  status.SetPayload(kPayloadUrl, absl::Cord(ErrorKindName(kind)));
  return status;
}

std::optional<ErrorKind> GetErrorKind(const absl::Status& status) {
  const auto payload = status.GetPayload(kPayloadUrl);
  if (!payload.has_value()) return std::nullopt;
  const std::string name(*payload);
  for (size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<ErrorKind>(i);
  }
  return std::nullopt;
}

bool IsInputError(const absl::Status& status) {
  return status.code() == absl::StatusCode::kInvalidArgument ||
         status.code() == absl::StatusCode::kNotFound ||
         status.code() == absl::StatusCode::kOutOfRange;
}

}  // namespace costeval
