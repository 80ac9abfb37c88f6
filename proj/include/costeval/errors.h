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

// Error kinds shared by all modules. Errors travel as absl::Status values
// carrying the kind as a payload so callers can branch on it.

#ifndef COSTEVAL_ERRORS_H_
#define COSTEVAL_ERRORS_H_

#include <optional>

#include "absl/status/status.h"
#include "absl/strings/string_view.h"

namespace costeval {

enum class ErrorKind {
  kEmptyDataset,
  kSingleClassDataset,
  kNonFiniteScore,
  kScoresOutOfUnitRange,
  kInvalidRate,
  kInvalidArgument,
  kDegenerateSingleScore,
  kZeroDensityPoint,
  kNonConvexModel,
  kQuadratureFailure,
  kUnknownModelName,
  kParseError,
  kIoError,
};

absl::string_view ErrorKindName(ErrorKind kind);

// Builds a status for "kind". Input-type errors map to kInvalidArgument (or
// kNotFound), computation errors to kFailedPrecondition or kInternal.
absl::Status MakeError(ErrorKind kind, absl::string_view message);

// Kind attached by MakeError, if any.
std::optional<ErrorKind> GetErrorKind(const absl::Status& status);

// True if the status represents bad user input rather than a failed
// computation.
bool IsInputError(const absl::Status& status);

}  // namespace costeval

#endif  // COSTEVAL_ERRORS_H_
