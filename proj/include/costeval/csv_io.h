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

// Reading and writing "score,label" CSV files.

#ifndef COSTEVAL_CSV_IO_H_
#define COSTEVAL_CSV_IO_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "costeval/model.h"

namespace costeval {

struct CsvDataset {
  ScoredDataset dataset;
  // Score fields as they appeared in the file, in row order.
  std::vector<std::string> raw_scores;
};

// Parses CSV text with a "score,label" header. Errors mention the 1-based
// line number of the offending row.
absl::StatusOr<CsvDataset> ParseScoredCsv(absl::string_view text);

absl::StatusOr<CsvDataset> ReadScoredCsv(const std::string& path);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, absl::string_view content);

// Formats a float for CSV output (9 significant digits).
std::string FormatCsvNumber(double value);

// Shortest text that parses back to the same double. Used for score columns
// meant to be read again.
std::string FormatRoundTripNumber(double value);

}  // namespace costeval

#endif  // COSTEVAL_CSV_IO_H_
