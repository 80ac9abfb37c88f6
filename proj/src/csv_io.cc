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

#include "costeval/csv_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "costeval/errors.h"

namespace costeval {

absl::StatusOr<CsvDataset> ParseScoredCsv(absl::string_view text) {
  CsvDataset result;
  bool header_seen = false;
  int line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    std::vector<absl::string_view> fields = absl::StrSplit(line, ',');
    for (auto& field : fields) field = absl::StripAsciiWhitespace(field);
    if (!header_seen) {
      if (fields.size() != 2 || fields[0] != "score" || fields[1] != "label") {
        return MakeError(ErrorKind::kParseError,
                         absl::StrFormat("line %d: expected header "
                                         "\"score,label\"",
                                         line_number));
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 2) {
      return MakeError(ErrorKind::kParseError,
                       absl::StrFormat("line %d: expected 2 fields, got %d",
                                       line_number, fields.size()));
    }
    double score;
    if (!absl::SimpleAtod(fields[0], &score)) {
      return MakeError(ErrorKind::kParseError,
                       absl::StrFormat("line %d: invalid score \"%s\"",
                                       line_number, fields[0]));
    }
    if (!std::isfinite(score)) {
      return MakeError(ErrorKind::kNonFiniteScore,
                       absl::StrFormat("line %d: non-finite score \"%s\"",
                                       line_number, fields[0]));
    }
    int label;
    if (fields[1] == "0") {
      label = kClass0;
    } else if (fields[1] == "1") {
      label = kClass1;
    } else {
      return MakeError(ErrorKind::kParseError,
                       absl::StrFormat("line %d: label must be 0 or 1, got "
                                       "\"%s\"",
                                       line_number, fields[1]));
    }
    result.dataset.samples.push_back({score, label});
    result.raw_scores.emplace_back(fields[0]);
  }
  if (!header_seen) {
    return MakeError(ErrorKind::kParseError, "missing \"score,label\" header");
  }
  return result;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrFormat("cannot open \"%s\"", path));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, absl::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrFormat("cannot write \"%s\"", path));
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrFormat("write to \"%s\" failed", path));
  }
  return absl::OkStatus();
}

absl::StatusOr<CsvDataset> ReadScoredCsv(const std::string& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  return ParseScoredCsv(*text);
}

std::string FormatCsvNumber(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0) return "0";
  return absl::StrFormat("%.9g", value);
}

std::string FormatRoundTripNumber(double value) {
  if (value == 0) return "0";
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

}  // namespace costeval
