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

// Brute-force reference computations used to cross-check the library.

#ifndef COSTEVAL_TESTS_TESTING_ORACLES_H_
#define COSTEVAL_TESTS_TESTING_ORACLES_H_

#include <algorithm>
#include <limits>
#include <vector>

#include "costeval/model.h"

namespace costeval::testing {

// Pair count over all (class 0, class 1) pairs, ties counted half.
inline double BruteForceAuc(const ScoredDataset& dataset) {
  double wins = 0;
  double pairs = 0;
  for (const Sample& a : dataset.samples) {
    if (a.label != kClass0) continue;
    for (const Sample& b : dataset.samples) {
      if (b.label != kClass1) continue;
      pairs += 1;
      if (a.score < b.score) wins += 1;
      if (a.score == b.score) wins += 0.5;
    }
  }
  return wins / pairs;
}

// Per-class CDFs at threshold t by direct counting.
inline std::pair<double, double> BruteForceCdfs(const ScoredDataset& dataset,
                                                double t) {
  double below0 = 0, below1 = 0, n0 = 0, n1 = 0;
  for (const Sample& s : dataset.samples) {
    if (s.label == kClass0) {
      n0 += 1;
      below0 += s.score <= t;
    } else {
      n1 += 1;
      below1 += s.score <= t;
    }
  }
  return {below0 / n0, below1 / n1};
}

// Minimal loss at cost proportion c over every threshold that changes a
// prediction, i.e. every score plus one threshold below all scores.
inline double BruteForceMinimalLoss(const ScoredDataset& dataset, double c,
                                    ClassWeights weights) {
  std::vector<double> thresholds = {-std::numeric_limits<double>::infinity()};
  for (const Sample& s : dataset.samples) thresholds.push_back(s.score);
  double best = std::numeric_limits<double>::infinity();
  for (double t : thresholds) {
    const auto [f0, f1] = BruteForceCdfs(dataset, t);
    best = std::min(best, 2.0 * (c * weights.class0 * (1.0 - f0) +
                                 (1.0 - c) * weights.class1 * f1));
  }
  return best;
}

// Rate-uniform loss by enumerating the n + 1 instance cutpoints. A cutpoint
// inside a run of tied scores yields the expected CDFs under a random order
// of the tied instances. The loss at each cutpoint is integrated over c in
// closed form: w0 (1 - F0) + w1 F1.
inline double BruteForceRateUniformLoss(const ScoredDataset& dataset,
                                        ClassWeights weights) {
  std::vector<Sample> sorted = dataset.samples;
  std::sort(sorted.begin(), sorted.end(),
            [](const Sample& a, const Sample& b) { return a.score < b.score; });
  const int n = static_cast<int>(sorted.size());
  double n0 = 0, n1 = 0;
  for (const Sample& s : sorted) (s.label == kClass0 ? n0 : n1) += 1;
  double total = 0;
  for (int cut = 0; cut <= n; ++cut) {
    double expected0 = 0, expected1 = 0;
    int i = 0;
    while (i < n) {
      int j = i;
      double ones = 0;
      while (j < n && sorted[j].score == sorted[i].score) {
        ones += sorted[j].label;
        ++j;
      }
      const double size = j - i;
      const double taken = std::clamp(static_cast<double>(cut - i), 0.0, size);
      expected1 += taken * ones / size;
      expected0 += taken * (size - ones) / size;
      i = j;
    }
    total += weights.class0 * (1.0 - expected0 / n0) +
             weights.class1 * expected1 / n1;
  }
  return total / (n + 1);
}

}  // namespace costeval::testing

#endif  // COSTEVAL_TESTS_TESTING_ORACLES_H_
