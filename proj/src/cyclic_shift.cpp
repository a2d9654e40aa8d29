// Copyright 2026 The qgt authors
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

#include "qgt/cyclic_shift.hpp"

#include <algorithm>
#include <numeric>

#include "qgt/errors.hpp"

namespace qgt {

int normalize_shift(int dim, int shift) {
  if (dim < 2) throw ConfigError("qudit dimension must be at least 2");
  int m = shift % dim;
  if (m < 0) m += dim;        // now in [0, dim)
  if (2 * m > dim) m -= dim;  // balanced range (-dim/2, dim/2]
  return m;
}

std::vector<int> shift_sequence(int dim, int shift) {
  const int m = normalize_shift(dim, shift);
  if (m == 0) return {};
  if (m < 0) {
    std::vector<int> seq = shift_sequence(dim, -m);
    std::reverse(seq.begin(), seq.end());
    return seq;
  }
  const int g = std::gcd(m, dim);
  const int cycle_len = dim / g;
  std::vector<int> seq;
  seq.reserve(dim + g - 2);
  // Walk the cycle through 0 element by element; k m mod dim ends at dim - m.
  for (int k = 1; k < cycle_len; ++k) seq.push_back(k * m % dim);
  // Remaining cycles, buffered through 0.  Cycle elements offset from the
  // 0-cycle by c < g, and k m mod dim <= dim - g, so no second reduction.
  for (int c = 1; c < g; ++c) {
    seq.push_back(c);
    for (int k = 1; k < cycle_len; ++k) seq.push_back(k * m % dim + c);
    seq.push_back(c);
  }
  return seq;
}

int shift_sequence_length(int dim, int shift) {
  const int m = std::abs(normalize_shift(dim, shift));
  if (m == 0) return 0;
  return dim + std::gcd(m, dim) - 2;
}

std::vector<int> apply_shift_sequence(int dim, const std::vector<int>& sequence) {
  std::vector<int> image(dim);
  std::iota(image.begin(), image.end(), 0);
  for (int s : sequence) {
    if (s <= 0 || s >= dim) throw ConfigError("transposition level out of range");
    for (int& v : image) {
      if (v == 0)
        v = s;
      else if (v == s)
        v = 0;
    }
  }
  return image;
}

}  // namespace qgt
