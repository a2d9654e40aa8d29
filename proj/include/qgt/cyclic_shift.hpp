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

#ifndef QGT_CYCLIC_SHIFT_HPP
#define QGT_CYCLIC_SHIFT_HPP

#include <vector>

namespace qgt {

// Wrap a shift amount into the balanced residue range (-dim/2, dim/2].
int normalize_shift(int dim, int shift);

// Sequence of two-level transpositions realizing the cyclic relabeling
// |s> -> |s + shift mod dim>.  Entry s denotes the transposition of levels
// (0, s); entries are applied left to right in time.  Uses
// dim + gcd(shift, dim) - 2 transpositions; a trivial shift is empty.
std::vector<int> shift_sequence(int dim, int shift);

// Number of transpositions shift_sequence(dim, shift) produces.
int shift_sequence_length(int dim, int shift);

// Permutation realized by a transposition sequence, in image form:
// result[s] is the level that |s> is mapped to.
std::vector<int> apply_shift_sequence(int dim, const std::vector<int>& sequence);

}  // namespace qgt

#endif
