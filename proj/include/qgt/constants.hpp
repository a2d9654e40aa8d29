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

#ifndef QGT_CONSTANTS_HPP
#define QGT_CONSTANTS_HPP

namespace qgt {

// CODATA 2018 reduced Planck constant, J s.
inline constexpr double hbar = 1.054571817e-34;

inline constexpr double pi = 3.1415926535897932384626433832795;

inline constexpr double two_pi = 6.283185307179586476925286766559;

}  // namespace qgt

#endif
