// Copyright 2026 The kolmo Authors
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

#ifndef KOLMO_ORACLES_HPP
#define KOLMO_ORACLES_HPP

#include <string>
#include <vector>

namespace kolmo::oracle {

/// Outcome of one brute-force cross-check: the largest deviation between the
/// library result and an independent evaluation, against a fixed tolerance.
struct Result {
  std::string name;
  std::string description;
  double error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

const std::vector<std::string>& names();

/// Throws Error(Validation) for an unknown name.
Result run(const std::string& name);

// Individual oracles.
Result series();
Result convolution();
Result fd_rhs();
Result homogeneous();
Result partition();
Result leray();
Result pressure();
Result lp_mode();
Result vacuum();

}  // namespace kolmo::oracle

#endif  // KOLMO_ORACLES_HPP
