// Copyright 2026 The qsuper Authors
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

#ifndef QSUPER_VERDICT_HPP_
#define QSUPER_VERDICT_HPP_

#include <algorithm>
#include <string>
#include <vector>

namespace qsuper {

struct Residual {
  std::string name;
  double value = 0.0;
};

// Outcome of a structural check: every residual must stay within tol.
struct Verdict {
  bool passed = true;
  double tol = 0.0;
  std::vector<Residual> residuals;

  void record(std::string name, double value) {
    residuals.push_back({std::move(name), value});
    if (!(value <= tol)) passed = false;
  }
  double worst() const {
    double w = 0.0;
    for (const auto& r : residuals) w = std::max(w, r.value);
    return w;
  }
};

}  // namespace qsuper

#endif  // QSUPER_VERDICT_HPP_
