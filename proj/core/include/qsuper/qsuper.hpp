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

#ifndef QSUPER_QSUPER_HPP_
#define QSUPER_QSUPER_HPP_

#include "qsuper/builders.hpp"
#include "qsuper/choi.hpp"
#include "qsuper/comb.hpp"
#include "qsuper/random.hpp"
#include "qsuper/spanning_family.hpp"
#include "qsuper/subspace.hpp"
#include "qsuper/superchannel.hpp"
#include "qsuper/tensor.hpp"
#include "qsuper/verdict.hpp"

#endif  // QSUPER_QSUPER_HPP_
