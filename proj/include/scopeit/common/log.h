// Copyright 2026 The ScopeIt Authors.
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

#ifndef SCOPEIT_COMMON_LOG_H_
#define SCOPEIT_COMMON_LOG_H_

#include <spdlog/spdlog.h>

namespace scopeit {

// Configures the default spdlog logger from SCOPEIT_LOG (error | info |
// debug). Unset or unknown values select info. Output goes to stderr.
void init_logging();

}  // namespace scopeit

#endif  // SCOPEIT_COMMON_LOG_H_
