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

#ifndef SCOPEIT_NN_SCHEDULE_H_
#define SCOPEIT_NN_SCHEDULE_H_

#include <limits>

namespace scopeit::nn {

// Reduce-on-plateau annealing plus early stopping, both keyed on
// validation loss. An epoch improves when its loss is below best - tolerance.
struct LrSchedule {
  double lr = 1e-4;
  double anneal_factor = 0.5;
  int plateau_patience = 5;
  int early_stop_patience = 8;
  double tolerance = 1e-6;

  double best = std::numeric_limits<double>::infinity();
  int epochs_since_improvement = 0;
  // Restarts after every anneal so the next one needs a fresh plateau.
  int epochs_since_anneal = 0;
};

struct ScheduleDecision {
  double lr = 0;
  bool stop = false;
  bool improved = false;
  bool annealed = false;
};

ScheduleDecision schedule_epoch(double val_loss, LrSchedule& sched);

}  // namespace scopeit::nn

#endif  // SCOPEIT_NN_SCHEDULE_H_
