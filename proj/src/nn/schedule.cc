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

#include "scopeit/nn/schedule.h"

namespace scopeit::nn {

ScheduleDecision schedule_epoch(double val_loss, LrSchedule& sched) {
  ScheduleDecision d;
  if (val_loss < sched.best - sched.tolerance) {
    sched.best = val_loss;
    sched.epochs_since_improvement = 0;
    sched.epochs_since_anneal = 0;
    d.improved = true;
  } else {
    ++sched.epochs_since_improvement;
    ++sched.epochs_since_anneal;
    if (sched.epochs_since_anneal >= sched.plateau_patience) {
      sched.lr *= sched.anneal_factor;
      sched.epochs_since_anneal = 0;
      d.annealed = true;
    }
    d.stop = sched.epochs_since_improvement >= sched.early_stop_patience;
  }
  d.lr = sched.lr;
  return d;
}

}  // namespace scopeit::nn
