/*
   Copyright 2026 the ringnet authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef RINGNET_REPORT_HPP
#define RINGNET_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "ringnet/network.hpp"

namespace ringnet {

/// Everything `net analyze` reports: fixed points and attractors for
/// autonomous networks; control fixed points, reachability, stabilization,
/// synchronization and observability for control networks.
struct AnalysisReport {
  std::string ring_name;
  int k = 0, n = 0, m = 0, p = 0;
  long long states = 0;

  std::vector<int> fixed_points;
  std::vector<Cycle> attractors;

  std::vector<int> control_fixed_points;
  std::vector<int> globally_reachable;
  bool completely_controllable = false;
  std::vector<int> stabilizable_targets;  // subset of control fixed points
  std::vector<int> sync_targets;          // ring labels
  std::optional<ObservabilityResult> obs;
  bool pure_control_terms = false;
};

AnalysisReport analyze(const Network& net, const CompileOptions& opt = {});

/// Human-readable tuple for a packed state index: (v1,...,vn).
std::string state_tuple(int k, int n, int index);

}  // namespace ringnet

#endif
