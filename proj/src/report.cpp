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

#include "ringnet/report.hpp"

#include <sstream>

namespace ringnet {

AnalysisReport analyze(const Network& net, const CompileOptions& opt) {
  AnalysisReport report;
  report.ring_name = net.ring->name;
  report.k = net.ring->k;
  report.n = net.n;
  report.m = net.m;
  report.p = net.p;

  const Assr assr = compile_assr(net, opt);
  report.states = assr.state_count();

  if (!net.is_control()) {
    report.fixed_points = fixed_points(assr.M);
    report.attractors = attractors(assr.M);
    return report;
  }

  report.pure_control_terms = has_pure_control_terms(net);
  report.control_fixed_points = control_fixed_points(assr);
  const ControllabilityResult c = controllability(assr);
  report.globally_reachable = c.globally_reachable;
  report.completely_controllable = c.completely_controllable;
  for (int fp : report.control_fixed_points) {
    if (c.C.row_all_ones(fp)) report.stabilizable_targets.push_back(fp);
  }
  report.sync_targets = synchronizable(assr);
  if (net.p > 0) report.obs = observability(assr, opt);
  return report;
}

std::string state_tuple(int k, int n, int index) {
  const std::vector<int> labels = unpack_state(k, n, index);
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < n; ++i) {
    if (i) os << ',';
    os << label_to_value(k, labels[static_cast<std::size_t>(i)]);
  }
  os << ')';
  return os.str();
}

}  // namespace ringnet
