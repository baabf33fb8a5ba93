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

#ifndef RINGNET_DECOMPOSE_HPP
#define RINGNET_DECOMPOSE_HPP

#include <optional>
#include <string>
#include <vector>

#include "ringnet/network.hpp"
#include "ringnet/parser.hpp"

namespace ringnet {

/// Precondition failure of a restriction/decomposition check: distinct from
/// a negative verdict.
struct RestrictionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Replace every coefficient a by pi(phi(a)); structure unchanged. For
/// control networks the same map applies to the output coefficients. The
/// ideal must be proper (phi present).
Network subnetwork_over_ideal(const Network& net, const Ideal& ideal);

/// Checks pi(z(t, s0)) = x(t, pi(s0)) componentwise for t <= steps, where z
/// runs on the parent ring and x on the essential ring of the ideal.
/// s0 and controls are member labels of the parent ring. Controls outside
/// the ideal are allowed only when no dynamics polynomial has a pure
/// control term; violations throw RestrictionError.
bool verify_ideal_restriction(const Network& net, const Ideal& ideal, const std::vector<int>& s0,
                              const std::vector<std::vector<int>>& controls, int steps);

/// Coefficient-wise projection onto factor i; Var/Ctrl structure unchanged.
Network project_network(const Network& net, int factor);

/// Pairwise product of two equally sized autonomous networks: node (a, b)
/// of the result carries the pair (node a of the first, node b of the
/// second) over the product ring, coefficients embedded factor-wise.
Network product_network(const Network& a, const Network& b);

struct DecompositionReport {
  std::vector<Network> factor_nets;
  std::vector<Assr> factor_assrs;
  LogicalMatrix combined;  // recombined from the factor maps
  LogicalMatrix original;
  bool transition_equal = false;
  std::optional<bool> output_equal;  // present when the network has outputs
  std::vector<std::vector<int>> factor_fixed_points;  // autonomous factors only
  bool equal() const { return transition_equal && output_equal.value_or(true); }
};

DecompositionReport verify_decomposition(const Network& net, const CompileOptions& opt = {});

struct CombinedQuery {
  enum class Kind { Controllable, Synchronizable, Observable };
  Kind kind = Kind::Observable;
  int z0 = 0, zd = 0;      // global state indices, for Controllable
  int target_label = 0;    // ring label, for Synchronizable
};

struct CombinedVerdict {
  std::vector<bool> factor;
  bool combined = false;
  std::optional<bool> direct;  // absent when the direct check exceeded the budget
  bool cross_check_agrees = true;
  // Observability extras (combined pair sets over global states, i < j):
  std::vector<std::pair<int, int>> pairs, pairs_post;
  std::optional<bool> direct_post;
};

/// Per-factor verdicts on the projected systems plus their combination;
/// cross-checked against the unprojected system when it fits the budget.
CombinedVerdict combined_control_verdicts(const Network& net, const CombinedQuery& query,
                                          const CompileOptions& opt = {});

/// Entrywise projection of A, B, C onto factor i.
LinearNetwork project_linear(const LinearNetwork& lin, int factor);

/// ASSR of a linear network over a prime field, built symbolically from
/// row-wise chained structure matrices and cross-checked against the
/// brute-force matrix-arithmetic compilation.
Assr linear_assr(const LinearNetwork& lin, const CompileOptions& opt = {});

/// Equivalent polynomial network (for the generic compilation path).
Network linear_to_network(const LinearNetwork& lin);

struct LinearControllabilityReport {
  std::vector<LinearNetwork> factors;
  std::vector<ControllabilityResult> factor_results;
  std::vector<bool> factor_verdicts;
  bool combined = false;
};

LinearControllabilityReport linear_controllability(const LinearNetwork& lin, const CompileOptions& opt = {});

}  // namespace ringnet

#endif
