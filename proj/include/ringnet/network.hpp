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

#ifndef RINGNET_NETWORK_HPP
#define RINGNET_NETWORK_HPP

#include <optional>
#include <string>
#include <vector>

#include "ringnet/poly.hpp"
#include "ringnet/ring.hpp"

namespace ringnet {

/// Polynomial (control) network over a finite ring. m = p = 0 gives the
/// autonomous case; outputs never contain control atoms.
struct Network {
  RingPtr ring;
  int n = 0, m = 0, p = 0;
  std::vector<Expr> dynamics;  // n expressions
  std::vector<Expr> outputs;   // p expressions
  std::vector<std::string> state_names, input_names, output_names;
  std::string ring_directive;  // original `ring ...` spec when parsed
  bool crt_literals = false;

  bool is_control() const { return m > 0 || p > 0; }
  void validate() const;
};

/// Algebraic state-space representation. For control networks the input
/// vector precedes the state vector: x(t+1) = L u(t) x(t).
struct Assr {
  int k = 0;
  int n = 0, m = 0, p = 0;
  LogicalMatrix M;                  // k^n x (k^m * k^n)
  std::vector<LogicalMatrix> node;  // per-node k x (k^m * k^n)
  LogicalMatrix E;                  // k^p x k^n when p > 0
  std::vector<LogicalMatrix> out;   // per-output k x k^n

  long long state_count() const;
  long long input_count() const;
};

struct CompileOptions {
  std::size_t budget = 1'000'000;  // max columns of the compiled transition matrix
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Brute-force compilation: one column per (input, state) pair via eval_poly.
Assr compile_assr(const Network& net, const CompileOptions& opt = {});

/// Independent symbolic path: composes structure matrices bottom-up with
/// Kronecker products, swap and power-reducing matrices. Must agree with
/// compile_assr column-by-column.
Assr compile_assr_symbolic(const Network& net, const CompileOptions& opt = {});

/// 1-based mixed-radix packing of per-node labels into a state index.
int pack_state(int k, std::span<const int> labels);
std::vector<int> unpack_state(int k, int n, int index);

std::vector<int> trajectory(const LogicalMatrix& m, int x0, int steps);
/// Controlled trajectory; controls are packed input indices, one per step.
std::vector<int> trajectory(const Assr& assr, int x0, std::span<const int> controls);
/// Label-tuple trajectory straight off the expressions (no compilation).
std::vector<std::vector<int>> trajectory_eval(const Network& net, std::vector<int> x0,
                                              const std::vector<std::vector<int>>& controls, int steps);

std::vector<int> fixed_points(const LogicalMatrix& m);

struct Cycle {
  std::vector<int> states;  // in cycle order, starting from the smallest
  long long basin = 0;      // number of states whose orbit enters this cycle
};

std::vector<Cycle> attractors(const LogicalMatrix& m);

/// Boolean one-step transition sum_B L delta_u over all inputs.
BooleanMatrix control_transition(const Assr& assr);

std::vector<int> control_fixed_points(const Assr& assr);

struct ControllabilityResult {
  BooleanMatrix C;
  std::vector<int> globally_reachable;  // states whose row of C is all ones
  bool completely_controllable = false;
};

ControllabilityResult controllability(const Assr& assr);

bool stabilizable_to(const Assr& assr, int target_state);

/// Diagonal ring labels a with (a, ..., a) stabilizable.
std::vector<int> synchronizable(const Assr& assr);

int diagonal_state(int k, int n, int label);

struct ObservabilityResult {
  // Outputs observed from t = 0 on: a pair is distinguishable when its
  // outputs already differ or some control sequence makes them differ.
  bool observable = false;
  std::vector<std::pair<int, int>> indistinguishable;  // i < j
  // Variant matching the auxiliary-network closure, which scores output
  // differences only after the first transition (t >= 1).
  bool observable_post = false;
  std::vector<std::pair<int, int>> indistinguishable_post;
};

ObservabilityResult observability(const Assr& assr, const CompileOptions& opt = {});

/// True if some dynamics polynomial has a pure control term, i.e. the
/// all-zero state is not mapped to zero under every input.
bool has_pure_control_terms(const Network& net);

}  // namespace ringnet

#endif
