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

#ifndef RINGNET_REPRESENT_HPP
#define RINGNET_REPRESENT_HPP

#include <vector>

#include "ringnet/network.hpp"

namespace ringnet {

/// Field indicator polynomial: evaluates to 1 at alpha and 0 elsewhere.
struct IndexPolynomial {
  int k = 0;      // prime field size
  int alpha = 0;  // target value in [0, k-1]
  Expr expr;      // in Var(1)
};

/// Gamma_alpha(x) = prod_{j != alpha} (alpha - j)^{-1} (x - j) over Z_k.
IndexPolynomial gamma_poly(int k, int alpha);

/// Same construction with an arbitrary argument expression.
Expr gamma_expr(int k, int alpha, const Expr& argument);

/// Interpolating polynomial of a d-ary function table over the prime field
/// Z_k. The table is indexed by pack_state over argument labels.
Expr interpolate_prime(int k, int arity, const std::vector<int>& table);

/// Minimum adequate set of k-valued logic: the binary operator M_phi
/// (k x k^2, blocks max(i, sigma(j)) for the cyclic sigma) and the unary
/// M_gamma = d_k[1,1,2,...,k-1].
std::pair<LogicalMatrix, LogicalMatrix> adequate_set(int k);

/// A kappa-valued transition map realized as a polynomial network over the
/// prime product ring Z^kappa, with factor arithmetic reached through proj
/// atoms. Construction is verified by recompiling the network.
struct Representation {
  std::vector<LogicalMatrix> source;  // per-node maps kappa x kappa^n
  RingPtr ring;                       // Z^kappa
  Network net;
  Assr assr;  // recompiled; equals the source exactly
};

Representation represent_map(const LogicalMatrix& map, const CompileOptions& opt = {});
Representation represent_nodes(const std::vector<LogicalMatrix>& node_maps, int kappa,
                               const CompileOptions& opt = {});
/// Re-expresses an arbitrary network over any carrier of size kappa.
Representation represent_network(const Network& net, const CompileOptions& opt = {});

}  // namespace ringnet

#endif
