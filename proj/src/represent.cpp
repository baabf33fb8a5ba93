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

#include "ringnet/represent.hpp"

#include <stdexcept>

namespace ringnet {

namespace {

bool is_prime(int k) {
  if (k < 2) return false;
  for (int d = 2; d * d <= k; ++d)
    if (k % d == 0) return false;
  return true;
}

int mod_inverse(int a, int k) {
  a = ((a % k) + k) % k;
  for (int x = 1; x < k; ++x) {
    if (a * x % k == 1) return x;
  }
  throw std::invalid_argument("mod_inverse: not invertible");
}

long long ipow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

Expr gamma_expr(int k, int alpha, const Expr& argument) {
  if (!is_prime(k)) throw std::invalid_argument("gamma_expr: k must be prime");
  if (alpha < 0 || alpha >= k) throw std::invalid_argument("gamma_expr: alpha out of range");
  Expr acc;
  for (int j = 0; j < k; ++j) {
    if (j == alpha) continue;
    const int inv = mod_inverse(alpha - j, k);
    Expr factor = ex::mul(ex::cnst(value_to_label(k, inv)), ex::sub(argument, ex::cnst(value_to_label(k, j))));
    acc = acc ? ex::mul(std::move(acc), std::move(factor)) : std::move(factor);
  }
  return acc;
}

IndexPolynomial gamma_poly(int k, int alpha) {
  IndexPolynomial p;
  p.k = k;
  p.alpha = alpha;
  p.expr = gamma_expr(k, alpha, ex::var(1));
  return p;
}

Expr interpolate_prime(int k, int arity, const std::vector<int>& table) {
  if (!is_prime(k)) throw std::invalid_argument("interpolate_prime: k must be prime");
  if (arity < 1) throw std::invalid_argument("interpolate_prime: arity must be >= 1");
  const long long entries = ipow(k, arity);
  if (static_cast<long long>(table.size()) != entries) {
    throw std::invalid_argument("interpolate_prime: table size mismatch");
  }
  Expr acc;
  for (long long idx = 1; idx <= entries; ++idx) {
    const std::vector<int> args = unpack_state(k, arity, static_cast<int>(idx));
    Expr term;
    for (int r = 1; r <= arity; ++r) {
      Expr g = gamma_expr(k, label_to_value(k, args[static_cast<std::size_t>(r) - 1]), ex::var(r));
      term = term ? ex::mul(std::move(term), std::move(g)) : std::move(g);
    }
    term = ex::mul(std::move(term), ex::cnst(table[static_cast<std::size_t>(idx) - 1]));
    acc = acc ? ex::add(std::move(acc), std::move(term)) : std::move(term);
  }
  return acc;
}

std::pair<LogicalMatrix, LogicalMatrix> adequate_set(int k) {
  if (k < 2) throw std::invalid_argument("adequate_set: k must be >= 2");
  LogicalMatrix phi;
  phi.rows = k;
  phi.cols.resize(static_cast<std::size_t>(k) * k);
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k; ++j) {
      const int sigma_j = j % k + 1;  // cyclic (1 2 ... k)
      phi.cols[static_cast<std::size_t>(i - 1) * k + (j - 1)] = std::max(i, sigma_j);
    }
  }
  LogicalMatrix gamma;
  gamma.rows = k;
  gamma.cols.resize(static_cast<std::size_t>(k));
  gamma.cols[0] = 1;
  for (int j = 2; j <= k; ++j) gamma.cols[static_cast<std::size_t>(j) - 1] = j - 1;
  return {phi, gamma};
}

namespace {

/// Psi^i_l (x_r): selector over the product ring that is the global
/// identity when part i of state r equals l, and the global zero otherwise.
Expr selector(const FiniteRing& ring, int factor, int part_label, int var_index) {
  const int ki = ring.factors[static_cast<std::size_t>(factor) - 1]->k;
  return ex::proj(factor, gamma_expr(ki, label_to_value(ki, part_label), ex::var(var_index)));
}

}  // namespace

Representation represent_nodes(const std::vector<LogicalMatrix>& node_maps, int kappa, const CompileOptions& opt) {
  if (node_maps.empty()) throw std::invalid_argument("represent_nodes: no node maps");
  const int n = static_cast<int>(node_maps.size());
  const long long kn = ipow(kappa, n);
  for (const auto& m : node_maps) {
    if (m.rows != kappa || m.col_count() != kn) {
      throw std::invalid_argument("represent_nodes: node map must be kappa x kappa^n");
    }
  }

  Representation rep;
  rep.source = node_maps;
  rep.ring = z_kappa(kappa);
  const int s = rep.ring->factor_count();

  // selector cache: one Psi per (factor, part label, state variable)
  std::vector<std::vector<std::vector<Expr>>> psi(static_cast<std::size_t>(s));
  for (int i = 1; i <= s; ++i) {
    const int ki = rep.ring->factors[static_cast<std::size_t>(i) - 1]->k;
    psi[static_cast<std::size_t>(i) - 1].resize(static_cast<std::size_t>(ki));
    for (int l = 1; l <= ki; ++l) {
      auto& per_var = psi[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(l) - 1];
      per_var.resize(static_cast<std::size_t>(n));
      for (int r = 1; r <= n; ++r) {
        per_var[static_cast<std::size_t>(r) - 1] = selector(*rep.ring, i, l, r);
      }
    }
  }

  rep.net.ring = rep.ring;
  rep.net.ring_directive = rep.ring->name;
  rep.net.n = n;
  for (int r = 1; r <= n; ++r) rep.net.state_names.push_back("x" + std::to_string(r));

  for (int node = 0; node < n; ++node) {
    Expr acc;
    for (long long w = 1; w <= kn; ++w) {
      const std::vector<int> args = unpack_state(kappa, n, static_cast<int>(w));
      Expr term;
      for (int r = 1; r <= n; ++r) {
        for (int i = 1; i <= s; ++i) {
          const int part = project(*rep.ring, args[static_cast<std::size_t>(r) - 1], i);
          Expr sel = psi[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(part) - 1]
                        [static_cast<std::size_t>(r) - 1];
          term = term ? ex::mul(std::move(term), std::move(sel)) : std::move(sel);
        }
      }
      term = ex::mul(std::move(term), ex::cnst(node_maps[static_cast<std::size_t>(node)].col(static_cast<int>(w))));
      acc = acc ? ex::add(std::move(acc), std::move(term)) : std::move(term);
    }
    rep.net.dynamics.push_back(std::move(acc));
  }
  rep.net.validate();

  rep.assr = compile_assr(rep.net, opt);
  for (int node = 0; node < n; ++node) {
    if (!(rep.assr.node[static_cast<std::size_t>(node)] == node_maps[static_cast<std::size_t>(node)])) {
      throw std::logic_error("represent_nodes: recompiled map differs from the source");
    }
  }
  return rep;
}

Representation represent_map(const LogicalMatrix& map, const CompileOptions& opt) {
  if (map.rows < 2 || map.rows != map.col_count()) {
    throw std::invalid_argument("represent_map: need a square map with kappa >= 2");
  }
  return represent_nodes({map}, map.rows, opt);
}

Representation represent_network(const Network& net, const CompileOptions& opt) {
  const Assr assr = compile_assr(net, opt);
  if (net.m > 0) throw std::invalid_argument("represent_network: control networks are not supported");
  return represent_nodes(assr.node, net.ring->k, opt);
}

}  // namespace ringnet
