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

#include "ringnet/decompose.hpp"

#include <algorithm>
#include <set>

namespace ringnet {

namespace {

long long ipow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

Network subnetwork_over_ideal(const Network& net, const Ideal& ideal) {
  if (!ideal.phi) throw RestrictionError("subnetwork_over_ideal: ideal is not proper (no phi)");
  const int k = net.ring->k;
  std::vector<int> label_map(static_cast<std::size_t>(k));
  for (int a = 1; a <= k; ++a) {
    label_map[static_cast<std::size_t>(a) - 1] =
        ideal.to_essential((*ideal.phi)[static_cast<std::size_t>(a) - 1]);
  }
  Network sub;
  sub.ring = ideal.essential;
  sub.ring_directive.clear();
  sub.n = net.n;
  sub.m = net.m;
  sub.p = net.p;
  sub.state_names = net.state_names;
  sub.input_names = net.input_names;
  sub.output_names = net.output_names;
  for (const auto& e : net.dynamics) sub.dynamics.push_back(map_constants(e, label_map));
  for (const auto& e : net.outputs) sub.outputs.push_back(map_constants(e, label_map));
  sub.validate();
  return sub;
}

bool verify_ideal_restriction(const Network& net, const Ideal& ideal, const std::vector<int>& s0,
                              const std::vector<std::vector<int>>& controls, int steps) {
  if (static_cast<int>(s0.size()) != net.n) throw RestrictionError("verify_ideal_restriction: s0 size mismatch");
  for (int l : s0) {
    if (!ideal.contains(l)) throw RestrictionError("verify_ideal_restriction: initial state not inside the ideal");
  }
  if (net.m > 0 && static_cast<int>(controls.size()) < steps) {
    throw RestrictionError("verify_ideal_restriction: missing controls");
  }
  bool controls_inside = true;
  for (const auto& u : controls) {
    if (static_cast<int>(u.size()) != net.m) throw RestrictionError("verify_ideal_restriction: control arity mismatch");
    for (int l : u) controls_inside = controls_inside && ideal.contains(l);
  }
  if (!controls_inside && has_pure_control_terms(net)) {
    throw RestrictionError(
        "verify_ideal_restriction: controls leave the ideal and the dynamics have pure control terms");
  }

  const Network sub = subnetwork_over_ideal(net, ideal);

  std::vector<int> z = s0;
  std::vector<int> x(static_cast<std::size_t>(net.n));
  for (int i = 0; i < net.n; ++i) x[static_cast<std::size_t>(i)] = ideal.to_essential(s0[static_cast<std::size_t>(i)]);

  static const std::vector<int> no_ctrl;
  for (int t = 0; t <= steps; ++t) {
    for (int i = 0; i < net.n; ++i) {
      if (!ideal.contains(z[static_cast<std::size_t>(i)])) {
        throw RestrictionError("verify_ideal_restriction: trajectory left the ideal at step " + std::to_string(t));
      }
      if (ideal.to_essential(z[static_cast<std::size_t>(i)]) != x[static_cast<std::size_t>(i)]) return false;
    }
    if (t == steps) break;
    const std::vector<int>& u = net.m > 0 ? controls[static_cast<std::size_t>(t)] : no_ctrl;
    // sub-network controls pass through phi; phi(u) acts on the ideal
    // exactly like u, so this also covers controls outside the ideal
    std::vector<int> v;
    if (net.m > 0) {
      v.reserve(u.size());
      for (int l : u) v.push_back(ideal.to_essential((*ideal.phi)[static_cast<std::size_t>(l) - 1]));
    }
    std::vector<int> zn(static_cast<std::size_t>(net.n)), xn(static_cast<std::size_t>(net.n));
    for (int i = 0; i < net.n; ++i) {
      zn[static_cast<std::size_t>(i)] = eval_poly(*net.ring, net.dynamics[static_cast<std::size_t>(i)], z, u);
      xn[static_cast<std::size_t>(i)] = eval_poly(*sub.ring, sub.dynamics[static_cast<std::size_t>(i)], x, v);
    }
    z = std::move(zn);
    x = std::move(xn);
  }
  return true;
}

Network project_network(const Network& net, int factor) {
  if (!net.ring->is_product()) throw std::invalid_argument("project_network: ring has no factor structure");
  const int k = net.ring->k;
  std::vector<int> label_map(static_cast<std::size_t>(k));
  for (int a = 1; a <= k; ++a) label_map[static_cast<std::size_t>(a) - 1] = project(*net.ring, a, factor);
  Network out;
  out.ring = net.ring->factors[static_cast<std::size_t>(factor) - 1];
  out.n = net.n;
  out.m = net.m;
  out.p = net.p;
  out.state_names = net.state_names;
  out.input_names = net.input_names;
  out.output_names = net.output_names;
  for (const auto& e : net.dynamics) out.dynamics.push_back(map_constants(e, label_map));
  for (const auto& e : net.outputs) out.outputs.push_back(map_constants(e, label_map));
  out.validate();
  return out;
}

namespace {

/// Rewrites a factor network's expression into the product ring: constants
/// embed into lane `factor`, variable j of the factor net becomes the
/// product node carrying that variable in the fixed complementary slot.
Expr merge_expr(const Expr& e, const FiniteRing& prod, int factor, int other_index, int n) {
  switch (e->kind) {
    case PolyExpr::Kind::Const:
      return ex::cnst(embed(prod, e->value, factor));
    case PolyExpr::Kind::Var: {
      const int node = factor == 1 ? (e->value - 1) * n + other_index : (other_index - 1) * n + e->value;
      return ex::var(node);
    }
    case PolyExpr::Kind::Ctrl:
      throw std::invalid_argument("product_network: control networks are not supported");
    case PolyExpr::Kind::Proj:
      throw std::invalid_argument("product_network: proj atoms are not supported");
    case PolyExpr::Kind::Neg:
      return ex::neg(merge_expr(e->a, prod, factor, other_index, n));
    case PolyExpr::Kind::Pow:
      return ex::pow(merge_expr(e->a, prod, factor, other_index, n), e->value);
    case PolyExpr::Kind::Add:
      return ex::add(merge_expr(e->a, prod, factor, other_index, n), merge_expr(e->b, prod, factor, other_index, n));
    case PolyExpr::Kind::Sub:
      return ex::sub(merge_expr(e->a, prod, factor, other_index, n), merge_expr(e->b, prod, factor, other_index, n));
    case PolyExpr::Kind::Mul:
      return ex::mul(merge_expr(e->a, prod, factor, other_index, n), merge_expr(e->b, prod, factor, other_index, n));
  }
  throw std::logic_error("merge_expr: unreachable");
}

}  // namespace

Network product_network(const Network& a, const Network& b) {
  if (a.n != b.n) throw std::invalid_argument("product_network: node counts differ");
  if (a.is_control() || b.is_control()) {
    throw std::invalid_argument("product_network: control networks are not supported");
  }
  const int n = a.n;
  RingPtr prod = product_ring(a.ring, b.ring);
  Network out;
  out.ring = prod;
  out.ring_directive = prod->name;
  out.n = n * n;
  for (int alpha = 1; alpha <= n; ++alpha) {
    for (int beta = 1; beta <= n; ++beta) {
      out.state_names.push_back("z" + std::to_string((alpha - 1) * n + beta));
      // lane 1 carries p_alpha with its variables taken from column beta,
      // lane 2 carries q_beta with its variables taken from row alpha
      const Expr lane1 = ex::mul(ex::cnst(embed(*prod, 1, 1)),
                                 merge_expr(a.dynamics[static_cast<std::size_t>(alpha) - 1], *prod, 1, beta, n));
      const Expr lane2 = ex::mul(ex::cnst(embed(*prod, 1, 2)),
                                 merge_expr(b.dynamics[static_cast<std::size_t>(beta) - 1], *prod, 2, alpha, n));
      out.dynamics.push_back(ex::add(lane1, lane2));
    }
  }
  out.validate();
  return out;
}

namespace {

/// Projector from the packed (inputs, states) index over the product ring
/// to the packed index over factor i: every digit projects independently.
LogicalMatrix argument_projector(const FiniteRing& prod, int factor, int digits) {
  const int kappa = prod.k;
  const int ki = prod.factors[static_cast<std::size_t>(factor) - 1]->k;
  const long long total = ipow(kappa, digits);
  LogicalMatrix p;
  p.rows = static_cast<int>(ipow(ki, digits));
  p.cols.resize(static_cast<std::size_t>(total));
  for (long long idx = 1; idx <= total; ++idx) {
    long long rest = idx - 1;
    std::vector<int> digits_v(static_cast<std::size_t>(digits));
    for (int d = digits; d >= 1; --d) {
      digits_v[static_cast<std::size_t>(d) - 1] = static_cast<int>(rest % kappa) + 1;
      rest /= kappa;
    }
    long long packed = 0;
    for (int d = 0; d < digits; ++d) {
      packed = packed * ki + (project(prod, digits_v[static_cast<std::size_t>(d)], factor) - 1);
    }
    p.cols[static_cast<std::size_t>(idx) - 1] = static_cast<int>(packed + 1);
  }
  return p;
}

}  // namespace

DecompositionReport verify_decomposition(const Network& net, const CompileOptions& opt) {
  if (!net.ring->is_product()) throw std::invalid_argument("verify_decomposition: ring has no factor structure");
  const int s = net.ring->factor_count();
  DecompositionReport report;
  const Assr original = compile_assr(net, opt);
  report.original = original.M;

  for (int i = 1; i <= s; ++i) {
    report.factor_nets.push_back(project_network(net, i));
    report.factor_assrs.push_back(compile_assr(report.factor_nets.back(), opt));
  }

  // Recombine: node-major, factor-minor Khatri-Rao of the factor node maps
  // pulled back through the argument projector.
  std::vector<LogicalMatrix> blocks;
  for (int node = 0; node < net.n; ++node) {
    for (int i = 1; i <= s; ++i) {
      const LogicalMatrix proj = argument_projector(*net.ring, i, net.m + net.n);
      blocks.push_back(stp(report.factor_assrs[static_cast<std::size_t>(i) - 1].node[static_cast<std::size_t>(node)], proj));
    }
  }
  report.combined = khatri_rao(blocks);
  report.transition_equal = report.combined == original.M;

  if (net.p > 0) {
    std::vector<LogicalMatrix> oblocks;
    for (int l = 0; l < net.p; ++l) {
      for (int i = 1; i <= s; ++i) {
        const LogicalMatrix proj = argument_projector(*net.ring, i, net.n);
        oblocks.push_back(stp(report.factor_assrs[static_cast<std::size_t>(i) - 1].out[static_cast<std::size_t>(l)], proj));
      }
    }
    report.output_equal = khatri_rao(oblocks) == original.E;
  }

  if (!net.is_control()) {
    for (const auto& fa : report.factor_assrs) report.factor_fixed_points.push_back(fixed_points(fa.M));
  }
  return report;
}

CombinedVerdict combined_control_verdicts(const Network& net, const CombinedQuery& query,
                                          const CompileOptions& opt) {
  if (!net.ring->is_product()) throw std::invalid_argument("combined_control_verdicts: ring has no factor structure");
  const int s = net.ring->factor_count();
  CombinedVerdict verdict;

  std::vector<Network> factor_nets;
  std::vector<Assr> factor_assrs;
  for (int i = 1; i <= s; ++i) {
    factor_nets.push_back(project_network(net, i));
    factor_assrs.push_back(compile_assr(factor_nets.back(), opt));
  }

  auto factor_state = [&](int z, int i) {
    const auto labels = unpack_state(net.ring->k, net.n, z);
    std::vector<int> parts(labels.size());
    for (std::size_t j = 0; j < labels.size(); ++j) parts[j] = project(*net.ring, labels[j], i);
    return pack_state(net.ring->factors[static_cast<std::size_t>(i) - 1]->k, parts);
  };

  switch (query.kind) {
    case CombinedQuery::Kind::Controllable: {
      for (int i = 1; i <= s; ++i) {
        const auto res = controllability(factor_assrs[static_cast<std::size_t>(i) - 1]);
        verdict.factor.push_back(res.C.at(factor_state(query.zd, i), factor_state(query.z0, i)) != 0);
      }
      verdict.combined = std::all_of(verdict.factor.begin(), verdict.factor.end(), [](bool b) { return b; });
      try {
        const Assr direct = compile_assr(net, opt);
        const auto res = controllability(direct);
        verdict.direct = res.C.at(query.zd, query.z0) != 0;
        verdict.cross_check_agrees = *verdict.direct == verdict.combined;
      } catch (const BudgetExceeded&) {
        verdict.direct.reset();
      }
      break;
    }
    case CombinedQuery::Kind::Synchronizable: {
      for (int i = 1; i <= s; ++i) {
        const int part = project(*net.ring, query.target_label, i);
        const Assr& fa = factor_assrs[static_cast<std::size_t>(i) - 1];
        verdict.factor.push_back(stabilizable_to(fa, diagonal_state(fa.k, fa.n, part)));
      }
      verdict.combined = std::all_of(verdict.factor.begin(), verdict.factor.end(), [](bool b) { return b; });
      try {
        const Assr direct = compile_assr(net, opt);
        verdict.direct = stabilizable_to(direct, diagonal_state(direct.k, direct.n, query.target_label));
        verdict.cross_check_agrees = *verdict.direct == verdict.combined;
      } catch (const BudgetExceeded&) {
        verdict.direct.reset();
      }
      break;
    }
    case CombinedQuery::Kind::Observable: {
      std::vector<ObservabilityResult> factor_obs;
      for (int i = 1; i <= s; ++i) factor_obs.push_back(observability(factor_assrs[static_cast<std::size_t>(i) - 1], opt));
      bool all_full = true, all_post = true;
      for (const auto& o : factor_obs) {
        verdict.factor.push_back(o.observable);
        all_full = all_full && o.observable;
        all_post = all_post && o.observable_post;
      }
      verdict.combined = all_full;

      // combined pair sets: a global pair is indistinguishable iff every
      // factor pair is identical or factor-indistinguishable
      const long long kn = ipow(net.ring->k, net.n);
      std::vector<std::set<std::pair<int, int>>> fsets, fsets_post;
      for (const auto& o : factor_obs) {
        fsets.emplace_back(o.indistinguishable.begin(), o.indistinguishable.end());
        fsets_post.emplace_back(o.indistinguishable_post.begin(), o.indistinguishable_post.end());
      }
      auto related = [](const std::set<std::pair<int, int>>& set, int a, int b) {
        if (a == b) return true;
        return set.count({std::min(a, b), std::max(a, b)}) != 0;
      };
      for (int x = 1; x <= kn; ++x) {
        for (int y = x + 1; y <= kn; ++y) {
          bool ind_full = true, ind_post = true;
          for (int i = 1; i <= s; ++i) {
            const int fx = factor_state(x, i);
            const int fy = factor_state(y, i);
            ind_full = ind_full && related(fsets[static_cast<std::size_t>(i) - 1], fx, fy);
            ind_post = ind_post && related(fsets_post[static_cast<std::size_t>(i) - 1], fx, fy);
          }
          if (ind_full) verdict.pairs.emplace_back(x, y);
          if (ind_post) verdict.pairs_post.emplace_back(x, y);
        }
      }
      try {
        const Assr direct = compile_assr(net, opt);
        const auto o = observability(direct, opt);
        verdict.direct = o.observable;
        verdict.direct_post = o.observable_post;
        verdict.cross_check_agrees = o.observable == verdict.combined &&
                                     o.indistinguishable == verdict.pairs &&
                                     o.observable_post == all_post &&
                                     o.indistinguishable_post == verdict.pairs_post;
      } catch (const BudgetExceeded&) {
        verdict.direct.reset();
      }
      break;
    }
  }
  return verdict;
}

LinearNetwork project_linear(const LinearNetwork& lin, int factor) {
  if (!lin.ring->is_product()) throw std::invalid_argument("project_linear: ring has no factor structure");
  LinearNetwork out;
  out.ring = lin.ring->factors[static_cast<std::size_t>(factor) - 1];
  out.residue_naming = false;
  out.n = lin.n;
  out.m = lin.m;
  out.p = lin.p;
  auto map_matrix = [&](const std::vector<std::vector<int>>& m) {
    std::vector<std::vector<int>> r = m;
    for (auto& row : r)
      for (auto& v : row) v = project(*lin.ring, v, factor);
    return r;
  };
  out.A = map_matrix(lin.A);
  out.B = map_matrix(lin.B);
  out.C = map_matrix(lin.C);
  return out;
}

Network linear_to_network(const LinearNetwork& lin) {
  Network net;
  net.ring = lin.ring;
  net.ring_directive = lin.ring_directive;
  net.n = lin.n;
  net.m = lin.m;
  net.p = lin.p;
  for (int i = 1; i <= lin.n; ++i) net.state_names.push_back("x" + std::to_string(i));
  for (int j = 1; j <= lin.m; ++j) net.input_names.push_back("u" + std::to_string(j));
  for (int l = 1; l <= lin.p; ++l) net.output_names.push_back("y" + std::to_string(l));
  auto row_expr = [&](const std::vector<int>& arow, const std::vector<int>& brow) {
    Expr e;
    for (int j = 0; j < lin.n; ++j) {
      Expr term = ex::mul(ex::cnst(arow[static_cast<std::size_t>(j)]), ex::var(j + 1));
      e = e ? ex::add(std::move(e), std::move(term)) : std::move(term);
    }
    for (int j = 0; j < lin.m; ++j) {
      Expr term = ex::mul(ex::cnst(brow[static_cast<std::size_t>(j)]), ex::ctrl(j + 1));
      e = e ? ex::add(std::move(e), std::move(term)) : std::move(term);
    }
    return e;
  };
  for (int i = 0; i < lin.n; ++i) {
    net.dynamics.push_back(row_expr(lin.A[static_cast<std::size_t>(i)],
                                    lin.m > 0 ? lin.B[static_cast<std::size_t>(i)] : std::vector<int>{}));
  }
  for (int l = 0; l < lin.p; ++l) {
    Expr e;
    for (int j = 0; j < lin.n; ++j) {
      Expr term = ex::mul(ex::cnst(lin.C[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)]), ex::var(j + 1));
      e = e ? ex::add(std::move(e), std::move(term)) : std::move(term);
    }
    net.outputs.push_back(std::move(e));
  }
  net.validate();
  return net;
}

namespace {

bool is_prime(int k) {
  if (k < 2) return false;
  for (int d = 2; d * d <= k; ++d)
    if (k % d == 0) return false;
  return true;
}

/// Structure matrix of x -> sum_j row[j] * x_j over Z_k, chained as
/// M_add S_prev (I (x) M_mul d^{row_j}).
LogicalMatrix row_chain(const FiniteRing& r, const std::vector<int>& row) {
  const int k = r.k;
  LogicalMatrix acc;
  for (std::size_t j = 0; j < row.size(); ++j) {
    const LogicalMatrix coeff = stp(r.mul, LogicalMatrix::delta(k, {row[j]}));  // k x k multiply-by-constant
    if (j == 0) {
      acc = coeff;
    } else {
      const LogicalMatrix parts[] = {r.add, acc, kron(LogicalMatrix::identity(static_cast<int>(ipow(k, static_cast<int>(j)))), coeff)};
      acc = stp_chain(parts);
    }
  }
  return acc;
}

}  // namespace

Assr linear_assr(const LinearNetwork& lin, const CompileOptions& opt) {
  if (!is_prime(lin.ring->k)) throw std::invalid_argument("linear_assr: base ring must be a prime field");
  const FiniteRing& r = *lin.ring;
  const int k = r.k;
  const long long total = ipow(k, lin.m + lin.n);
  if (total > static_cast<long long>(opt.budget)) throw BudgetExceeded("linear_assr: exceeds budget");

  Assr assr;
  assr.k = k;
  assr.n = lin.n;
  assr.m = lin.m;
  assr.p = lin.p;
  for (int i = 0; i < lin.n; ++i) {
    const LogicalMatrix a_i = row_chain(r, lin.A[static_cast<std::size_t>(i)]);  // k x k^n
    LogicalMatrix l_i;
    if (lin.m > 0) {
      const LogicalMatrix b_i = row_chain(r, lin.B[static_cast<std::size_t>(i)]);  // k x k^m
      const LogicalMatrix parts[] = {r.add, b_i,
                                     kron(LogicalMatrix::identity(static_cast<int>(ipow(k, lin.m))), a_i)};
      l_i = stp_chain(parts);
    } else {
      l_i = a_i;
    }
    assr.node.push_back(std::move(l_i));
  }
  assr.M = khatri_rao(assr.node);
  if (lin.p > 0) {
    for (int l = 0; l < lin.p; ++l) assr.out.push_back(row_chain(r, lin.C[static_cast<std::size_t>(l)]));
    assr.E = khatri_rao(assr.out);
  }

  // brute-force matrix-arithmetic cross-check
  const long long kn = ipow(k, lin.n);
  const long long km = ipow(k, lin.m);
  for (long long u = 1; u <= km; ++u) {
    const std::vector<int> uv = lin.m > 0 ? unpack_state(k, lin.m, static_cast<int>(u)) : std::vector<int>{};
    for (long long x = 1; x <= kn; ++x) {
      const std::vector<int> xv = unpack_state(k, lin.n, static_cast<int>(x));
      for (int i = 0; i < lin.n; ++i) {
        int acc = 0;
        for (int j = 0; j < lin.n; ++j) {
          acc += label_to_value(k, lin.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) *
                 label_to_value(k, xv[static_cast<std::size_t>(j)]);
        }
        for (int j = 0; j < lin.m; ++j) {
          acc += label_to_value(k, lin.B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) *
                 label_to_value(k, uv[static_cast<std::size_t>(j)]);
        }
        const int expect = value_to_label(k, acc % k);
        const long long col = (u - 1) * kn + x;
        if (assr.node[static_cast<std::size_t>(i)].col(static_cast<int>(col)) != expect) {
          throw std::logic_error("linear_assr: symbolic and brute-force compilations disagree");
        }
      }
    }
  }
  return assr;
}

LinearControllabilityReport linear_controllability(const LinearNetwork& lin, const CompileOptions& opt) {
  if (!lin.ring->is_product()) throw std::invalid_argument("linear_controllability: ring has no factor structure");
  LinearControllabilityReport report;
  const int s = lin.ring->factor_count();
  for (int i = 1; i <= s; ++i) {
    report.factors.push_back(project_linear(lin, i));
    const Assr assr = linear_assr(report.factors.back(), opt);
    report.factor_results.push_back(controllability(assr));
    report.factor_verdicts.push_back(report.factor_results.back().completely_controllable);
  }
  report.combined = std::all_of(report.factor_verdicts.begin(), report.factor_verdicts.end(),
                                [](bool b) { return b; });
  return report;
}

}  // namespace ringnet
