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

#include "ringnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ringnet {

namespace {

long long ipow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > (1LL << 40)) return r;  // saturate well above any budget
  }
  return r;
}

}  // namespace

void Network::validate() const {
  if (!ring) throw std::invalid_argument("network: missing ring");
  if (n < 1) throw std::invalid_argument("network: needs at least one state");
  if (static_cast<int>(dynamics.size()) != n) throw std::invalid_argument("network: one update per state required");
  if (static_cast<int>(outputs.size()) != p) throw std::invalid_argument("network: output count mismatch");
  for (const auto& e : dynamics) validate_expr(*ring, e, n, m, true);
  for (const auto& e : outputs) validate_expr(*ring, e, n, m, false);
}

long long Assr::state_count() const { return ipow(k, n); }
long long Assr::input_count() const { return ipow(k, m); }

int pack_state(int k, std::span<const int> labels) {
  long long idx = 0;
  for (int l : labels) idx = idx * k + (l - 1);
  return static_cast<int>(idx + 1);
}

std::vector<int> unpack_state(int k, int n, int index) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  int rest = index - 1;
  for (int i = n; i >= 1; --i) {
    labels[static_cast<std::size_t>(i) - 1] = rest % k + 1;
    rest /= k;
  }
  return labels;
}

Assr compile_assr(const Network& net, const CompileOptions& opt) {
  net.validate();
  const int k = net.ring->k;
  const long long kn = ipow(k, net.n);
  const long long km = ipow(k, net.m);
  const long long total = kn * km;
  if (total > static_cast<long long>(opt.budget)) {
    throw BudgetExceeded("compile_assr: state space of " + std::to_string(total) +
                         " columns exceeds budget " + std::to_string(opt.budget));
  }

  Assr assr;
  assr.k = k;
  assr.n = net.n;
  assr.m = net.m;
  assr.p = net.p;
  assr.node.assign(static_cast<std::size_t>(net.n), LogicalMatrix{k, std::vector<int>(static_cast<std::size_t>(total))});

  std::vector<int> state(static_cast<std::size_t>(net.n));
  std::vector<int> ctrl(static_cast<std::size_t>(net.m));
  for (long long u = 1; u <= km; ++u) {
    if (net.m > 0) ctrl = unpack_state(k, net.m, static_cast<int>(u));
    for (long long x = 1; x <= kn; ++x) {
      state = unpack_state(k, net.n, static_cast<int>(x));
      const long long col = (u - 1) * kn + x;
      for (int i = 0; i < net.n; ++i) {
        assr.node[static_cast<std::size_t>(i)].cols[static_cast<std::size_t>(col) - 1] =
            eval_poly(*net.ring, net.dynamics[static_cast<std::size_t>(i)], state, ctrl);
      }
    }
  }
  assr.M = khatri_rao(assr.node);

  if (net.p > 0) {
    assr.out.assign(static_cast<std::size_t>(net.p), LogicalMatrix{k, std::vector<int>(static_cast<std::size_t>(kn))});
    for (long long x = 1; x <= kn; ++x) {
      state = unpack_state(k, net.n, static_cast<int>(x));
      for (int l = 0; l < net.p; ++l) {
        assr.out[static_cast<std::size_t>(l)].cols[static_cast<std::size_t>(x) - 1] =
            eval_poly(*net.ring, net.outputs[static_cast<std::size_t>(l)], state, {});
      }
    }
    assr.E = khatri_rao(assr.out);
  }
  return assr;
}

namespace {

/// Builds the structure matrix of an expression over the full argument
/// vector u(t) x(t) (dimension `total`), composing with STP identities:
/// value(w) = M_op (S_a w)(S_b w) = M_op (I (x) S_b) S_a PR w.
class SymbolicCompiler {
 public:
  SymbolicCompiler(const Network& net, long long total)
      : net_(net), ring_(*net.ring), k_(net.ring->k), total_(total), pr_total_(power_reducing_matrix(static_cast<int>(total))) {}

  LogicalMatrix compile(const Expr& e, bool with_controls) {
    with_controls_ = with_controls;
    return build(e, nullptr, 0);
  }

 private:
  // picks one k-valued argument out of the (inputs, states) chain
  LogicalMatrix retrieval(int count_before, int count_after) const {
    LogicalMatrix m = LogicalMatrix::ones_row(static_cast<int>(ipow(k_, count_before)));
    m = kron(m, LogicalMatrix::identity(k_));
    return kron(m, LogicalMatrix::ones_row(static_cast<int>(ipow(k_, count_after))));
  }

  LogicalMatrix var_matrix(int index) const {
    const int before = (with_controls_ ? net_.m : 0) + index - 1;
    return retrieval(before, net_.n - index);
  }

  LogicalMatrix ctrl_matrix(int index) const {
    return retrieval(index - 1, net_.m - index + net_.n);
  }

  LogicalMatrix binary(const LogicalMatrix& op, const LogicalMatrix& sa, const LogicalMatrix& sb) const {
    const LogicalMatrix parts[] = {op, kron(LogicalMatrix::identity(op.rows), sb), sa, pr_total_};
    return stp_chain(parts);
  }

  LogicalMatrix build(const Expr& e, const FiniteRing* scope, int factor) {
    const FiniteRing& r = scope ? *scope : ring_;
    switch (e->kind) {
      case PolyExpr::Kind::Const:
        return kron(LogicalMatrix::delta(r.k, {e->value}), LogicalMatrix::ones_row(static_cast<int>(total_)));
      case PolyExpr::Kind::Var: {
        LogicalMatrix m = var_matrix(e->value);
        if (scope) m = stp(projection_matrix(ring_, factor), m);
        return m;
      }
      case PolyExpr::Kind::Ctrl: {
        LogicalMatrix m = ctrl_matrix(e->value);
        if (scope) m = stp(projection_matrix(ring_, factor), m);
        return m;
      }
      case PolyExpr::Kind::Proj: {
        const FiniteRing& f = *ring_.factors[static_cast<std::size_t>(e->value) - 1];
        const LogicalMatrix inner = build(e->a, &f, e->value);
        LogicalMatrix lift;
        lift.rows = ring_.k;
        lift.cols.resize(static_cast<std::size_t>(f.k));
        for (int v = 1; v <= f.k; ++v) {
          lift.cols[static_cast<std::size_t>(v) - 1] = v == 1 ? 1 : embed(ring_, v, e->value);
        }
        return stp(lift, inner);
      }
      case PolyExpr::Kind::Neg:
        return stp(r.neg, build(e->a, scope, factor));
      case PolyExpr::Kind::Add:
        return binary(r.add, build(e->a, scope, factor), build(e->b, scope, factor));
      case PolyExpr::Kind::Sub:
        return binary(stp(r.add, kron(LogicalMatrix::identity(r.k), r.neg)), build(e->a, scope, factor),
                      build(e->b, scope, factor));
      case PolyExpr::Kind::Mul:
        return binary(r.mul, build(e->a, scope, factor), build(e->b, scope, factor));
      case PolyExpr::Kind::Pow: {
        const LogicalMatrix base = build(e->a, scope, factor);
        LogicalMatrix acc = base;
        for (int i = 1; i < e->value; ++i) acc = binary(r.mul, acc, base);
        return acc;
      }
    }
    throw std::logic_error("symbolic compile: unreachable");
  }

  const Network& net_;
  const FiniteRing& ring_;
  int k_;
  long long total_;
  LogicalMatrix pr_total_;
  bool with_controls_ = false;
};

}  // namespace

Assr compile_assr_symbolic(const Network& net, const CompileOptions& opt) {
  net.validate();
  const int k = net.ring->k;
  const long long kn = ipow(k, net.n);
  const long long km = ipow(k, net.m);
  const long long total = kn * km;
  if (total > static_cast<long long>(opt.budget)) {
    throw BudgetExceeded("compile_assr_symbolic: state space exceeds budget");
  }
  if (total * total > 40'000'000LL) {
    throw BudgetExceeded("compile_assr_symbolic: intermediate matrices exceed the symbolic budget");
  }

  Assr assr;
  assr.k = k;
  assr.n = net.n;
  assr.m = net.m;
  assr.p = net.p;
  {
    SymbolicCompiler sc(net, total);
    for (const auto& e : net.dynamics) assr.node.push_back(sc.compile(e, true));
  }
  assr.M = khatri_rao(assr.node);
  if (net.p > 0) {
    SymbolicCompiler sc(net, kn);
    for (const auto& e : net.outputs) assr.out.push_back(sc.compile(e, false));
    assr.E = khatri_rao(assr.out);
  }
  return assr;
}

std::vector<int> trajectory(const LogicalMatrix& m, int x0, int steps) {
  if (!m.is_square()) throw std::invalid_argument("trajectory: transition matrix not square");
  std::vector<int> states;
  states.reserve(static_cast<std::size_t>(steps) + 1);
  states.push_back(x0);
  int x = x0;
  for (int t = 0; t < steps; ++t) {
    x = m.col(x);
    states.push_back(x);
  }
  return states;
}

std::vector<int> trajectory(const Assr& assr, int x0, std::span<const int> controls) {
  const long long kn = assr.state_count();
  std::vector<int> states;
  states.reserve(controls.size() + 1);
  states.push_back(x0);
  int x = x0;
  for (int u : controls) {
    x = assr.M.col(static_cast<int>((static_cast<long long>(u) - 1) * kn + x));
    states.push_back(x);
  }
  return states;
}

std::vector<std::vector<int>> trajectory_eval(const Network& net, std::vector<int> x0,
                                              const std::vector<std::vector<int>>& controls, int steps) {
  if (net.m > 0 && static_cast<int>(controls.size()) < steps) {
    throw std::invalid_argument("trajectory_eval: missing controls");
  }
  std::vector<std::vector<int>> traj;
  traj.reserve(static_cast<std::size_t>(steps) + 1);
  traj.push_back(x0);
  std::vector<int> cur = std::move(x0);
  static const std::vector<int> no_ctrl;
  for (int t = 0; t < steps; ++t) {
    const std::vector<int>& u = net.m > 0 ? controls[static_cast<std::size_t>(t)] : no_ctrl;
    std::vector<int> next(static_cast<std::size_t>(net.n));
    for (int i = 0; i < net.n; ++i) {
      next[static_cast<std::size_t>(i)] = eval_poly(*net.ring, net.dynamics[static_cast<std::size_t>(i)], cur, u);
    }
    traj.push_back(next);
    cur = std::move(next);
  }
  return traj;
}

std::vector<int> fixed_points(const LogicalMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("fixed_points: matrix not square");
  std::vector<int> fps;
  for (int j = 1; j <= m.col_count(); ++j) {
    if (m.col(j) == j) fps.push_back(j);
  }
  return fps;
}

std::vector<Cycle> attractors(const LogicalMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("attractors: matrix not square");
  const int n = m.col_count();
  std::vector<int> cycle_of(static_cast<std::size_t>(n) + 1, -1);  // -1 unknown, else cycle id
  std::vector<int> mark(static_cast<std::size_t>(n) + 1, 0);       // epoch = start, value = path position + 1
  std::vector<int> pos(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Cycle> cycles;

  for (int start = 1; start <= n; ++start) {
    if (cycle_of[static_cast<std::size_t>(start)] != -1) continue;
    std::vector<int> path;
    int x = start;
    while (cycle_of[static_cast<std::size_t>(x)] == -1 && mark[static_cast<std::size_t>(x)] != start) {
      mark[static_cast<std::size_t>(x)] = start;
      pos[static_cast<std::size_t>(x)] = static_cast<int>(path.size()) + 1;
      path.push_back(x);
      x = m.col(x);
    }
    int id;
    if (cycle_of[static_cast<std::size_t>(x)] != -1) {
      id = cycle_of[static_cast<std::size_t>(x)];
    } else {
      // new cycle discovered along the path
      Cycle c;
      const int from = pos[static_cast<std::size_t>(x)] - 1;
      for (std::size_t i = static_cast<std::size_t>(from); i < path.size(); ++i) c.states.push_back(path[i]);
      const auto smallest = std::min_element(c.states.begin(), c.states.end());
      std::rotate(c.states.begin(), smallest, c.states.end());
      id = static_cast<int>(cycles.size());
      cycles.push_back(std::move(c));
    }
    for (int s : path) cycle_of[static_cast<std::size_t>(s)] = id;
  }
  for (int s = 1; s <= n; ++s) ++cycles[static_cast<std::size_t>(cycle_of[static_cast<std::size_t>(s)])].basin;
  std::sort(cycles.begin(), cycles.end(),
            [](const Cycle& a, const Cycle& b) { return a.states.front() < b.states.front(); });
  return cycles;
}

BooleanMatrix control_transition(const Assr& assr) {
  const long long kn = assr.state_count();
  const long long km = assr.input_count();
  BooleanMatrix m(static_cast<int>(kn), static_cast<int>(kn));
  for (long long u = 1; u <= km; ++u) {
    for (long long x = 1; x <= kn; ++x) {
      m.set(assr.M.col(static_cast<int>((u - 1) * kn + x)), static_cast<int>(x));
    }
  }
  return m;
}

std::vector<int> control_fixed_points(const Assr& assr) {
  const BooleanMatrix m = control_transition(assr);
  std::vector<int> fps;
  for (int x = 1; x <= m.rows; ++x) {
    if (m.at(x, x)) fps.push_back(x);
  }
  return fps;
}

ControllabilityResult controllability(const Assr& assr) {
  ControllabilityResult res;
  res.C = bool_reachability_closure(control_transition(assr));
  for (int j = 1; j <= res.C.rows; ++j) {
    if (res.C.row_all_ones(j)) res.globally_reachable.push_back(j);
  }
  res.completely_controllable = res.C.is_all_ones();
  return res;
}

bool stabilizable_to(const Assr& assr, int target_state) {
  const BooleanMatrix m = control_transition(assr);
  if (!m.at(target_state, target_state)) return false;
  const BooleanMatrix c = bool_reachability_closure(m);
  return c.row_all_ones(target_state);
}

int diagonal_state(int k, int n, int label) {
  std::vector<int> labels(static_cast<std::size_t>(n), label);
  return pack_state(k, labels);
}

std::vector<int> synchronizable(const Assr& assr) {
  std::vector<int> targets;
  const BooleanMatrix m = control_transition(assr);
  const BooleanMatrix c = bool_reachability_closure(m);
  for (int a = 1; a <= assr.k; ++a) {
    const int d = diagonal_state(assr.k, assr.n, a);
    if (m.at(d, d) && c.row_all_ones(d)) targets.push_back(a);
  }
  return targets;
}

ObservabilityResult observability(const Assr& assr, const CompileOptions& opt) {
  if (assr.p < 1) throw std::invalid_argument("observability: network has no outputs");
  const long long kn = assr.state_count();
  const long long km = assr.input_count();
  const long long pairs = kn * kn;
  if (pairs * km > static_cast<long long>(opt.budget)) {
    throw BudgetExceeded("observability: doubled system exceeds budget");
  }

  // doubled system over pair states w = (x, x*) with shared input
  BooleanMatrix step(static_cast<int>(pairs), static_cast<int>(pairs));
  for (long long u = 1; u <= km; ++u) {
    for (long long x = 1; x <= kn; ++x) {
      const int nx = assr.M.col(static_cast<int>((u - 1) * kn + x));
      for (long long y = 1; y <= kn; ++y) {
        const int ny = assr.M.col(static_cast<int>((u - 1) * kn + y));
        step.set(static_cast<int>((nx - 1) * kn + ny), static_cast<int>((x - 1) * kn + y));
      }
    }
  }
  const BooleanMatrix closure = bool_reachability_closure(step);

  std::vector<char> in_w(static_cast<std::size_t>(pairs) + 1, 0);
  for (long long x = 1; x <= kn; ++x) {
    for (long long y = 1; y <= kn; ++y) {
      if (assr.E.col(static_cast<int>(x)) != assr.E.col(static_cast<int>(y))) {
        in_w[static_cast<std::size_t>((x - 1) * kn + y)] = 1;
      }
    }
  }

  // set-controllability row vector: reaches W in >= 1 steps
  std::vector<char> reaches_w(static_cast<std::size_t>(pairs) + 1, 0);
  for (long long v = 1; v <= pairs; ++v) {
    if (!in_w[static_cast<std::size_t>(v)]) continue;
    for (long long w = 1; w <= pairs; ++w) {
      if (closure.at(static_cast<int>(v), static_cast<int>(w))) reaches_w[static_cast<std::size_t>(w)] = 1;
    }
  }

  ObservabilityResult res;
  res.observable = true;
  res.observable_post = true;
  for (long long x = 1; x <= kn; ++x) {
    for (long long y = x + 1; y <= kn; ++y) {
      const long long w = (x - 1) * kn + y;
      const bool post = reaches_w[static_cast<std::size_t>(w)] != 0;
      const bool full = post || in_w[static_cast<std::size_t>(w)];
      if (!full) {
        res.observable = false;
        res.indistinguishable.emplace_back(static_cast<int>(x), static_cast<int>(y));
      }
      if (!post) {
        res.observable_post = false;
        res.indistinguishable_post.emplace_back(static_cast<int>(x), static_cast<int>(y));
      }
    }
  }
  return res;
}

bool has_pure_control_terms(const Network& net) {
  if (net.m == 0) return false;
  const int k = net.ring->k;
  const std::vector<int> zero_state(static_cast<std::size_t>(net.n), net.ring->zero());
  const long long km = ipow(k, net.m);
  for (long long u = 1; u <= km; ++u) {
    const std::vector<int> ctrl = unpack_state(k, net.m, static_cast<int>(u));
    for (const auto& e : net.dynamics) {
      if (eval_poly(*net.ring, e, zero_state, ctrl) != net.ring->zero()) return true;
    }
  }
  return false;
}

}  // namespace ringnet
