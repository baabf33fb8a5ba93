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

#include "ringnet/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace ringnet {

namespace ex {

namespace {
Expr make(PolyExpr::Kind kind, int value, Expr a = nullptr, Expr b = nullptr) {
  auto e = std::make_shared<PolyExpr>();
  e->kind = kind;
  e->value = value;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}
}  // namespace

Expr cnst(int label) { return make(PolyExpr::Kind::Const, label); }
Expr var(int index) { return make(PolyExpr::Kind::Var, index); }
Expr ctrl(int index) { return make(PolyExpr::Kind::Ctrl, index); }
Expr proj(int factor, Expr e) { return make(PolyExpr::Kind::Proj, factor, std::move(e)); }
Expr neg(Expr e) { return make(PolyExpr::Kind::Neg, 0, std::move(e)); }
Expr add(Expr l, Expr r) { return make(PolyExpr::Kind::Add, 0, std::move(l), std::move(r)); }
Expr sub(Expr l, Expr r) { return make(PolyExpr::Kind::Sub, 0, std::move(l), std::move(r)); }
Expr mul(Expr l, Expr r) { return make(PolyExpr::Kind::Mul, 0, std::move(l), std::move(r)); }
Expr pow(Expr e, int exponent) { return make(PolyExpr::Kind::Pow, exponent, std::move(e)); }

}  // namespace ex

namespace {

int eval_rec(const FiniteRing& global, const FiniteRing* scope, int scope_factor, const Expr& e,
             std::span<const int> state, std::span<const int> controls) {
  const FiniteRing& r = scope ? *scope : global;
  switch (e->kind) {
    case PolyExpr::Kind::Const:
      return e->value;
    case PolyExpr::Kind::Var: {
      const int v = state[static_cast<std::size_t>(e->value) - 1];
      return scope ? project(global, v, scope_factor) : v;
    }
    case PolyExpr::Kind::Ctrl: {
      const int v = controls[static_cast<std::size_t>(e->value) - 1];
      return scope ? project(global, v, scope_factor) : v;
    }
    case PolyExpr::Kind::Proj: {
      if (scope) throw std::invalid_argument("eval_poly: nested proj");
      const FiniteRing& f = *global.factors[static_cast<std::size_t>(e->value) - 1];
      const int v = eval_rec(global, &f, e->value, e->a, state, controls);
      return v == 1 ? 1 : embed(global, v, e->value);
    }
    case PolyExpr::Kind::Neg:
      return r.neg_l(eval_rec(global, scope, scope_factor, e->a, state, controls));
    case PolyExpr::Kind::Add:
      return r.add_l(eval_rec(global, scope, scope_factor, e->a, state, controls),
                     eval_rec(global, scope, scope_factor, e->b, state, controls));
    case PolyExpr::Kind::Sub:
      return r.sub_l(eval_rec(global, scope, scope_factor, e->a, state, controls),
                     eval_rec(global, scope, scope_factor, e->b, state, controls));
    case PolyExpr::Kind::Mul:
      return r.mul_l(eval_rec(global, scope, scope_factor, e->a, state, controls),
                     eval_rec(global, scope, scope_factor, e->b, state, controls));
    case PolyExpr::Kind::Pow:
      return r.pow_l(eval_rec(global, scope, scope_factor, e->a, state, controls), e->value);
  }
  throw std::logic_error("eval_poly: unreachable");
}

void validate_rec(const FiniteRing& global, const FiniteRing* scope, const Expr& e, int n, int m,
                  bool allow_controls) {
  if (!e) throw std::invalid_argument("validate_expr: null subexpression");
  const FiniteRing& r = scope ? *scope : global;
  switch (e->kind) {
    case PolyExpr::Kind::Const:
      if (e->value < 1 || e->value > r.k) throw std::invalid_argument("validate_expr: constant out of range");
      return;
    case PolyExpr::Kind::Var:
      if (e->value < 1 || e->value > n) throw std::invalid_argument("validate_expr: state index out of range");
      return;
    case PolyExpr::Kind::Ctrl:
      if (!allow_controls) throw std::invalid_argument("validate_expr: control atom not allowed here");
      if (e->value < 1 || e->value > m) throw std::invalid_argument("validate_expr: input index out of range");
      return;
    case PolyExpr::Kind::Proj: {
      if (scope) throw std::invalid_argument("validate_expr: nested proj");
      if (!global.is_product()) throw std::invalid_argument("validate_expr: proj on a ring without factors");
      if (e->value < 1 || e->value > global.factor_count())
        throw std::invalid_argument("validate_expr: proj factor out of range");
      validate_rec(global, global.factors[static_cast<std::size_t>(e->value) - 1].get(), e->a, n, m,
                   allow_controls);
      return;
    }
    case PolyExpr::Kind::Neg:
      validate_rec(global, scope, e->a, n, m, allow_controls);
      return;
    case PolyExpr::Kind::Pow:
      if (e->value < 1) throw std::invalid_argument("validate_expr: exponent must be >= 1");
      validate_rec(global, scope, e->a, n, m, allow_controls);
      return;
    case PolyExpr::Kind::Add:
    case PolyExpr::Kind::Sub:
    case PolyExpr::Kind::Mul:
      validate_rec(global, scope, e->a, n, m, allow_controls);
      validate_rec(global, scope, e->b, n, m, allow_controls);
      return;
  }
}

}  // namespace

int eval_poly(const FiniteRing& ring, const Expr& e, std::span<const int> state, std::span<const int> controls) {
  return eval_rec(ring, nullptr, 0, e, state, controls);
}

void validate_expr(const FiniteRing& ring, const Expr& e, int n_states, int n_controls, bool allow_controls) {
  validate_rec(ring, nullptr, e, n_states, n_controls, allow_controls);
}

bool contains_control(const Expr& e) {
  if (!e) return false;
  if (e->kind == PolyExpr::Kind::Ctrl) return true;
  return contains_control(e->a) || contains_control(e->b);
}

Expr map_constants(const Expr& e, const std::vector<int>& label_map) {
  switch (e->kind) {
    case PolyExpr::Kind::Const:
      return ex::cnst(label_map[static_cast<std::size_t>(e->value) - 1]);
    case PolyExpr::Kind::Var:
    case PolyExpr::Kind::Ctrl:
      return e;
    case PolyExpr::Kind::Proj:
      throw std::invalid_argument("map_constants: proj atoms are not supported here");
    case PolyExpr::Kind::Neg:
      return ex::neg(map_constants(e->a, label_map));
    case PolyExpr::Kind::Pow:
      return ex::pow(map_constants(e->a, label_map), e->value);
    case PolyExpr::Kind::Add:
      return ex::add(map_constants(e->a, label_map), map_constants(e->b, label_map));
    case PolyExpr::Kind::Sub:
      return ex::sub(map_constants(e->a, label_map), map_constants(e->b, label_map));
    case PolyExpr::Kind::Mul:
      return ex::mul(map_constants(e->a, label_map), map_constants(e->b, label_map));
  }
  throw std::logic_error("map_constants: unreachable");
}

namespace {

// precedence levels for printing: 0 add/sub, 1 mul, 2 pow, 3 atom
int precedence(const Expr& e) {
  switch (e->kind) {
    case PolyExpr::Kind::Add:
    case PolyExpr::Kind::Sub:
      return 0;
    case PolyExpr::Kind::Mul:
      return 1;
    case PolyExpr::Kind::Pow:
      return 2;
    default:
      return 3;
  }
}

void print_rec(std::ostringstream& os, const Expr& e, const FiniteRing& ring, const FiniteRing* scope,
               const ExprNames& names, int parent_prec) {
  const FiniteRing& r = scope ? *scope : ring;
  const int prec = precedence(e);
  const bool parens = prec < parent_prec;
  if (parens) os << '(';
  switch (e->kind) {
    case PolyExpr::Kind::Const:
      os << label_to_value(r.k, e->value);
      break;
    case PolyExpr::Kind::Var:
      os << names.states[static_cast<std::size_t>(e->value) - 1];
      break;
    case PolyExpr::Kind::Ctrl:
      os << names.inputs[static_cast<std::size_t>(e->value) - 1];
      break;
    case PolyExpr::Kind::Proj:
      os << "proj(" << e->value << ", ";
      print_rec(os, e->a, ring, ring.is_product() ? ring.factors[static_cast<std::size_t>(e->value) - 1].get()
                                                  : nullptr,
                names, 0);
      os << ')';
      break;
    case PolyExpr::Kind::Neg:
      os << '-';
      print_rec(os, e->a, ring, scope, names, 3);
      break;
    case PolyExpr::Kind::Add:
      print_rec(os, e->a, ring, scope, names, 0);
      os << " + ";
      print_rec(os, e->b, ring, scope, names, 1);
      break;
    case PolyExpr::Kind::Sub:
      print_rec(os, e->a, ring, scope, names, 0);
      os << " - ";
      print_rec(os, e->b, ring, scope, names, 1);
      break;
    case PolyExpr::Kind::Mul:
      print_rec(os, e->a, ring, scope, names, 1);
      os << " * ";
      print_rec(os, e->b, ring, scope, names, 2);
      break;
    case PolyExpr::Kind::Pow:
      print_rec(os, e->a, ring, scope, names, 3);
      os << '^' << e->value;
      break;
  }
  if (parens) os << ')';
}

}  // namespace

std::string to_string(const Expr& e, const FiniteRing& ring, const ExprNames& names) {
  std::ostringstream os;
  print_rec(os, e, ring, nullptr, names, 0);
  return os.str();
}

}  // namespace ringnet
