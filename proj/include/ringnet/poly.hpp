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

#ifndef RINGNET_POLY_HPP
#define RINGNET_POLY_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ringnet/ring.hpp"

namespace ringnet {

struct PolyExpr;
using Expr = std::shared_ptr<const PolyExpr>;

/// Expression tree of ring polynomials. Subtraction is sugar for a + (-b).
/// Proj(i, e) evaluates e inside factor i of a product ring: variables
/// project to their i-th part, constants are factor-i labels and arithmetic
/// uses the factor tables. Where the Proj value re-enters product-ring
/// context, the factor identity lifts to the global identity and every
/// other value embeds with zeros elsewhere, so indicator subterms built
/// from factor-field interpolation act as global 1/0 selectors.
struct PolyExpr {
  enum class Kind { Const, Var, Ctrl, Proj, Neg, Add, Sub, Mul, Pow };
  Kind kind;
  int value = 0;  // Const: label; Var/Ctrl: index; Proj: factor; Pow: exponent
  Expr a, b;
};

namespace ex {
Expr cnst(int label);
Expr var(int index);
Expr ctrl(int index);
Expr proj(int factor, Expr e);
Expr neg(Expr e);
Expr add(Expr l, Expr r);
Expr sub(Expr l, Expr r);
Expr mul(Expr l, Expr r);
Expr pow(Expr e, int exponent);
}  // namespace ex

/// Structural-recursion evaluation with the ring's tables.
int eval_poly(const FiniteRing& ring, const Expr& e, std::span<const int> state, std::span<const int> controls);

/// Validates index ranges, exponents, constant labels and Proj scoping for
/// an expression over a ring with n state and m control variables.
void validate_expr(const FiniteRing& ring, const Expr& e, int n_states, int n_controls, bool allow_controls);

/// True if any subterm is a Ctrl atom.
bool contains_control(const Expr& e);

/// Rebuild an expression, mapping every Const label (used by ideal
/// restriction and factor projection).
Expr map_constants(const Expr& e, const std::vector<int>& label_map);

struct ExprNames {
  std::span<const std::string> states;
  std::span<const std::string> inputs;
};

std::string to_string(const Expr& e, const FiniteRing& ring, const ExprNames& names);

}  // namespace ringnet

#endif
