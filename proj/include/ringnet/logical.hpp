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

#ifndef RINGNET_LOGICAL_HPP
#define RINGNET_LOGICAL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ringnet {

/// Matrix whose every column is a canonical basis vector, stored in
/// column-index form: d_m[i1,...,in] has rows m and cols = {i1,...,in}.
/// All indices are 1-based.
struct LogicalMatrix {
  int rows = 0;
  std::vector<int> cols;

  int col_count() const { return static_cast<int>(cols.size()); }
  int col(int j) const { return cols[static_cast<std::size_t>(j) - 1]; }
  void set_col(int j, int v) { cols[static_cast<std::size_t>(j) - 1] = v; }

  bool is_square() const { return rows == col_count(); }

  static LogicalMatrix identity(int n);
  static LogicalMatrix delta(int rows, std::vector<int> cols);
  /// J_n^T, the 1 x n all-ones row (a logical matrix with one row).
  static LogicalMatrix ones_row(int n);

  bool operator==(const LogicalMatrix&) const = default;
};

/// Basis vector delta_dim^index as a value type.
struct DeltaVec {
  int dim = 0;
  int index = 1;

  LogicalMatrix as_matrix() const { return LogicalMatrix::delta(dim, {index}); }
  bool operator==(const DeltaVec&) const = default;
};

/// Dense 0/1 matrix over the Boolean semiring (1+1 = 1), row-major bits.
struct BooleanMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> bits;

  BooleanMatrix() = default;
  BooleanMatrix(int r, int c) : rows(r), cols(c), bits(static_cast<std::size_t>(r) * c, 0) {}

  std::uint8_t at(int i, int j) const { return bits[static_cast<std::size_t>(i - 1) * cols + (j - 1)]; }
  void set(int i, int j, std::uint8_t v = 1) { bits[static_cast<std::size_t>(i - 1) * cols + (j - 1)] = v; }

  static BooleanMatrix all_ones(int r, int c);
  bool is_all_ones() const;
  bool row_all_ones(int i) const;

  bool operator==(const BooleanMatrix&) const = default;
};

/// Semi-tensor product (A (x) I_{t/n})(B (x) I_{t/p}), t = lcm(cols(A), rows(B)).
/// Logical matrices are closed under STP; when cols(A) = rows(B) this is the
/// ordinary composition col(j) = colA(colB(j)).
LogicalMatrix stp(const LogicalMatrix& a, const LogicalMatrix& b);

/// Left fold of stp over a factor list.
LogicalMatrix stp_chain(std::span<const LogicalMatrix> ms);

LogicalMatrix kron(const LogicalMatrix& a, const LogicalMatrix& b);

/// Swap matrix W_{[m,n]} with W (x (x) y) = y (x) x for basis x in D_m, y in D_n.
LogicalMatrix swap_matrix(int m, int n);

/// Power-reducing matrix PR_n (n^2 x n) with PR_n x = x (x) x for basis x.
LogicalMatrix power_reducing_matrix(int n);

/// Column-wise STP of equally wide matrices.
LogicalMatrix khatri_rao(std::span<const LogicalMatrix> ms);
LogicalMatrix khatri_rao(const LogicalMatrix& a, const LogicalMatrix& b);

BooleanMatrix to_boolean(const LogicalMatrix& m);
BooleanMatrix bool_multiply(const BooleanMatrix& a, const BooleanMatrix& b);
BooleanMatrix bool_or(const BooleanMatrix& a, const BooleanMatrix& b);
int bool_trace(const BooleanMatrix& m);

/// C = sum_B M^(1) + ... + M^(N), N = rows: C(i,j) = 1 iff some path of
/// length 1..N leads j -> i. Stops early once the running sum stabilizes.
BooleanMatrix bool_reachability_closure(const BooleanMatrix& m);

/// d<rows>[i1,...,in]
std::string to_delta_string(const LogicalMatrix& m);
LogicalMatrix parse_delta(const std::string& text);

}  // namespace ringnet

#endif
