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

// Dense integer-matrix oracle, independent of the column-index production
// code. Used to pin down expected values for the STP toolbox.

#ifndef RINGNET_TESTS_ORACLE_HPP
#define RINGNET_TESTS_ORACLE_HPP

#include <numeric>
#include <vector>

#include "ringnet/logical.hpp"

namespace oracle {

using Dense = std::vector<std::vector<int>>;

inline Dense dense_identity(int n) {
  Dense m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return m;
}

inline Dense from_logical(const ringnet::LogicalMatrix& l) {
  Dense m(static_cast<std::size_t>(l.rows), std::vector<int>(static_cast<std::size_t>(l.col_count()), 0));
  for (int j = 1; j <= l.col_count(); ++j) m[static_cast<std::size_t>(l.col(j)) - 1][static_cast<std::size_t>(j) - 1] = 1;
  return m;
}

inline Dense multiply(const Dense& a, const Dense& b) {
  const std::size_t n = a.size(), p = b.size(), q = b[0].size();
  Dense out(n, std::vector<int>(q, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < p; ++l)
      if (a[i][l])
        for (std::size_t j = 0; j < q; ++j) out[i][j] += a[i][l] * b[l][j];
  return out;
}

inline Dense kronecker(const Dense& a, const Dense& b) {
  const std::size_t ar = a.size(), ac = a[0].size(), br = b.size(), bc = b[0].size();
  Dense out(ar * br, std::vector<int>(ac * bc, 0));
  for (std::size_t i = 0; i < ar; ++i)
    for (std::size_t j = 0; j < ac; ++j)
      for (std::size_t k = 0; k < br; ++k)
        for (std::size_t l = 0; l < bc; ++l) out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
  return out;
}

inline Dense stp(const Dense& a, const Dense& b) {
  const long long n = static_cast<long long>(a[0].size());
  const long long p = static_cast<long long>(b.size());
  const long long t = std::lcm(n, p);
  const Dense ae = t == n ? a : kronecker(a, dense_identity(static_cast<int>(t / n)));
  const Dense be = t == p ? b : kronecker(b, dense_identity(static_cast<int>(t / p)));
  return multiply(ae, be);
}

}  // namespace oracle

#endif
