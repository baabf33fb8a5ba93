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

#include "ringnet/logical.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ringnet {

namespace {

void check_valid(const LogicalMatrix& m, const char* what) {
  if (m.rows <= 0) throw std::invalid_argument(std::string(what) + ": nonpositive row count");
  for (int c : m.cols) {
    if (c < 1 || c > m.rows) throw std::invalid_argument(std::string(what) + ": column index out of range");
  }
}

long long checked_mul(long long a, long long b, const char* what) {
  long long r = a * b;
  if (a != 0 && (r / a != b || r > (1LL << 31))) {
    throw std::invalid_argument(std::string(what) + ": dimension overflow");
  }
  return r;
}

/// Ordinary product of logical matrices with matching inner dimension.
LogicalMatrix compose(const LogicalMatrix& a, const LogicalMatrix& b) {
  if (a.col_count() != b.rows) throw std::invalid_argument("compose: inner dimension mismatch");
  LogicalMatrix out;
  out.rows = a.rows;
  out.cols.resize(b.cols.size());
  for (std::size_t j = 0; j < b.cols.size(); ++j) out.cols[j] = a.cols[static_cast<std::size_t>(b.cols[j]) - 1];
  return out;
}

}  // namespace

LogicalMatrix LogicalMatrix::identity(int n) {
  LogicalMatrix m;
  m.rows = n;
  m.cols.resize(static_cast<std::size_t>(n));
  std::iota(m.cols.begin(), m.cols.end(), 1);
  return m;
}

LogicalMatrix LogicalMatrix::delta(int rows, std::vector<int> cols) {
  LogicalMatrix m;
  m.rows = rows;
  m.cols = std::move(cols);
  check_valid(m, "delta");
  return m;
}

LogicalMatrix LogicalMatrix::ones_row(int n) {
  LogicalMatrix m;
  m.rows = 1;
  m.cols.assign(static_cast<std::size_t>(n), 1);
  return m;
}

LogicalMatrix kron(const LogicalMatrix& a, const LogicalMatrix& b) {
  check_valid(a, "kron");
  check_valid(b, "kron");
  LogicalMatrix out;
  out.rows = static_cast<int>(checked_mul(a.rows, b.rows, "kron"));
  out.cols.resize(static_cast<std::size_t>(checked_mul(a.col_count(), b.col_count(), "kron")));
  const int nb = b.col_count();
  for (int j = 1; j <= a.col_count(); ++j) {
    const int base = (a.col(j) - 1) * b.rows;
    for (int jp = 1; jp <= nb; ++jp) {
      out.cols[static_cast<std::size_t>(j - 1) * nb + (jp - 1)] = base + b.col(jp);
    }
  }
  return out;
}

LogicalMatrix stp(const LogicalMatrix& a, const LogicalMatrix& b) {
  check_valid(a, "stp");
  check_valid(b, "stp");
  const long long n = a.col_count();
  const long long p = b.rows;
  const long long t = std::lcm(n, p);
  if (t == n && n == p) return compose(a, b);
  const LogicalMatrix ae = (t == n) ? a : kron(a, LogicalMatrix::identity(static_cast<int>(t / n)));
  const LogicalMatrix be = (t == p) ? b : kron(b, LogicalMatrix::identity(static_cast<int>(t / p)));
  return compose(ae, be);
}

LogicalMatrix stp_chain(std::span<const LogicalMatrix> ms) {
  if (ms.empty()) throw std::invalid_argument("stp_chain: empty factor list");
  LogicalMatrix acc = ms[0];
  for (std::size_t i = 1; i < ms.size(); ++i) acc = stp(acc, ms[i]);
  return acc;
}

LogicalMatrix swap_matrix(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("swap_matrix: dimensions must be positive");
  LogicalMatrix w;
  w.rows = static_cast<int>(checked_mul(m, n, "swap_matrix"));
  w.cols.resize(static_cast<std::size_t>(w.rows));
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      w.cols[static_cast<std::size_t>(i - 1) * n + (j - 1)] = (j - 1) * m + i;
    }
  }
  return w;
}

LogicalMatrix power_reducing_matrix(int n) {
  if (n < 1) throw std::invalid_argument("power_reducing_matrix: n must be positive");
  LogicalMatrix pr;
  pr.rows = static_cast<int>(checked_mul(n, n, "power_reducing_matrix"));
  pr.cols.resize(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) pr.cols[static_cast<std::size_t>(i) - 1] = (i - 1) * n + i;
  return pr;
}

LogicalMatrix khatri_rao(std::span<const LogicalMatrix> ms) {
  if (ms.empty()) throw std::invalid_argument("khatri_rao: empty factor list");
  const int q = ms[0].col_count();
  long long rows = 1;
  for (const auto& m : ms) {
    check_valid(m, "khatri_rao");
    if (m.col_count() != q) throw std::invalid_argument("khatri_rao: column counts differ");
    rows = checked_mul(rows, m.rows, "khatri_rao");
  }
  LogicalMatrix out;
  out.rows = static_cast<int>(rows);
  out.cols.resize(static_cast<std::size_t>(q));
  for (int j = 1; j <= q; ++j) {
    long long idx = 1;
    for (const auto& m : ms) idx = (idx - 1) * m.rows + m.col(j);
    out.cols[static_cast<std::size_t>(j) - 1] = static_cast<int>(idx);
  }
  return out;
}

LogicalMatrix khatri_rao(const LogicalMatrix& a, const LogicalMatrix& b) {
  const LogicalMatrix ms[] = {a, b};
  return khatri_rao(std::span<const LogicalMatrix>(ms));
}

BooleanMatrix BooleanMatrix::all_ones(int r, int c) {
  BooleanMatrix m(r, c);
  m.bits.assign(m.bits.size(), 1);
  return m;
}

bool BooleanMatrix::is_all_ones() const {
  for (auto b : bits)
    if (!b) return false;
  return true;
}

bool BooleanMatrix::row_all_ones(int i) const {
  for (int j = 1; j <= cols; ++j)
    if (!at(i, j)) return false;
  return true;
}

BooleanMatrix to_boolean(const LogicalMatrix& m) {
  BooleanMatrix out(m.rows, m.col_count());
  for (int j = 1; j <= m.col_count(); ++j) out.set(m.col(j), j);
  return out;
}

BooleanMatrix bool_multiply(const BooleanMatrix& a, const BooleanMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("bool_multiply: dimension mismatch");
  // word-packed rows of b; out(i) = OR of b-rows selected by row i of a
  const int words = (b.cols + 63) / 64;
  std::vector<std::uint64_t> packed(static_cast<std::size_t>(b.rows) * words, 0);
  for (int l = 0; l < b.rows; ++l) {
    for (int j = 0; j < b.cols; ++j) {
      if (b.bits[static_cast<std::size_t>(l) * b.cols + j]) {
        packed[static_cast<std::size_t>(l) * words + (j >> 6)] |= 1ULL << (j & 63);
      }
    }
  }
  BooleanMatrix out(a.rows, b.cols);
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(words));
  for (int i = 0; i < a.rows; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (int l = 0; l < a.cols; ++l) {
      if (!a.bits[static_cast<std::size_t>(i) * a.cols + l]) continue;
      const std::uint64_t* row = &packed[static_cast<std::size_t>(l) * words];
      for (int w = 0; w < words; ++w) acc[static_cast<std::size_t>(w)] |= row[w];
    }
    for (int j = 0; j < b.cols; ++j) {
      if (acc[static_cast<std::size_t>(j >> 6)] >> (j & 63) & 1) {
        out.bits[static_cast<std::size_t>(i) * b.cols + j] = 1;
      }
    }
  }
  return out;
}

BooleanMatrix bool_or(const BooleanMatrix& a, const BooleanMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("bool_or: dimension mismatch");
  BooleanMatrix out = a;
  for (std::size_t i = 0; i < out.bits.size(); ++i) out.bits[i] = out.bits[i] | b.bits[i];
  return out;
}

int bool_trace(const BooleanMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("bool_trace: matrix not square");
  int t = 0;
  for (int i = 1; i <= m.rows; ++i) t += m.at(i, i);
  return t;
}

BooleanMatrix bool_reachability_closure(const BooleanMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("bool_reachability_closure: matrix not square");
  BooleanMatrix acc = m;
  BooleanMatrix power = m;
  for (int step = 2; step <= m.rows; ++step) {
    power = bool_multiply(power, m);
    BooleanMatrix next = bool_or(acc, power);
    if (next == acc) break;
    acc = std::move(next);
  }
  return acc;
}

std::string to_delta_string(const LogicalMatrix& m) {
  std::ostringstream os;
  os << 'd' << m.rows << '[';
  for (int j = 1; j <= m.col_count(); ++j) {
    if (j > 1) os << ',';
    os << m.col(j);
  }
  os << ']';
  return os.str();
}

LogicalMatrix parse_delta(const std::string& text) {
  std::size_t i = 0;
  auto fail = [&](const char* msg) { throw std::invalid_argument(std::string("parse_delta: ") + msg); };
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i >= text.size() || (text[i] != 'd' && text[i] != 'D')) fail("expected leading 'd'");
  ++i;
  auto read_int = [&]() {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) fail("expected integer");
    return std::stoi(text.substr(start, i - start));
  };
  const int rows = read_int();
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i >= text.size() || text[i] != '[') fail("expected '['");
  ++i;
  std::vector<int> cols;
  while (true) {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
    if (i < text.size() && text[i] == ']') {
      ++i;
      break;
    }
    if (i >= text.size()) fail("unterminated bracket");
    cols.push_back(read_int());
  }
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i != text.size()) fail("trailing input after ']'");
  return LogicalMatrix::delta(rows, std::move(cols));
}

}  // namespace ringnet
