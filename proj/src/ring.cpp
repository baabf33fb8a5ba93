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

#include "ringnet/ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ringnet {

namespace {

constexpr const char* kSerializationHeader = "ring";

std::vector<int> prime_factorization(int n) {
  std::vector<int> primes;
  int m = n;
  for (int p = 2; static_cast<long long>(p) * p <= m; ++p) {
    while (m % p == 0) {
      primes.push_back(p);
      m /= p;
    }
  }
  if (m > 1) primes.push_back(m);
  return primes;
}

}  // namespace

int FiniteRing::pow_l(int a, int e) const {
  if (e < 1) throw std::invalid_argument("pow_l: exponent must be >= 1");
  int r = a;
  for (int i = 1; i < e; ++i) r = mul_l(r, a);
  return r;
}

LogicalMatrix FiniteRing::sub_matrix() const { return stp(add, kron(LogicalMatrix::identity(k), neg)); }

AxiomReport verify_ring(const LogicalMatrix& add, const LogicalMatrix& mul, const LogicalMatrix& neg) {
  const int k = add.rows;
  if (mul.rows != k || neg.rows != k) throw std::invalid_argument("verify_ring: row counts differ");
  if (add.col_count() != k * k || mul.col_count() != k * k) {
    throw std::invalid_argument("verify_ring: operator tables must be k x k^2");
  }
  if (neg.col_count() != k) throw std::invalid_argument("verify_ring: negation table must be k x k");

  const LogicalMatrix ik = LogicalMatrix::identity(k);
  const LogicalMatrix ik2 = LogicalMatrix::identity(k * k);
  const LogicalMatrix w = swap_matrix(k, k);
  const LogicalMatrix pr = power_reducing_matrix(k);
  const LogicalMatrix one = LogicalMatrix::delta(k, {1});
  const LogicalMatrix zero = LogicalMatrix::delta(k, {k});
  const LogicalMatrix const_zero_row = LogicalMatrix::delta(k, std::vector<int>(static_cast<std::size_t>(k), k));

  AxiomReport r;
  r.add_commutative = add == stp(add, w);
  r.add_associative = stp(add, add) == stp(add, kron(ik, add));
  r.add_identity = stp(add, zero) == ik && stp(stp(add, w), zero) == ik;
  r.add_invertible = stp(stp(add, kron(ik, neg)), pr) == const_zero_row;
  r.mul_associative = stp(mul, mul) == stp(mul, kron(ik, mul));
  r.mul_identity = stp(mul, one) == ik && stp(stp(mul, w), one) == ik;
  r.mul_commutative = mul == stp(mul, w);

  // X (Y + Z) = XY + XZ
  {
    const LogicalMatrix lhs = stp(mul, kron(ik, add));
    const LogicalMatrix parts[] = {add, mul, kron(ik2, mul), kron(ik, w), pr};
    r.distributive_left = lhs == stp_chain(parts);
  }
  // (X + Y) Z = XZ + YZ
  {
    const LogicalMatrix lhs = stp(mul, add);
    const LogicalMatrix parts[] = {add, mul, kron(ik2, mul), kron(ik, w), kron(ik2, pr)};
    r.distributive_right = lhs == stp_chain(parts);
  }
  return r;
}

AxiomReport verify_ring(const FiniteRing& r) { return verify_ring(r.add, r.mul, r.neg); }

RingPtr make_zk(int k) {
  if (k < 2) throw std::invalid_argument("make_zk: need k >= 2");
  auto r = std::make_shared<FiniteRing>();
  r->k = k;
  r->name = "Z" + std::to_string(k);
  r->add.rows = r->mul.rows = k;
  r->add.cols.resize(static_cast<std::size_t>(k) * k);
  r->mul.cols.resize(static_cast<std::size_t>(k) * k);
  r->neg.rows = k;
  r->neg.cols.resize(static_cast<std::size_t>(k));
  for (int a = 1; a <= k; ++a) {
    const int va = label_to_value(k, a);
    r->neg.cols[static_cast<std::size_t>(a) - 1] = value_to_label(k, (k - va) % k);
    for (int b = 1; b <= k; ++b) {
      const int vb = label_to_value(k, b);
      r->add.cols[static_cast<std::size_t>(a - 1) * k + (b - 1)] = value_to_label(k, (va + vb) % k);
      r->mul.cols[static_cast<std::size_t>(a - 1) * k + (b - 1)] = value_to_label(k, (va * vb) % k);
    }
  }
  return r;
}

namespace {

// Backtracking search for commutative group tables on {1..k} with identity
// at label k, then for each group a search over commutative monoid tables
// with identity at label 1, pruned by zero absorption and distributivity.
class RingEnumerator {
 public:
  RingEnumerator(int k, std::chrono::milliseconds budget) : k_(k), budget_(budget), start_(clock::now()) {
    add_.assign(static_cast<std::size_t>(k) * k, 0);
    mul_.assign(static_cast<std::size_t>(k) * k, 0);
  }

  EnumerationResult run() {
    // identity row/column of the addition
    for (int a = 1; a <= k_; ++a) {
      set_add(a, k_, a);
      set_add(k_, a, a);
    }
    search_add(upper_triangle_cells(), 0);
    std::sort(result_.rings.begin(), result_.rings.end(), [](const RingPtr& a, const RingPtr& b) {
      if (a->add.cols != b->add.cols) return a->add.cols < b->add.cols;
      return a->mul.cols < b->mul.cols;
    });
    result_.complete = !out_of_budget_;
    return std::move(result_);
  }

 private:
  using clock = std::chrono::steady_clock;

  std::vector<std::pair<int, int>> upper_triangle_cells() const {
    std::vector<std::pair<int, int>> cells;
    for (int i = 1; i < k_; ++i)
      for (int j = i; j < k_; ++j) cells.emplace_back(i, j);
    return cells;
  }

  int get_add(int a, int b) const { return add_[static_cast<std::size_t>(a - 1) * k_ + (b - 1)]; }
  int get_mul(int a, int b) const { return mul_[static_cast<std::size_t>(a - 1) * k_ + (b - 1)]; }
  void set_add(int a, int b, int v) { add_[static_cast<std::size_t>(a - 1) * k_ + (b - 1)] = v; }
  void set_mul(int a, int b, int v) { mul_[static_cast<std::size_t>(a - 1) * k_ + (b - 1)] = v; }

  bool expired() {
    if (out_of_budget_) return true;
    if (clock::now() - start_ > budget_) out_of_budget_ = true;
    return out_of_budget_;
  }

  bool add_row_has(int row, int v) const {
    for (int b = 1; b <= k_; ++b)
      if (get_add(row, b) == v) return true;
    return false;
  }

  bool add_associative_partial() const {
    for (int a = 1; a <= k_; ++a)
      for (int b = 1; b <= k_; ++b) {
        const int ab = get_add(a, b);
        if (!ab) continue;
        for (int c = 1; c <= k_; ++c) {
          const int bc = get_add(b, c);
          if (!bc) continue;
          const int l = get_add(ab, c);
          const int r = get_add(a, bc);
          if (l && r && l != r) return false;
        }
      }
    return true;
  }

  void search_add(const std::vector<std::pair<int, int>>& cells, std::size_t pos) {
    if (expired()) return;
    if (pos == cells.size()) {
      if (!add_associative_full()) return;
      ++result_.groups_found;
      start_mul_search();
      return;
    }
    const auto [i, j] = cells[pos];
    for (int v = 1; v <= k_; ++v) {
      if (add_row_has(i, v)) continue;
      if (i != j && add_row_has(j, v)) continue;
      set_add(i, j, v);
      set_add(j, i, v);
      // cheap cancellation prune plus partial associativity every few cells
      if (pos % 3 == 2 ? add_associative_partial() : true) search_add(cells, pos + 1);
      set_add(i, j, 0);
      set_add(j, i, 0);
    }
  }

  bool add_associative_full() const {
    for (int a = 1; a <= k_; ++a)
      for (int b = 1; b <= k_; ++b)
        for (int c = 1; c <= k_; ++c)
          if (get_add(get_add(a, b), c) != get_add(a, get_add(b, c))) return false;
    return true;
  }

  void start_mul_search() {
    for (int a = 1; a <= k_; ++a) {
      set_mul(1, a, a);
      set_mul(a, 1, a);
      set_mul(k_, a, k_);  // zero absorption, forced by distributivity
      set_mul(a, k_, k_);
    }
    std::vector<std::pair<int, int>> cells;
    for (int i = 2; i < k_; ++i)
      for (int j = i; j < k_; ++j) cells.emplace_back(i, j);
    search_mul(cells, 0);
    std::fill(mul_.begin(), mul_.end(), 0);
  }

  bool mul_consistent_partial() const {
    for (int a = 2; a < k_; ++a)
      for (int b = a; b < k_; ++b) {
        const int ab = get_mul(a, b);
        if (!ab) continue;
        // associativity instances whose entries are all known
        for (int c = 2; c < k_; ++c) {
          const int bc = get_mul(b, c);
          const int l = bc ? get_mul(a, bc) : 0;
          const int abc = get_mul(ab, c);
          if (l && abc && l != abc) return false;
        }
        // distributivity: a (x + y) = ax + ay over the fixed addition
        for (int x = 1; x <= k_; ++x)
          for (int y = x; y <= k_; ++y) {
            const int s = get_add(x, y);
            const int as = get_mul(a, s);
            const int ax = get_mul(a, x);
            const int ay = get_mul(a, y);
            if (as && ax && ay && as != get_add(ax, ay)) return false;
          }
      }
    return true;
  }

  void search_mul(const std::vector<std::pair<int, int>>& cells, std::size_t pos) {
    if (expired()) return;
    if (pos == cells.size()) {
      emit_candidate();
      return;
    }
    const auto [i, j] = cells[pos];
    for (int v = 1; v <= k_; ++v) {
      set_mul(i, j, v);
      set_mul(j, i, v);
      if (mul_consistent_partial()) search_mul(cells, pos + 1);
      set_mul(i, j, 0);
      set_mul(j, i, 0);
    }
  }

  void emit_candidate() {
    auto ring = std::make_shared<FiniteRing>();
    ring->k = k_;
    ring->add = LogicalMatrix::delta(k_, add_);
    ring->mul = LogicalMatrix::delta(k_, mul_);
    ring->neg.rows = k_;
    ring->neg.cols.resize(static_cast<std::size_t>(k_));
    for (int a = 1; a <= k_; ++a) {
      for (int b = 1; b <= k_; ++b) {
        if (get_add(a, b) == k_) ring->neg.cols[static_cast<std::size_t>(a) - 1] = b;
      }
    }
    if (!verify_ring(*ring).is_commutative_ring()) return;
    ring->name = "enum" + std::to_string(k_) + ":?";
    result_.rings.push_back(std::move(ring));
  }

  int k_;
  std::chrono::milliseconds budget_;
  clock::time_point start_;
  bool out_of_budget_ = false;
  std::vector<int> add_, mul_;
  EnumerationResult result_;
};

}  // namespace

EnumerationResult enumerate_rings(int k, std::chrono::milliseconds budget) {
  if (k < 2) throw std::invalid_argument("enumerate_rings: need k >= 2");
  RingEnumerator e(k, budget);
  EnumerationResult res = e.run();
  for (std::size_t i = 0; i < res.rings.size(); ++i) {
    auto copy = std::make_shared<FiniteRing>(*res.rings[i]);
    copy->name = "enum" + std::to_string(k) + ":" + std::to_string(i + 1);
    res.rings[i] = copy;
  }
  return res;
}

std::vector<std::vector<int>> find_isomorphisms(const FiniteRing& r, const FiniteRing& s) {
  std::vector<std::vector<int>> result;
  if (r.k != s.k) return result;
  const int k = r.k;
  std::vector<int> middle;
  for (int a = 2; a < k; ++a) middle.push_back(a);
  std::vector<int> image = middle;
  do {
    std::vector<int> pi(static_cast<std::size_t>(k));
    pi[0] = 1;
    pi[static_cast<std::size_t>(k) - 1] = k;
    for (std::size_t i = 0; i < middle.size(); ++i) pi[static_cast<std::size_t>(middle[i]) - 1] = image[i];
    bool ok = true;
    for (int a = 1; a <= k && ok; ++a) {
      for (int b = 1; b <= k && ok; ++b) {
        if (pi[static_cast<std::size_t>(r.add_l(a, b)) - 1] !=
            s.add_l(pi[static_cast<std::size_t>(a) - 1], pi[static_cast<std::size_t>(b) - 1]))
          ok = false;
        if (pi[static_cast<std::size_t>(r.mul_l(a, b)) - 1] !=
            s.mul_l(pi[static_cast<std::size_t>(a) - 1], pi[static_cast<std::size_t>(b) - 1]))
          ok = false;
      }
    }
    if (ok) result.push_back(std::move(pi));
  } while (std::next_permutation(image.begin(), image.end()));
  return result;
}

RingPtr product_ring(const RingPtr& r1, const RingPtr& r2) {
  const int k1 = r1->k;
  const int k2 = r2->k;
  const int kk = k1 * k2;
  auto r = std::make_shared<FiniteRing>();
  r->k = kk;
  r->name = r1->name + "x" + r2->name;

  const LogicalMatrix iw = kron(LogicalMatrix::identity(k1), swap_matrix(k2, k1));
  {
    const LogicalMatrix parts[] = {r1->add, kron(LogicalMatrix::identity(k1 * k1), r2->add), iw};
    r->add = stp_chain(parts);
  }
  {
    const LogicalMatrix parts[] = {r1->mul, kron(LogicalMatrix::identity(k1 * k1), r2->mul), iw};
    r->mul = stp_chain(parts);
  }
  r->neg = kron(r1->neg, r2->neg);

  auto flat = [](const RingPtr& x) {
    if (x->is_product()) return x->factors;
    return std::vector<RingPtr>{x};
  };
  r->factors = flat(r1);
  const auto tail = flat(r2);
  r->factors.insert(r->factors.end(), tail.begin(), tail.end());
  return r;
}

RingPtr z_kappa(int kappa) {
  if (kappa < 2) throw std::invalid_argument("z_kappa: need kappa >= 2");
  const std::vector<int> primes = prime_factorization(kappa);
  if (primes.size() == 1) {
    auto base = make_zk(kappa);
    auto r = std::make_shared<FiniteRing>(*base);
    r->name = "Z^" + std::to_string(kappa);
    r->factors = {base};
    return r;
  }
  RingPtr acc = make_zk(primes[0]);
  for (std::size_t i = 1; i < primes.size(); ++i) acc = product_ring(acc, make_zk(primes[i]));
  auto r = std::make_shared<FiniteRing>(*acc);
  r->name = "Z^" + std::to_string(kappa);
  return r;
}

CrtIso crt_iso(int kappa) {
  const std::vector<int> primes = prime_factorization(kappa);
  for (std::size_t i = 1; i < primes.size(); ++i) {
    if (primes[i] == primes[i - 1]) {
      throw std::invalid_argument("crt_iso: kappa is not squarefree, no ring isomorphism exists");
    }
  }
  const RingPtr prod = z_kappa(kappa);
  const RingPtr zk = make_zk(kappa);
  CrtIso iso;
  iso.kappa = kappa;
  iso.residue_to_product.resize(static_cast<std::size_t>(kappa));
  iso.product_to_residue.assign(static_cast<std::size_t>(kappa), 0);
  for (int label = 1; label <= kappa; ++label) {
    const int v = label_to_value(kappa, label);
    int prod_label = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const int p = primes[i];
      const int part = value_to_label(p, v % p);
      prod_label = prod_label * p + (part - 1);
    }
    ++prod_label;
    iso.residue_to_product[static_cast<std::size_t>(label) - 1] = prod_label;
    iso.product_to_residue[static_cast<std::size_t>(prod_label) - 1] = label;
  }
  // transport check: the map must be a ring isomorphism
  for (int a = 1; a <= kappa; ++a) {
    for (int b = 1; b <= kappa; ++b) {
      if (iso.to_product(zk->add_l(a, b)) != prod->add_l(iso.to_product(a), iso.to_product(b)) ||
          iso.to_product(zk->mul_l(a, b)) != prod->mul_l(iso.to_product(a), iso.to_product(b))) {
        throw std::logic_error("crt_iso: transport check failed");
      }
    }
  }
  return iso;
}

std::pair<RingPtr, std::vector<int>> essential_ring(const RingPtr& parent, const std::vector<int>& members) {
  const int k = parent->k;
  const int r = static_cast<int>(members.size());
  int unit = 0;
  for (int e : members) {
    bool is_unit = true;
    for (int s : members)
      if (parent->mul_l(e, s) != s) is_unit = false;
    if (is_unit) unit = e;
  }
  if (unit == 0 || unit == parent->zero()) {
    throw std::invalid_argument("essential_ring: member set has no multiplicative identity distinct from zero");
  }
  std::vector<int> pi(static_cast<std::size_t>(k), 0);
  pi[static_cast<std::size_t>(unit) - 1] = 1;
  pi[static_cast<std::size_t>(parent->zero()) - 1] = r;
  int next = 2;
  for (int m : members) {
    if (m == unit || m == parent->zero()) continue;
    pi[static_cast<std::size_t>(m) - 1] = next++;
  }
  std::vector<int> inv(static_cast<std::size_t>(r));
  for (int m : members) inv[static_cast<std::size_t>(pi[static_cast<std::size_t>(m) - 1]) - 1] = m;

  auto ess = std::make_shared<FiniteRing>();
  ess->k = r;
  ess->name = "essential(" + parent->name + ")";
  ess->add.rows = ess->mul.rows = ess->neg.rows = r;
  ess->add.cols.resize(static_cast<std::size_t>(r) * r);
  ess->mul.cols.resize(static_cast<std::size_t>(r) * r);
  ess->neg.cols.resize(static_cast<std::size_t>(r));
  for (int a = 1; a <= r; ++a) {
    const int ma = inv[static_cast<std::size_t>(a) - 1];
    ess->neg.cols[static_cast<std::size_t>(a) - 1] = pi[static_cast<std::size_t>(parent->neg_l(ma)) - 1];
    for (int b = 1; b <= r; ++b) {
      const int mb = inv[static_cast<std::size_t>(b) - 1];
      ess->add.cols[static_cast<std::size_t>(a - 1) * r + (b - 1)] =
          pi[static_cast<std::size_t>(parent->add_l(ma, mb)) - 1];
      ess->mul.cols[static_cast<std::size_t>(a - 1) * r + (b - 1)] =
          pi[static_cast<std::size_t>(parent->mul_l(ma, mb)) - 1];
    }
  }
  return {ess, pi};
}

namespace {

bool subset_is_ideal(const FiniteRing& r, const std::vector<int>& members, const std::vector<char>& in_set) {
  bool has_unit = false;
  for (int a : members) {
    if (in_set[static_cast<std::size_t>(r.neg_l(a)) - 1] == 0) return false;
    bool unit = true;
    for (int b : members) {
      if (in_set[static_cast<std::size_t>(r.add_l(a, b)) - 1] == 0) return false;
      if (r.mul_l(a, b) != b) unit = false;
    }
    if (unit && a != r.zero()) has_unit = true;
  }
  if (!has_unit) return false;
  // absorption: x * S within S for every parent element
  for (int x = 1; x <= r.k; ++x) {
    for (int s : members) {
      if (in_set[static_cast<std::size_t>(r.mul_l(x, s)) - 1] == 0) return false;
    }
  }
  return true;
}

std::optional<std::vector<int>> compute_phi(const FiniteRing& r, const std::vector<int>& members) {
  std::vector<int> phi(static_cast<std::size_t>(r.k));
  for (int a = 1; a <= r.k; ++a) {
    int found = 0;
    for (int cand : members) {
      bool ok = true;
      for (int s : members) {
        if (r.mul_l(a, s) != r.mul_l(cand, s)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        found = cand;
        break;
      }
    }
    if (!found) return std::nullopt;
    phi[static_cast<std::size_t>(a) - 1] = found;
  }
  return phi;
}

}  // namespace

std::vector<Ideal> find_ideals(const RingPtr& r) {
  const int k = r->k;
  if (k > 20) throw std::invalid_argument("find_ideals: exhaustive subset search limited to k <= 20");
  std::vector<Ideal> out;
  const int zero = r->zero();
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    if (!(mask & (1u << (zero - 1)))) continue;
    std::vector<int> members;
    std::vector<char> in_set(static_cast<std::size_t>(k), 0);
    for (int a = 1; a <= k; ++a) {
      if (mask & (1u << (a - 1))) {
        members.push_back(a);
        in_set[static_cast<std::size_t>(a) - 1] = 1;
      }
    }
    if (members.size() < 2) continue;
    if (!subset_is_ideal(*r, members, in_set)) continue;
    Ideal ideal;
    ideal.parent = r;
    ideal.members = members;
    auto [ess, pi] = essential_ring(r, members);
    ideal.essential = ess;
    ideal.pi = pi;
    for (int m : members) {
      bool unit = true;
      for (int s : members)
        if (r->mul_l(m, s) != s) unit = false;
      if (unit) ideal.unit = m;
    }
    ideal.phi = compute_phi(*r, members);
    out.push_back(std::move(ideal));
  }
  return out;
}

IdealAction proper_ideal_map(const Ideal& ideal) {
  const FiniteRing& r = *ideal.parent;
  const int sz = static_cast<int>(ideal.members.size());
  IdealAction action;
  action.theta.reserve(static_cast<std::size_t>(r.k));
  for (int a = 1; a <= r.k; ++a) {
    LogicalMatrix theta;
    theta.rows = sz;
    theta.cols.resize(static_cast<std::size_t>(sz));
    for (int s = 1; s <= sz; ++s) {
      const int member = ideal.from_essential(s);
      theta.cols[static_cast<std::size_t>(s) - 1] = ideal.to_essential(r.mul_l(a, member));
    }
    action.theta.push_back(std::move(theta));
  }
  action.phi = compute_phi(r, ideal.members);
  return action;
}

std::vector<int> factor_sizes(const FiniteRing& r) {
  std::vector<int> sizes;
  sizes.reserve(r.factors.size());
  for (const auto& f : r.factors) sizes.push_back(f->k);
  return sizes;
}

int project(const FiniteRing& r, int label, int factor) {
  if (!r.is_product()) throw std::invalid_argument("project: ring has no factor structure");
  const auto sizes = factor_sizes(r);
  if (factor < 1 || factor > static_cast<int>(sizes.size())) throw std::invalid_argument("project: factor index out of range");
  int rest = label - 1;
  int part = 0;
  for (int i = static_cast<int>(sizes.size()); i >= 1; --i) {
    const int ki = sizes[static_cast<std::size_t>(i) - 1];
    if (i == factor) part = rest % ki + 1;
    rest /= ki;
  }
  return part;
}

int embed(const FiniteRing& r, int factor_label, int factor) {
  if (!r.is_product()) throw std::invalid_argument("embed: ring has no factor structure");
  const auto sizes = factor_sizes(r);
  if (factor < 1 || factor > static_cast<int>(sizes.size())) throw std::invalid_argument("embed: factor index out of range");
  int idx = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const int ki = sizes[i];
    const int part = (static_cast<int>(i) + 1 == factor) ? factor_label : ki;  // zero elsewhere
    idx = idx * ki + (part - 1);
  }
  return idx + 1;
}

LogicalMatrix projection_matrix(const FiniteRing& r, int factor) {
  const auto sizes = factor_sizes(r);
  LogicalMatrix m;
  m.rows = sizes[static_cast<std::size_t>(factor) - 1];
  m.cols.resize(static_cast<std::size_t>(r.k));
  for (int label = 1; label <= r.k; ++label) m.cols[static_cast<std::size_t>(label) - 1] = project(r, label, factor);
  return m;
}

std::string write_ring(const FiniteRing& r) {
  std::ostringstream os;
  os << kSerializationHeader << " k=" << r.k << " name=" << (r.name.empty() ? "unnamed" : r.name) << '\n';
  auto emit = [&os](const char* label, const LogicalMatrix& m) {
    os << label << "=[";
    for (int j = 1; j <= m.col_count(); ++j) {
      if (j > 1) os << ',';
      os << m.col(j);
    }
    os << "]\n";
  };
  emit("add", r.add);
  emit("mul", r.mul);
  emit("neg", r.neg);
  if (r.is_product()) {
    bool all_prime_fields = true;
    for (const auto& f : r.factors) {
      const auto primes = prime_factorization(f->k);
      if (primes.size() != 1 || !f->same_tables(*make_zk(f->k))) all_prime_fields = false;
    }
    if (all_prime_fields) {
      os << "factors=[";
      for (std::size_t i = 0; i < r.factors.size(); ++i) {
        if (i) os << ',';
        os << r.factors[i]->k;
      }
      os << "]\n";
    }
  }
  return os.str();
}

RingPtr read_ring(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto fail = [](const std::string& msg) { throw std::invalid_argument("read_ring: " + msg); };
  if (!std::getline(is, line)) fail("empty input");
  std::istringstream header(line);
  std::string tag;
  header >> tag;
  if (tag != kSerializationHeader) fail("missing 'ring' header");
  int k = 0;
  std::string name;
  std::string tok;
  while (header >> tok) {
    if (tok.rfind("k=", 0) == 0) k = std::stoi(tok.substr(2));
    else if (tok.rfind("name=", 0) == 0) name = tok.substr(5);
  }
  if (k < 2) fail("bad or missing cardinality");

  auto parse_list = [&fail](const std::string& l, const std::string& key) {
    const auto eq = l.find('=');
    if (eq == std::string::npos || l.substr(0, eq) != key) fail("expected '" + key + "=[...]'");
    const auto open = l.find('[', eq);
    const auto close = l.rfind(']');
    if (open == std::string::npos || close == std::string::npos || close < open) fail("malformed list for " + key);
    std::vector<int> vals;
    std::string body = l.substr(open + 1, close - open - 1);
    std::istringstream bs(body);
    std::string item;
    while (std::getline(bs, item, ',')) {
      if (!item.empty()) vals.push_back(std::stoi(item));
    }
    return vals;
  };

  auto r = std::make_shared<FiniteRing>();
  r->k = k;
  r->name = name;
  if (!std::getline(is, line)) fail("missing add table");
  r->add = LogicalMatrix::delta(k, parse_list(line, "add"));
  if (!std::getline(is, line)) fail("missing mul table");
  r->mul = LogicalMatrix::delta(k, parse_list(line, "mul"));
  if (!std::getline(is, line)) fail("missing neg table");
  r->neg = LogicalMatrix::delta(k, parse_list(line, "neg"));
  if (r->add.col_count() != k * k || r->mul.col_count() != k * k || r->neg.col_count() != k) {
    fail("table sizes inconsistent with k");
  }
  while (std::getline(is, line)) {
    if (line.rfind("factors=", 0) == 0) {
      std::vector<int> sizes = parse_list(line, "factors");
      long long prod = 1;
      for (int s : sizes) prod *= s;
      if (prod != k) fail("factor sizes do not multiply to k");
      for (int s : sizes) r->factors.push_back(make_zk(s));
    }
  }
  return r;
}

}  // namespace ringnet
