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

#ifndef RINGNET_RING_HPP
#define RINGNET_RING_HPP

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ringnet/logical.hpp"

namespace ringnet {

struct FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

/// Finite commutative ring on labels 1..k. By convention label 1 is the
/// multiplicative identity and label k is the additive zero; label v < k
/// denotes the "value" v and label k denotes 0.
struct FiniteRing {
  int k = 0;
  LogicalMatrix add;  // k x k^2
  LogicalMatrix mul;  // k x k^2
  LogicalMatrix neg;  // k x k
  std::string name;
  std::vector<RingPtr> factors;  // non-empty iff product-structured

  int add_l(int a, int b) const { return add.col((a - 1) * k + b); }
  int mul_l(int a, int b) const { return mul.col((a - 1) * k + b); }
  int neg_l(int a) const { return neg.col(a); }
  int sub_l(int a, int b) const { return add_l(a, neg_l(b)); }
  int pow_l(int a, int e) const;

  int one() const { return 1; }
  int zero() const { return k; }

  bool is_product() const { return !factors.empty(); }
  int factor_count() const { return static_cast<int>(factors.size()); }

  /// Structure matrix of subtraction, M_add (I_k (x) M_neg).
  LogicalMatrix sub_matrix() const;

  bool same_tables(const FiniteRing& other) const {
    return k == other.k && add == other.add && mul == other.mul && neg == other.neg;
  }
};

/// label <-> residue-style value (label k <-> 0)
inline int label_to_value(int k, int label) { return label == k ? 0 : label; }
inline int value_to_label(int k, int value) { return value == 0 ? k : value; }

/// Per-axiom result of the structure-matrix equations for (add, mul, neg).
struct AxiomReport {
  bool add_commutative = false;
  bool add_associative = false;
  bool add_identity = false;
  bool add_invertible = false;
  bool mul_associative = false;
  bool mul_identity = false;
  bool distributive_left = false;   // X (Y + Z) = XY + XZ
  bool distributive_right = false;  // (X + Y) Z = XZ + YZ
  bool mul_commutative = false;

  bool is_ring() const {
    return add_commutative && add_associative && add_identity && add_invertible && mul_associative &&
           mul_identity && distributive_left && distributive_right;
  }
  bool is_commutative_ring() const { return is_ring() && mul_commutative; }
};

AxiomReport verify_ring(const LogicalMatrix& add, const LogicalMatrix& mul, const LogicalMatrix& neg);
AxiomReport verify_ring(const FiniteRing& r);

/// Z_k with labels 1..k-1 for residues 1..k-1 and label k for residue 0.
RingPtr make_zk(int k);

struct EnumerationResult {
  std::vector<RingPtr> rings;  // lexicographic in (add, mul) tables
  bool complete = true;
  long long groups_found = 0;
};

/// All labeled commutative rings on {1..k} with identity 1 and zero k.
EnumerationResult enumerate_rings(int k, std::chrono::milliseconds budget = std::chrono::milliseconds(60000));

/// All label bijections fixing 1 and k that transport both tables.
/// Each bijection pi is returned as a vector with pi[a-1] = image of a.
std::vector<std::vector<int>> find_isomorphisms(const FiniteRing& r, const FiniteRing& s);

/// Product ring with mixed-radix labels: (i, j) <-> (i-1) k2 + j.
RingPtr product_ring(const RingPtr& r1, const RingPtr& r2);

/// Prime product ring Z^kappa = Z_p1 x ... x Z_ps, factors sorted ascending
/// with multiplicity. For prime kappa this is Z_kappa with a one-entry
/// factor list.
RingPtr z_kappa(int kappa);

/// The unique ring isomorphism between Z_kappa (residues) and Z^kappa
/// (mixed-radix labels), defined for squarefree kappa only.
struct CrtIso {
  int kappa = 0;
  std::vector<int> residue_to_product;  // index: residue label, value: product label
  std::vector<int> product_to_residue;

  int to_product(int residue_label) const { return residue_to_product[static_cast<std::size_t>(residue_label) - 1]; }
  int to_residue(int product_label) const { return product_to_residue[static_cast<std::size_t>(product_label) - 1]; }
};

CrtIso crt_iso(int kappa);

/// Sub-ring S of a parent ring that absorbs products, together with its
/// essential ring (same tables transported to labels 1..|S|) and the
/// transport map pi. phi is present iff the ideal is proper.
struct Ideal {
  RingPtr parent;
  std::vector<int> members;  // sorted ascending, contains parent->zero()
  int unit = 0;              // member acting as multiplicative identity on S
  RingPtr essential;
  std::vector<int> pi;                    // size k, 0 for non-members
  std::optional<std::vector<int>> phi;    // size k: parent label -> member label

  bool contains(int label) const { return pi[static_cast<std::size_t>(label) - 1] != 0; }
  int to_essential(int member_label) const { return pi[static_cast<std::size_t>(member_label) - 1]; }
  int from_essential(int essential_label) const { return members[static_cast<std::size_t>(essential_label) - 1]; }
};

/// Every subset of labels forming a sub-ring (own multiplicative identity,
/// possibly != 1) that absorbs parent products. The full ring is included.
std::vector<Ideal> find_ideals(const RingPtr& r);

/// Essential ring of a member set: ring on labels 1..|S| plus transport pi.
/// Members are relabeled with the S-unit at 1, the zero at |S| and the rest
/// in ascending label order.
std::pair<RingPtr, std::vector<int>> essential_ring(const RingPtr& parent, const std::vector<int>& members);

/// Structure matrices Theta_a of s -> a*s on S (over essential labels), and
/// phi with a*s = phi(a)*s when the ideal is proper.
struct IdealAction {
  std::vector<LogicalMatrix> theta;     // one |S|x|S| matrix per parent label
  std::optional<std::vector<int>> phi;  // parent label -> member label
};

IdealAction proper_ideal_map(const Ideal& ideal);

std::vector<int> factor_sizes(const FiniteRing& r);

/// Mixed-radix projection of a product-ring label onto factor i (1-based).
int project(const FiniteRing& r, int label, int factor);

/// Embedding of a factor label: all other parts set to their zero.
int embed(const FiniteRing& r, int factor_label, int factor);

/// Structure matrix of project(., i): k_i x kappa logical matrix.
LogicalMatrix projection_matrix(const FiniteRing& r, int factor);

/// Text serialization (bit-exact round-trip).
std::string write_ring(const FiniteRing& r);
RingPtr read_ring(const std::string& text);

}  // namespace ringnet

#endif
