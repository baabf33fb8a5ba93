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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "golden.hpp"
#include "ringnet/ring.hpp"

using namespace ringnet;

namespace {

// Elementwise oracle: checks the distributive law by looping over all
// triples, independent of the structure-matrix equations.
bool distributive_elementwise(const FiniteRing& r) {
  for (int x = 1; x <= r.k; ++x)
    for (int y = 1; y <= r.k; ++y)
      for (int z = 1; z <= r.k; ++z) {
        if (r.mul_l(x, r.add_l(y, z)) != r.add_l(r.mul_l(x, y), r.mul_l(x, z))) return false;
        if (r.mul_l(r.add_l(x, y), z) != r.add_l(r.mul_l(x, z), r.mul_l(y, z))) return false;
      }
  return true;
}

RingPtr ring_from_tables(int k, const std::vector<int>& add, const std::vector<int>& mul) {
  auto r = std::make_shared<FiniteRing>();
  r->k = k;
  r->add = LogicalMatrix::delta(k, add);
  r->mul = LogicalMatrix::delta(k, mul);
  r->neg.rows = k;
  r->neg.cols.resize(static_cast<std::size_t>(k));
  for (int a = 1; a <= k; ++a) {
    for (int b = 1; b <= k; ++b) {
      if (r->add_l(a, b) == k) r->neg.cols[static_cast<std::size_t>(a) - 1] = b;
    }
  }
  return r;
}

}  // namespace

TEST_CASE("make_zk reproduces the printed prime and composite tables") {
  const RingPtr z5 = make_zk(5);
  CHECK(z5->add.cols == golden::z5_add());
  CHECK(z5->mul.cols == golden::z5_mul());
  CHECK(z5->neg.cols == golden::z5_neg());
  CHECK(z5->sub_matrix().cols == golden::z5_sub());

  const RingPtr z6 = make_zk(6);
  CHECK(z6->add.cols == golden::z6_add());
  CHECK(z6->mul.cols == golden::z6_mul());
  CHECK(z6->neg.cols == golden::z6_neg());

  const RingPtr z2 = make_zk(2);
  CHECK(z2->add.cols == std::vector<int>{2, 1, 1, 2});
  CHECK(z2->mul.cols == std::vector<int>{1, 2, 2, 2});
}

TEST_CASE("verify_ring accepts valid rings and localizes broken axioms") {
  CHECK(verify_ring(*make_zk(5)).is_commutative_ring());
  CHECK(verify_ring(*make_zk(6)).is_commutative_ring());

  const auto& g = golden::order4_rings();
  for (const auto& tables : g) {
    const RingPtr r = ring_from_tables(4, tables.add, tables.mul);
    CHECK(verify_ring(*r).is_commutative_ring());
    CHECK(distributive_elementwise(*r));
  }

  SUBCASE("a perturbed product table breaks distributivity in both oracles") {
    std::vector<int> mul = make_zk(5)->mul.cols;
    mul[7] = mul[7] % 5 + 1;  // corrupt one entry
    const RingPtr bad = ring_from_tables(5, make_zk(5)->add.cols, mul);
    const AxiomReport rep = verify_ring(*bad);
    CHECK_FALSE((rep.distributive_left && rep.distributive_right));
    CHECK_FALSE(distributive_elementwise(*bad));
    CHECK_FALSE(rep.is_commutative_ring());
  }

  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(verify_ring(LogicalMatrix::identity(4), make_zk(2)->mul, make_zk(2)->neg),
                    std::invalid_argument);
  }
}

TEST_CASE("enumerate_rings finds every commutative ring on small carriers") {
  CHECK(enumerate_rings(2).rings.size() == 1);
  CHECK(enumerate_rings(2).rings[0]->same_tables(*make_zk(2)));
  CHECK(enumerate_rings(3).rings.size() == 1);
  CHECK(enumerate_rings(3).rings[0]->same_tables(*make_zk(3)));

  const EnumerationResult res = enumerate_rings(4);
  REQUIRE(res.complete);
  REQUIRE(res.rings.size() == 6);

  // set equality with the six reference rings
  std::set<std::pair<std::vector<int>, std::vector<int>>> expected, got;
  for (const auto& t : golden::order4_rings()) expected.insert({t.add, t.mul});
  for (const auto& r : res.rings) got.insert({r->add.cols, r->mul.cols});
  CHECK(expected == got);

  // deterministic ordering: lexicographic in (add, mul)
  for (std::size_t i = 1; i < res.rings.size(); ++i) {
    const auto key = [](const RingPtr& r) { return std::make_pair(r->add.cols, r->mul.cols); };
    CHECK(key(res.rings[i - 1]) < key(res.rings[i]));
  }

  // every enumerated ring verifies
  for (const auto& r : res.rings) CHECK(verify_ring(*r).is_commutative_ring());

  SUBCASE("tiny budget yields a partial result") {
    const EnumerationResult partial = enumerate_rings(6, std::chrono::milliseconds(0));
    CHECK_FALSE(partial.complete);
  }

  SUBCASE("prime carriers enumerate to relabelings of the field") {
    // labeled tables: with only 1 and 0 pinned, the middle labels of Z5
    // permute freely, giving 3! distinct tables in one isomorphism class
    const EnumerationResult res5 = enumerate_rings(5);
    REQUIRE(res5.complete);
    CHECK(res5.rings.size() == 6);
    for (const auto& r : res5.rings) {
      CHECK(verify_ring(*r).is_commutative_ring());
      CHECK_FALSE(find_isomorphisms(*r, *make_zk(5)).empty());
    }
  }

  SUBCASE("six-element carriers enumerate within the budget") {
    const EnumerationResult res6 = enumerate_rings(6);
    REQUIRE(res6.complete);
    CHECK(res6.rings.size() == 24);
    for (const auto& r : res6.rings) CHECK(verify_ring(*r).is_commutative_ring());
    CHECK_FALSE(find_isomorphisms(*res6.rings[0], *make_zk(6)).empty());
  }
}

TEST_CASE("isomorphism search over order-4 rings") {
  const auto& g = golden::order4_rings();
  std::vector<RingPtr> rings;
  for (const auto& t : g) rings.push_back(ring_from_tables(4, t.add, t.mul));

  // the published relabeling between the first and fifth ring
  const auto isos = find_isomorphisms(*rings[0], *rings[4]);
  const std::vector<int> pi = {1, 3, 2, 4};
  CHECK(std::find(isos.begin(), isos.end(), pi) != isos.end());

  // identity is always an automorphism
  for (const auto& r : rings) {
    const auto autos = find_isomorphisms(*r, *r);
    const std::vector<int> id = {1, 2, 3, 4};
    CHECK(std::find(autos.begin(), autos.end(), id) != autos.end());
  }

  // the literal "automorphic" reading fails: these rings are rigid
  CHECK(find_isomorphisms(*rings[0], *rings[0]).size() == 1);
  CHECK(find_isomorphisms(*rings[4], *rings[4]).size() == 1);

  // isomorphism classes: {1,5}, {2,6}, {3}, {4}
  std::vector<std::set<int>> classes;
  std::vector<bool> used(6, false);
  for (int i = 0; i < 6; ++i) {
    if (used[static_cast<std::size_t>(i)]) continue;
    std::set<int> cls = {i + 1};
    used[static_cast<std::size_t>(i)] = true;
    for (int j = i + 1; j < 6; ++j) {
      if (!used[static_cast<std::size_t>(j)] && !find_isomorphisms(*rings[static_cast<std::size_t>(i)],
                                                                   *rings[static_cast<std::size_t>(j)])
                                                     .empty()) {
        cls.insert(j + 1);
        used[static_cast<std::size_t>(j)] = true;
      }
    }
    classes.push_back(cls);
  }
  const std::vector<std::set<int>> expected_classes = {{1, 5}, {2, 6}, {3}, {4}};
  CHECK(classes == expected_classes);

  // the fifth ring is Z_4 itself
  CHECK(rings[4]->same_tables(*make_zk(4)));

  CHECK(find_isomorphisms(*rings[0], *make_zk(2)).empty());
}

TEST_CASE("product rings reproduce the published tables") {
  const RingPtr p22 = product_ring(make_zk(2), make_zk(2));
  CHECK(p22->add.cols == golden::z2xz2_add());
  CHECK(p22->mul.cols == golden::z2xz2_mul());
  CHECK(p22->neg == LogicalMatrix::identity(4));

  const RingPtr p23 = product_ring(make_zk(2), make_zk(3));
  CHECK(p23->add.cols == golden::z2xz3_add());
  CHECK(p23->mul.cols == golden::z2xz3_mul());
  CHECK(p23->neg.cols == golden::z2xz3_neg());

  // direct componentwise construction agrees with the STP formula
  for (int a = 1; a <= 6; ++a) {
    for (int b = 1; b <= 6; ++b) {
      const int a1 = project(*p23, a, 1), a2 = project(*p23, a, 2);
      const int b1 = project(*p23, b, 1), b2 = project(*p23, b, 2);
      const int s1 = make_zk(2)->add_l(a1, b1), s2 = make_zk(3)->add_l(a2, b2);
      CHECK(p23->add_l(a, b) == (s1 - 1) * 3 + s2);
    }
  }

  SUBCASE("any product of rings verifies") {
    const RingPtr p33 = product_ring(make_zk(3), make_zk(3));
    CHECK(verify_ring(*p33).is_commutative_ring());
    CHECK(verify_ring(*product_ring(p33, make_zk(2))).is_commutative_ring());
  }

  SUBCASE("product is commutative up to isomorphism") {
    for (const auto [k1, k2] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
      const RingPtr ab = product_ring(make_zk(k1), make_zk(k2));
      const RingPtr ba = product_ring(make_zk(k2), make_zk(k1));
      CHECK_FALSE(find_isomorphisms(*ab, *ba).empty());
    }
  }

  SUBCASE("every constructor yields a verified ring") {
    for (int k = 2; k <= 8; ++k) CHECK(verify_ring(*make_zk(k)).is_commutative_ring());
    for (int kappa : {4, 6, 8, 9, 10, 12}) CHECK(verify_ring(*z_kappa(kappa)).is_commutative_ring());
  }

  SUBCASE("bracketing does not change the flattened tables") {
    const RingPtr left = product_ring(product_ring(make_zk(2), make_zk(2)), make_zk(3));
    const RingPtr right = product_ring(make_zk(2), product_ring(make_zk(2), make_zk(3)));
    CHECK(left->same_tables(*right));
    CHECK(factor_sizes(*left) == factor_sizes(*right));
  }
}

TEST_CASE("z_kappa builds the prime product ring") {
  const RingPtr zp6 = z_kappa(6);
  CHECK(zp6->add.cols == golden::z2xz3_add());
  CHECK(zp6->mul.cols == golden::z2xz3_mul());
  CHECK(factor_sizes(*zp6) == std::vector<int>{2, 3});

  // Z^4 is Z2 x Z2, not Z_4
  const RingPtr zp4 = z_kappa(4);
  CHECK(zp4->add.cols == golden::z2xz2_add());
  CHECK_FALSE(zp4->same_tables(*make_zk(4)));

  // prime kappa degenerates to the field with a single factor
  const RingPtr zp5 = z_kappa(5);
  CHECK(zp5->add == make_zk(5)->add);
  CHECK(zp5->mul == make_zk(5)->mul);
  CHECK(zp5->factor_count() == 1);

  CHECK(factor_sizes(*z_kappa(12)) == std::vector<int>{2, 2, 3});
  CHECK(verify_ring(*z_kappa(12)).is_commutative_ring());
}

TEST_CASE("crt bridge between residue and mixed-radix naming") {
  const CrtIso iso = crt_iso(6);
  CHECK(iso.to_product(6) == 6);  // zero to zero
  CHECK(iso.to_product(1) == 1);  // one to one
  CHECK(iso.to_product(3) == 3);  // residue 3 = parts (1, 0)
  const RingPtr zp6 = z_kappa(6);
  CHECK(project(*zp6, iso.to_product(4), 1) == 2);  // residue 4 = parts (0, 1)
  CHECK(project(*zp6, iso.to_product(4), 2) == 1);
  for (int a = 1; a <= 6; ++a) CHECK(iso.to_residue(iso.to_product(a)) == a);

  CHECK_THROWS_AS(crt_iso(4), std::invalid_argument);
  CHECK_THROWS_AS(crt_iso(12), std::invalid_argument);
  CHECK_NOTHROW(crt_iso(15));
  CHECK_NOTHROW(crt_iso(30));
}

TEST_CASE("ideals of Z6 and their essential rings") {
  const RingPtr z6 = make_zk(6);
  const auto ideals = find_ideals(z6);

  auto find_members = [&](std::vector<int> members) -> const Ideal* {
    for (const auto& ideal : ideals) {
      if (ideal.members == members) return &ideal;
    }
    return nullptr;
  };

  REQUIRE(ideals.size() == 3);

  const Ideal* s36 = find_members({3, 6});
  REQUIRE(s36 != nullptr);
  CHECK(s36->unit == 3);
  CHECK(s36->essential->same_tables(*make_zk(2)));
  CHECK(s36->to_essential(3) == 1);
  CHECK(s36->to_essential(6) == 2);

  const Ideal* s246 = find_members({2, 4, 6});
  REQUIRE(s246 != nullptr);
  CHECK(s246->unit == 4);
  CHECK(s246->essential->same_tables(*make_zk(3)));
  CHECK(s246->to_essential(4) == 1);

  const Ideal* full = find_members({1, 2, 3, 4, 5, 6});
  REQUIRE(full != nullptr);
  CHECK(full->unit == 1);
  CHECK(full->essential->same_tables(*z6));

  SUBCASE("transport and phi consistency for every ideal") {
    for (const auto& ideal : ideals) {
      for (int a : ideal.members) {
        for (int b : ideal.members) {
          CHECK(ideal.to_essential(z6->add_l(a, b)) ==
                ideal.essential->add_l(ideal.to_essential(a), ideal.to_essential(b)));
          CHECK(ideal.to_essential(z6->mul_l(a, b)) ==
                ideal.essential->mul_l(ideal.to_essential(a), ideal.to_essential(b)));
        }
      }
      REQUIRE(ideal.phi.has_value());
      for (int a = 1; a <= 6; ++a) {
        for (int s : ideal.members) {
          CHECK(z6->mul_l(a, s) == z6->mul_l((*ideal.phi)[static_cast<std::size_t>(a) - 1], s));
        }
      }
    }
  }

  SUBCASE("theta maps of the two-element ideal") {
    const IdealAction action = proper_ideal_map(*s36);
    const LogicalMatrix id2 = LogicalMatrix::identity(2);
    const LogicalMatrix drop = LogicalMatrix::delta(2, {2, 2});
    CHECK(action.theta[0] == id2);   // a = 1
    CHECK(action.theta[2] == id2);   // a = 3
    CHECK(action.theta[4] == id2);   // a = 5
    CHECK(action.theta[1] == drop);  // a = 2
    CHECK(action.theta[3] == drop);  // a = 4
    CHECK(action.theta[5] == drop);  // a = 6
    REQUIRE(action.phi.has_value());
    CHECK(*action.phi == std::vector<int>{3, 6, 3, 6, 3, 6});
  }
}

TEST_CASE("projection and embedding over product rings") {
  // two-factor product with unequal factor sizes, larger factor first
  const RingPtr z5x3 = product_ring(make_zk(5), make_zk(3));
  CHECK(embed(*z5x3, 3, 1) == 9);
  CHECK(embed(*z5x3, 4, 1) == 12);
  CHECK(embed(*z5x3, 2, 2) == 14);
  CHECK(embed(*z5x3, 1, 1) == 3);
  CHECK(embed(*z5x3, 1, 2) == 13);

  // identities map to identities, zero to zero
  const RingPtr zp6 = z_kappa(6);
  CHECK(project(*zp6, 1, 1) == 1);
  CHECK(project(*zp6, 1, 2) == 1);
  CHECK(project(*zp6, 6, 1) == 2);
  CHECK(project(*zp6, 6, 2) == 3);

  // round trip and mixed-radix bijection
  for (const RingPtr& r : {z5x3, zp6, z_kappa(12)}) {
    const auto sizes = factor_sizes(*r);
    for (int i = 1; i <= r->factor_count(); ++i) {
      for (int v = 1; v <= sizes[static_cast<std::size_t>(i) - 1]; ++v) {
        CHECK(project(*r, embed(*r, v, i), i) == v);
      }
    }
    std::set<std::vector<int>> seen;
    for (int label = 1; label <= r->k; ++label) {
      std::vector<int> parts;
      for (int i = 1; i <= r->factor_count(); ++i) parts.push_back(project(*r, label, i));
      seen.insert(parts);
    }
    CHECK(static_cast<int>(seen.size()) == r->k);
  }

  // projection structure matrices act column-wise
  for (int i = 1; i <= 2; ++i) {
    const LogicalMatrix e = projection_matrix(*zp6, i);
    for (int label = 1; label <= 6; ++label) CHECK(e.col(label) == project(*zp6, label, i));
  }

  CHECK_THROWS_AS(project(*make_zk(6), 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(project(*zp6, 1, 3), std::invalid_argument);
}

TEST_CASE("ring serialization round trip") {
  for (const RingPtr& r : {make_zk(6), z_kappa(6), product_ring(make_zk(2), make_zk(2))}) {
    const std::string text = write_ring(*r);
    const RingPtr back = read_ring(text);
    CHECK(back->same_tables(*r));
    CHECK(back->k == r->k);
    CHECK(write_ring(*back) == text);
    CHECK(factor_sizes(*back) == factor_sizes(*r));
  }
  CHECK_THROWS_AS(read_ring("nonsense"), std::invalid_argument);
  CHECK_THROWS_AS(read_ring("ring k=3 name=x\nadd=[1,2]\n"), std::invalid_argument);
}
