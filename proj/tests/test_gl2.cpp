#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <vector>

#include "gl2.hpp"

using namespace weil;

static GroupElement random_gl2(const FieldSpec& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, F.q - 1);
  while (true) {
    GroupElement g{&F, d(rng), d(rng), d(rng), d(rng)};
    if (g.invertible()) return g;
  }
}

TEST_CASE("group operations") {
  Tower T = Tower::make(3);
  const FieldSpec& F = *T.F;
  std::mt19937_64 rng(42);
  GroupElement id = gl2_identity(F);
  for (int i = 0; i < 200; ++i) {
    GroupElement g = random_gl2(F, rng), h = random_gl2(F, rng);
    CHECK(gl2_mul(g, gl2_inv(g)) == id);
    CHECK(gl2_mul(gl2_inv(g), g) == id);
    CHECK(gl2_mul(g, id) == g);
    // (gh)^{-1} = h^{-1} g^{-1}
    CHECK(gl2_inv(gl2_mul(g, h)) == gl2_mul(gl2_inv(h), gl2_inv(g)));
    // det is multiplicative, transpose is an anti-automorphism
    CHECK(gl2_mul(g, h).det() == F.mul(g.det(), h.det()));
    CHECK(gl2_transpose(gl2_mul(g, h)) ==
          gl2_mul(gl2_transpose(h), gl2_transpose(g)));
    CHECK(gl2_unpack(F, gl2_pack(g)) == g);
  }
}

TEST_CASE("bruhat factorization round-trips on all of GL2(F_3)") {
  Tower T = Tower::make(3);
  const FieldSpec& F = *T.F;
  int count = 0;
  for (std::uint32_t key = 0; key < 81; ++key) {
    GroupElement g = gl2_unpack(F, key);
    if (!g.invertible()) continue;
    ++count;
    BruhatFactorization f = bruhat_factor(g);
    CHECK(bruhat_compose(F, f) == g);
    CHECK(f.has_omega == (g.c != 0));
  }
  CHECK(count == 48);
}

TEST_CASE("bruhat factorization on random elements over F_9 and F_27") {
  Tower T = Tower::make(3);
  std::mt19937_64 rng(7);
  for (const FieldSpec* X : {T.E.get(), T.K.get()}) {
    for (int i = 0; i < 1000; ++i) {
      GroupElement g = random_gl2(*X, rng);
      CHECK(bruhat_compose(*X, bruhat_factor(g)) == g);
    }
  }
}

TEST_CASE("bruhat example over F_3") {
  Tower T = Tower::make(3);
  const FieldSpec& F = *T.F;
  GroupElement g{&F, 1, 2, 1, 1};  // c != 0, so the factorization uses omega
  BruhatFactorization f = bruhat_factor(g);
  CHECK(f.has_omega);
  CHECK(f.x == 1);                      // a/c = 1
  CHECK(f.p == F.neg(F.div(g.det(), 1)));
  CHECK(f.s == F.neg(1));
  CHECK(f.y == 1);                      // d/c = 1
  CHECK(bruhat_compose(F, f) == g);
}

TEST_CASE("class counts and sizes") {
  Tower T = Tower::make(3);
  struct Case {
    const FieldSpec* F;
    const FieldSpec* ext;
  };
  for (Case c : {Case{T.F.get(), T.E.get()}, Case{T.E.get(), T.E4.get()},
                 Case{T.K.get(), T.L6.get()}}) {
    std::uint32_t q = c.F->q;
    ClassList cl(*c.F, *c.ext);
    // q^2 - 1 classes in total
    CHECK(cl.size() == static_cast<std::size_t>(q) * q - 1);
    std::map<ClassKind, int> counts;
    std::uint64_t total = 0;
    for (const auto& ci : cl.classes()) {
      counts[ci.kind]++;
      total += ci.size;
      CHECK(ci.rep.invertible());
      // the representative lies in its own class
      CHECK(cl[cl.class_of(ci.rep)].rep == ci.rep);
    }
    CHECK(counts[ClassKind::Central] == static_cast<int>(q - 1));
    CHECK(counts[ClassKind::Jordan] == static_cast<int>(q - 1));
    CHECK(counts[ClassKind::Split] == static_cast<int>((q - 1) * (q - 2) / 2));
    CHECK(counts[ClassKind::Elliptic] == static_cast<int>(q * (q - 1) / 2));
    CHECK(total == gl2_order(q));
  }
}

TEST_CASE("class_of is conjugation invariant") {
  Tower T = Tower::make(5);
  ClassList cl(*T.F, *T.E);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    GroupElement g = random_gl2(*T.F, rng);
    GroupElement h = random_gl2(*T.F, rng);
    GroupElement conj = gl2_mul(gl2_mul(h, g), gl2_inv(h));
    CHECK(cl.class_of(g) == cl.class_of(conj));
  }
}

TEST_CASE("class partition agrees with brute-force conjugacy over F_3") {
  Tower T = Tower::make(3);
  const FieldSpec& F = *T.F;
  ClassList cl(F, *T.E);
  // Collect all invertible elements and the full conjugation partition.
  std::vector<GroupElement> G;
  for (std::uint32_t key = 0; key < 81; ++key) {
    GroupElement g = gl2_unpack(F, key);
    if (g.invertible()) G.push_back(g);
  }
  std::map<std::uint32_t, std::uint64_t> bucket_sizes;
  for (const auto& g : G) bucket_sizes[cl.class_of(g)]++;
  CHECK(bucket_sizes.size() == cl.size());
  for (const auto& [idx, n] : bucket_sizes) CHECK(n == cl[idx].size);
  // Brute force: g and hgh^{-1} always land in the same bucket.
  for (const auto& g : G)
    for (const auto& h : G)
      CHECK(cl.class_of(g) == cl.class_of(gl2_mul(gl2_mul(h, g), gl2_inv(h))));
}
