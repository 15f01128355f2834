#include "doctest.h"

#include <numeric>
#include <set>

#include "scat/galois.hpp"

using namespace scat;

namespace {

uint64_t lcg(uint64_t &s)
{
  s = s * 6364136223846793005ull + 1442695040888963407ull;
  return s >> 33;
}

// brute closure of a generating set, for small matrix groups
size_t closure_size(const field_ctx &F, size_t li, const std::vector<matrix> &gens,
                    size_t cap = 100000)
{
  std::set<std::vector<uint32_t>> seen;
  std::vector<matrix> frontier;
  matrix id = mat_identity(gens.at(0).rows);
  seen.insert(id.a);
  frontier.push_back(id);
  while (!frontier.empty() && seen.size() <= cap) {
    matrix cur = frontier.back();
    frontier.pop_back();
    for (const auto &g : gens) {
      matrix nx = mat_mul(F, li, cur, g);
      if (seen.insert(nx.a).second)
        frontier.push_back(nx);
    }
  }
  return seen.size();
}

} // namespace

TEST_CASE("t-normalized preconditions")
{
  auto F = make_field(3, {1, 2});
  CHECK_NOTHROW(require_t_normalized(make_lin_poly(F, 2, {1}), 1));
  CHECK_NOTHROW(require_t_normalized(make_lin_poly(F, 2, {2, 1}), 2));
  CHECK_NOTHROW(require_t_normalized(make_lin_poly(F, 2, {1, 5, 0, 1}), 2));

  // not monic
  CHECK_THROWS_AS(require_t_normalized(make_lin_poly(F, 2, {2}), 1), error);
  // x^(q^t) coefficient present
  CHECK_THROWS_AS(require_t_normalized(make_lin_poly(F, 2, {1, 1}), 1), error);
  // zero linear term
  CHECK_THROWS_AS(require_t_normalized(make_lin_poly(F, 2, {0, 1}), 2), error);
  // t = 0 has no normalized form here
  CHECK_THROWS_AS(require_t_normalized(make_lin_poly(F, 2, {1}), 0), error);
  // zero polynomial
  CHECK_THROWS_AS(require_t_normalized(make_lin_poly(F, 2, {}), 1), error);
}

TEST_CASE("specialized polynomial layout")
{
  auto F = make_field(3, {1, 2});
  auto l = make_lin_poly(F, 2, {2, 1}); // x^q + 2x
  // l/x - s0 x^(q^2 - 1) at t = 2: exponents 0, 2, 8
  auto P = specialized_poly(l, 2, 2, 5);
  REQUIRE(up::deg(P) == 8);
  CHECK(P[0] == 2);
  CHECK(P[2] == 1);
  CHECK(P[8] == F->neg(2, 5));
  for (size_t i : {1u, 3u, 4u, 5u, 6u, 7u})
    CHECK(P[i] == 0);

  // s0 = 0 with t > r drops the generic degree
  auto P0 = specialized_poly(l, 2, 2, 0);
  CHECK(up::deg(P0) == 2);

  CHECK_THROWS_AS(specialized_poly(l, 2, 2, 9), error);
  CHECK_THROWS_AS(specialized_poly(l, 0, 2, 0), error);
}

TEST_CASE("orbit type of x at t = 2 over the prime field")
{
  auto F = make_field(3, {1, 1});
  auto x = make_lin_poly(F, 2, {1});
  // specialization x^8 - 1 over F_3: two roots of unity in F_3, three
  // conjugate quadratic pairs in F_9
  auto ot = orbit_type_at(x, 2, 1, 1);
  CHECK(ot.degrees == std::vector<uint32_t>{1, 1, 2, 2, 2});
  CHECK_FALSE(ot.ramified);
  CHECK_FALSE(ot.degenerate);
  CHECK(uint64_t(std::accumulate(ot.degrees.begin(), ot.degrees.end(), 0u)) == 8);

  auto j = ot.to_json();
  CHECK(j["s0"] == 1);
  CHECK(j["degrees"].size() == 5);
  CHECK(j["ramified"] == false);

  // s0 = 0 with t > r: the specialization collapses to a constant
  auto od = orbit_type_at(x, 2, 1, 0);
  CHECK(od.degenerate);
  CHECK(od.ramified);
  CHECK(od.degrees.empty());

  CHECK_THROWS_AS(orbit_type_at(make_lin_poly(F, 2, {2}), 2, 1, 1), error);
}

TEST_CASE("orbit degrees track kernel dimensions place by place")
{
  auto F = make_field(3, {1, 2});
  uint64_t q = 3;

  for (auto [cs, t] : std::vector<std::pair<std::vector<uint64_t>, uint32_t>>{
           {{1, 0, 1}, 1},  // x^(q^2) + x, t = 1
           {{2, 1}, 2},     // x^q + 2x, t = 2
           {{4, 1}, 2},     // coefficient outside F_q
       }) {
    auto l = make_lin_poly(F, 2, cs);
    auto ctx = make_specialization_ctx(l, target_layer(l, 1), t);
    uint32_t d = scatter_degree(l, t);
    uint64_t generic = 1;
    for (uint32_t i = 0; i < d; ++i)
      generic *= q;
    --generic;

    for (uint64_t s0 = 0; s0 < 9; ++s0) {
      auto ot = orbit_type_at(l, t, 1, s0);
      uint64_t ones = 0, total = 0;
      for (auto dg : ot.degrees) {
        total += dg;
        if (dg == 1)
          ++ones;
      }
      uint64_t qk = 1;
      for (uint32_t i = 0; i < ctx.kernel_dim_at(s0); ++i)
        qk *= q;
      CHECK(ones == qk - 1);
      if (!ot.ramified)
        CHECK(total == generic);
    }
  }
}

TEST_CASE("rank condition and fixed point counts")
{
  auto F3 = make_field(3, {1});
  const auto &F = *F3;

  matrix id3 = mat_identity(3);
  CHECK_FALSE(rank_condition(F, 1, id3));
  CHECK(fixed_points_nonzero(F, 1, mat_identity(2)) == 8);

  matrix diag{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}};
  CHECK_FALSE(rank_condition(F, 1, diag));
  CHECK(fixed_points_nonzero(F, 1, diag) == 8);

  // a Singer generator fixes only zero
  auto kr = kummer_monodromy(3, 1, 1, 3);
  const auto &FS = *kr.F;
  CHECK(rank_condition(FS, 1, kr.singer));
  CHECK(fixed_points_nonzero(FS, 1, kr.singer) == 0);

  matrix shear{{1, 1}, {0, 1}};
  CHECK(rank_condition(F, 1, shear)); // rank(M - I) = 1 = d - 1
  CHECK(fixed_points_nonzero(F, 1, shear) == 2);

  matrix sing{{1, 2}, {2, 1}};
  CHECK_THROWS_AS(rank_condition(F, 1, sing), error);
  CHECK_THROWS_AS(fixed_points_nonzero(F, 1, sing), error);
}

TEST_CASE("rank condition agrees with the fixed point bound")
{
  uint64_t seed = 20260822;
  for (auto [p, deg] : std::vector<std::pair<uint64_t, uint32_t>>{
           {2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
    auto Fp = make_field(p, {deg});
    const auto &F = *Fp;
    uint64_t q = F.cardinality(1);
    for (uint32_t d : {2u, 3u}) {
      int tried = 0;
      for (int it = 0; it < 400 && tried < 200; ++it) {
        matrix M(d, d);
        for (auto &e : M.a)
          e = uint32_t(lcg(seed) % q);
        if (mat_rank(F, 1, M) != d)
          continue;
        ++tried;
        bool rc = rank_condition(F, 1, M);
        uint64_t fp = fixed_points_nonzero(F, 1, M);
        CHECK(rc == (fp <= q - 1));
      }
      CHECK(tried >= 100);
    }
  }
}

TEST_CASE("equivalence report on a scattered example")
{
  auto F = make_field(3, {1, 2});
  auto x = make_lin_poly(F, 2, {1});
  auto rep = verify_equivalence(x, 1, 1);
  CHECK(rep.q == 3);
  CHECK(rep.n == 2);
  CHECK(rep.m == 1);
  CHECK(rep.t == 1);
  CHECK(rep.places == 9);
  CHECK(rep.all_consistent);
  CHECK(rep.inconsistent == 0);
  CHECK(rep.scattered);
  CHECK(rep.global_bound_holds);
  CHECK(rep.agree);
  CHECK(rep.dropped == 1); // only s0 = 0 loses degree
  REQUIRE(rep.detail.size() == 9);
  CHECK(rep.detail[0].dropped);
  CHECK(rep.detail[0].fixed_roots == 0);
  for (const auto &pl : rep.detail) {
    CHECK(pl.consistent);
    CHECK(pl.fixed_roots <= 2);
  }

  auto j = rep.to_json();
  CHECK(j["equivalence_holds"] == true);
  CHECK(j["places_detail"].size() == 9);
}

TEST_CASE("equivalence report on a non-scattered witness")
{
  // x^(q^2) - x vanishes on all of F_9, so s0 = 0 already has kernel
  // dimension 2; the fixed point bound fails in step with scatteredness
  auto F = make_field(3, {1, 1, 2});
  auto l = make_lin_poly(F, 2, {2, 0, 1});
  auto rep = verify_equivalence(l, 3, 2);
  CHECK(rep.n == 1);
  CHECK(rep.d == 3);
  CHECK(rep.places == 9);
  CHECK_FALSE(rep.scattered);
  CHECK_FALSE(rep.global_bound_holds);
  CHECK(rep.agree);
  CHECK(rep.all_consistent);
  REQUIRE(rep.detail.size() == 9);
  CHECK(rep.detail[0].kernel_dim == 2);
  CHECK(rep.detail[0].fixed_roots == 8);

  // same data through the matrix-side operators: the place at s0 = 0 has
  // 8 nonzero fixed vectors, violating the q - 1 bound
  CHECK(rep.detail[0].fixed_roots > rep.q - 1);
}

TEST_CASE("equivalence input checks")
{
  auto F = make_field(3, {1, 2});
  CHECK_THROWS_AS(verify_equivalence(make_lin_poly(F, 2, {2}), 1, 1), error);

  run_limits tiny;
  tiny.max_specializations = 4;
  CHECK_THROWS_AS(verify_equivalence(make_lin_poly(F, 2, {1}), 1, 1, tiny), error);

  // detail list is suppressed past the cap but the verdict is unchanged
  auto rep = verify_equivalence(make_lin_poly(F, 2, {1}), 1, 1, {}, 4);
  CHECK(rep.detail.empty());
  CHECK(rep.scattered);
  CHECK(rep.agree);
}

TEST_CASE("newton polygon at both places, t below the degree")
{
  auto F = make_field(3, {1, 2});
  auto l = make_lin_poly(F, 2, {1, 0, 1}); // x^(q^2) + x, t = 1

  auto inf = newton_ramification(l, 1, true);
  CHECK(inf.place == "s=inf");
  REQUIRE(inf.entries.size() == 2);
  CHECK(inf.entries[0].e == 2);
  CHECK(inf.entries[0].multiplicity == 1);
  CHECK_FALSE(inf.entries[0].wild);
  CHECK(inf.entries[0].slope_num == -1);
  CHECK(inf.entries[0].slope_den == 2);
  CHECK(inf.entries[1].e == 6);
  CHECK(inf.entries[1].multiplicity == 1);
  CHECK(inf.entries[1].wild);
  CHECK(inf.total_degree == 8);
  CHECK(inf.q_divisible);

  // at s = 0 the family is unramified: one ordinary segment
  auto zero = newton_ramification(l, 1, false);
  CHECK(zero.place == "s=0");
  REQUIRE(zero.entries.size() == 1);
  CHECK(zero.entries[0].e == 1);
  CHECK(zero.entries[0].multiplicity == 8);
  CHECK(zero.total_degree == 8);
  CHECK_FALSE(zero.q_divisible);

  auto j = inf.to_json();
  CHECK(j["entries"].size() == 2);
  CHECK(j["q_divisible"] == true);
}

TEST_CASE("newton polygon, t above the degree")
{
  auto F = make_field(3, {1, 2});

  // r = 0: single totally ramified place of index q^t - 1, prime to q
  auto x = make_lin_poly(F, 2, {1});
  auto z = newton_ramification(x, 3, false);
  REQUIRE(z.entries.size() == 1);
  CHECK(z.entries[0].e == 26);
  CHECK(z.entries[0].multiplicity == 1);
  CHECK_FALSE(z.entries[0].wild);
  CHECK_FALSE(z.q_divisible);
  CHECK(z.total_degree == 26);

  auto i = newton_ramification(x, 3, true);
  REQUIRE(i.entries.size() == 1);
  CHECK(i.entries[0].e == 26);
  CHECK(i.entries[0].slope_num == -1);
  CHECK_FALSE(i.q_divisible);

  // r = 1: the finite place splits off a tame part of width q^r - 1
  auto l = make_lin_poly(F, 2, {2, 1});
  auto z1 = newton_ramification(l, 3, false);
  REQUIRE(z1.entries.size() == 2);
  CHECK(z1.entries[0].e == 1);
  CHECK(z1.entries[0].multiplicity == 2);
  CHECK(z1.entries[1].e == 24);
  CHECK(z1.entries[1].wild);
  CHECK(z1.total_degree == 26);

  auto i1 = newton_ramification(l, 3, true);
  REQUIRE(i1.entries.size() == 1);
  CHECK(i1.entries[0].e == 26);
  CHECK(i1.entries[0].multiplicity == 1);
  CHECK(i1.total_degree == 26);
}

TEST_CASE("newton polygon errors and totals")
{
  auto F = make_field(3, {1, 2});
  CHECK_THROWS_AS(newton_ramification(make_lin_poly(F, 2, {2, 1}), 1, false), error);
  CHECK_THROWS_AS(newton_ramification(make_lin_poly(F, 2, {0, 1, 1}), 2, false), error);

  // totals always add to q^d - 1
  for (auto [cs, t] : std::vector<std::pair<std::vector<uint64_t>, uint32_t>>{
           {{1}, 1}, {{1}, 2}, {{1}, 4},
           {{2, 1}, 2}, {{1, 0, 1}, 1}, {{2, 1, 0, 1}, 2},
           {{1, 1, 0, 0, 1}, 2}, {{5, 0, 1}, 1}}) {
    auto l = make_lin_poly(F, 2, cs);
    uint32_t d = scatter_degree(l, t);
    uint64_t qd = 1;
    for (uint32_t i = 0; i < d; ++i)
      qd *= 3;
    for (bool place : {false, true}) {
      auto prof = newton_ramification(l, t, place);
      CHECK(prof.total_degree == qd - 1);
      uint64_t width = 0;
      for (const auto &e : prof.entries)
        width += e.width;
      CHECK(width == qd - 1);
    }
  }

  // q = 4: the s = inf index 15 is odd, hence tame
  auto F4 = make_field(2, {2, 2});
  auto x4 = make_lin_poly(F4, 2, {1});
  auto p4 = newton_ramification(x4, 2, true);
  REQUIRE(p4.entries.size() == 1);
  CHECK(p4.entries[0].e == 15);
  CHECK_FALSE(p4.entries[0].wild);
}

TEST_CASE("kummer monodromy of the twisted family")
{
  auto kr = kummer_monodromy(3, 1, 1, 3);
  CHECK(kr.geom_order == 26);
  CHECK(kr.arith_order == 78);
  CHECK(kr.const_field_degree == 3);
  CHECK(kr.frobenius_power == 1);
  CHECK(kr.scattered);
  CHECK(kr.groups_differ);
  CHECK(kr.cor_holds);
  CHECK(kr.iff_reliable);

  const auto &F = *kr.F;
  CHECK(kr.singer.rows == 3);
  CHECK(mat_order(F, 1, kr.singer, 26) == 26);
  CHECK(mat_order(F, 1, kr.frobenius_mat, 3) == 3);

  // Frobenius conjugation raises the Singer generator to the q-th power
  auto conj = mat_mul(F, 1, mat_mul(F, 1, kr.frobenius_mat, kr.singer),
                      mat_inverse(F, 1, kr.frobenius_mat));
  CHECK(conj == mat_pow(F, 1, kr.singer, 3));

  CHECK(closure_size(F, 1, {kr.singer}) == 26);
  CHECK(closure_size(F, 1, {kr.singer, kr.frobenius_mat}) == 78);

  auto j = kr.to_json();
  CHECK(j["geometric_order"] == 26);
  CHECK(j["arithmetic_order"] == 78);
  CHECK(j["singer_generator"].size() == 3);
}

TEST_CASE("kummer monodromy degenerate shapes")
{
  // t | nm: no constant field extension, and the family is not scattered
  auto same = kummer_monodromy(3, 3, 1, 3);
  CHECK(same.geom_order == 26);
  CHECK(same.arith_order == 26);
  CHECK(same.const_field_degree == 1);
  CHECK_FALSE(same.groups_differ);
  CHECK_FALSE(same.scattered);
  CHECK(same.cor_holds);

  // t = 1 is outside the biconditional's range: scattered, yet no
  // constant field extension
  auto t1 = kummer_monodromy(3, 2, 1, 1);
  CHECK(t1.geom_order == 2);
  CHECK(t1.const_field_degree == 1);
  CHECK(t1.scattered);
  CHECK_FALSE(t1.groups_differ);
  CHECK_FALSE(t1.cor_holds);
  CHECK_FALSE(t1.iff_reliable);
  CHECK(t1.singer.rows == 1);
  CHECK(t1.singer.at(0, 0) == 2);
  CHECK(mat_is_identity(t1.frobenius_mat));

  // q = 2, t = 1: everything collapses
  auto triv = kummer_monodromy(2, 1, 1, 1);
  CHECK(triv.geom_order == 1);
  CHECK(triv.arith_order == 1);
  CHECK(mat_is_identity(triv.singer));

  CHECK_THROWS_AS(kummer_monodromy(3, 1, 1, 64), error);
  CHECK_THROWS_AS(kummer_monodromy(6, 1, 1, 2), error);
  CHECK_THROWS_AS(kummer_monodromy(3, 0, 1, 2), error);
}

TEST_CASE("kummer family over m tracks gcd(t, nm)")
{
  for (uint32_t m = 1; m <= 4; ++m) {
    auto kr = kummer_monodromy(3, 1, m, 3);
    bool coprime = std::gcd(3u, m) == 1;
    CHECK(kr.scattered == coprime);
    CHECK(kr.groups_differ == coprime);
    CHECK(kr.cor_holds);
    CHECK(kr.const_field_degree == (coprime ? 3 : 1));
  }
}
