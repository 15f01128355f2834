#include "doctest.h"

#include <cstdlib>
#include <numeric>

#include "scat/scatter.hpp"

using namespace scat;

TEST_CASE("scatter degree")
{
  auto F = make_field(3, {1, 2});
  auto x = make_lin_poly(F, 2, {1});
  CHECK(scatter_degree(x, 3) == 3);
  auto l2 = make_lin_poly(F, 2, {1, 0, 1}); // x + x^(q^2)
  CHECK(scatter_degree(l2, 1) == 2);
  auto l1 = make_lin_poly(F, 2, {1, 1});
  CHECK(scatter_degree(l1, 5) == 5);
  CHECK_THROWS_AS(scatter_degree(make_lin_poly(F, 2, {}), 1), error);
}

TEST_CASE("t-normalization steps")
{
  auto F = make_field(3, {1, 2});

  // already normalized: unchanged, empty log
  auto l = make_lin_poly(F, 2, {2, 5, 1});
  auto r = t_normalize(l, 3);
  CHECK(r.poly.coeffs == l.coeffs);
  CHECK(r.t_prime == 3);
  CHECK(r.log.empty());

  // scaling only
  auto twox = make_lin_poly(F, 2, {2});
  auto rs = t_normalize(twox, 1);
  CHECK(rs.poly.coeffs == std::vector<uint64_t>{1});
  CHECK(rs.t_prime == 1);
  REQUIRE(rs.log.size() == 1);
  CHECK(rs.log[0]["step"] == "scale");

  // coefficient of x^(q^t) absorbed by the shift
  auto lt = make_lin_poly(F, 2, {1, 4, 1});
  auto rt = t_normalize(lt, 1);
  CHECK(rt.poly.coeffs == std::vector<uint64_t>{1, 0, 1});
  CHECK(rt.t_prime == 1);
  REQUIRE(rt.log.size() == 1);
  CHECK(rt.log[0]["step"] == "shift");

  // pure frobenius descent (no x^(q^t) term to absorb)
  auto ld = make_lin_poly(F, 2, {0, 1, 1}); // x^q + x^(q^2)
  auto rd = t_normalize(ld, 3);
  CHECK(rd.poly.coeffs == std::vector<uint64_t>{1, 1});
  CHECK(rd.t_prime == 2);
  REQUIRE(rd.log.size() == 1);
  CHECK(rd.log[0]["step"] == "frobenius_descent");
  CHECK(rd.log[0]["j"] == 1);

  // t = 2 on the same polynomial: the top term is the x^(q^t) term, so the
  // shift eats it first and the descent then reaches x
  auto rd2 = t_normalize(ld, 2);
  CHECK(rd2.poly.coeffs == std::vector<uint64_t>{1});
  CHECK(rd2.t_prime == 1);
  REQUIRE(rd2.log.size() == 2);
  CHECK(rd2.log[0]["step"] == "shift");
  CHECK(rd2.log[1]["step"] == "frobenius_descent");

  // descent impossible: minimal index above t
  CHECK_THROWS_AS(t_normalize(make_lin_poly(F, 2, {0, 0, 1}), 1), error);
  // pure x^(q^t) term degenerates to zero
  CHECK_THROWS_AS(t_normalize(make_lin_poly(F, 2, {0, 0, 0, 2}), 3), error);
  CHECK_THROWS_AS(t_normalize(make_lin_poly(F, 2, {}), 1), error);
  CHECK_THROWS_AS(t_normalize(l, 0), error);
}

TEST_CASE("normalization preserves the kernel-dimension multiset")
{
  // x^(q^2) + x^q with t = 2 descends to x^q + x with t' = 1; nm = 4
  auto F = make_field(3, {1, 4});
  auto l = make_lin_poly(F, 1, {0, 1, 1});
  auto r = t_normalize(l, 2);
  REQUIRE(r.t_prime == 1);

  auto before = root_count_profile(l, 4, 2);
  auto after = root_count_profile(r.poly, 4, r.t_prime);
  CHECK(before.histogram == after.histogram);
  CHECK(before.specializations() == 81);
}

TEST_CASE("scatteredness of the identity polynomial")
{
  // q=3, n=2, t=3, m=1
  auto F = make_field(3, {1, 2});
  auto x = make_lin_poly(F, 2, {1});
  CHECK(is_scattered(x, 1, 3));

  // q=3, n=1, t=3: gcd(t, nm) pattern over m
  auto G1 = make_field(3, {1});
  auto x1 = make_lin_poly(G1, 1, {1});
  for (uint32_t m = 1; m <= 6; ++m) {
    auto lm = m >= 2 ? extend_for_m(x1, m) : x1;
    CHECK(is_scattered(lm, m, 3) == (std::gcd(3u, m) == 1));
  }

  // degenerate sub-check: s0 = 0 alone gives kernel dimension 0
  auto ctx = make_specialization_ctx(x, 2, 3);
  CHECK(ctx.kernel_dim_at(0) == 0);
}

TEST_CASE("profile of x at q=3, n=1, t=2")
{
  auto F = make_field(3, {1});
  auto x = make_lin_poly(F, 1, {1});
  auto prof = root_count_profile(x, 1, 2);
  CHECK(prof.q == 3);
  CHECK(prof.n == 1);
  CHECK(prof.specializations() == 3);
  REQUIRE(prof.histogram.size() == 2);
  CHECK(prof.histogram[0] == std::pair<uint32_t, uint64_t>{0, 2});
  CHECK(prof.histogram[1] == std::pair<uint32_t, uint64_t>{1, 1});
  CHECK(prof.max_dim == 1);

  auto j = prof.to_json();
  CHECK(j["scattered"] == true);
  CHECK(j["histogram"].size() == 2);
}

TEST_CASE("profiles are invariant under scaling and shifting")
{
  auto F = make_field(3, {1, 2});
  auto l = make_lin_poly(F, 2, {3, 1, 1});
  auto base = root_count_profile(l, 1, 2);

  for (uint64_t c = 2; c < 9; c += 3) {
    auto lc = lp_scale(l, c);
    CHECK(root_count_profile(lc, 1, 2).histogram == base.histogram);
  }
  for (uint64_t a = 1; a < 9; a += 4) {
    auto ls = lp_add(l, make_lin_poly(F, 2, {0, 0, a}));
    CHECK(root_count_profile(ls, 1, 2).histogram == base.histogram);
  }

  // boolean test consistent with the profile
  CHECK(is_scattered(l, 1, 2) == (base.max_dim <= 1));
}

TEST_CASE("kernel dimensions match exhaustive root counts")
{
  auto F = make_field(3, {1, 2, 2});
  auto l = make_lin_poly(F, 2, {4, 1});
  uint32_t t = 2;
  auto ctx = make_specialization_ctx(l, 3, t);
  for (uint64_t s0 = 0; s0 < 81; s0 += 3) {
    size_t direct = 0;
    for (uint64_t x = 0; x < 81; ++x) {
      uint64_t lhs = evaluate(l, 3, x);
      uint64_t xc = F->frob(3, x, 1, t);
      if (lhs == F->mul(3, s0, xc))
        ++direct;
    }
    uint64_t expect = 1;
    for (uint32_t i = 0; i < ctx.kernel_dim_at(s0); ++i)
      expect *= 3;
    CHECK(direct == expect);
  }
}

TEST_CASE("the 81 normalized polynomials of degree at most 2 over F_9")
{
  // q=3, n=2, t=3: count scattered representatives at m = 1 and m = 2
  auto F1 = make_field(3, {1, 2});
  auto F2 = make_field(3, {1, 2, 2});

  size_t m1 = 0, m2 = 0;
  std::vector<std::vector<uint64_t>> m2_winners;
  auto consider = [&](std::vector<uint64_t> cs) {
    auto l1 = make_lin_poly(F1, 2, cs);
    auto l2 = make_lin_poly(F2, 2, cs);
    if (is_scattered(l1, 1, 3))
      ++m1;
    if (is_scattered(l2, 2, 3)) {
      ++m2;
      m2_winners.push_back(cs);
    }
  };

  consider({1}); // x
  for (uint64_t a0 = 1; a0 < 9; ++a0)
    consider({a0, 1}); // x^q + a0 x
  for (uint64_t a0 = 1; a0 < 9; ++a0)
    for (uint64_t a1 = 0; a1 < 9; ++a1)
      consider({a0, a1, 1}); // x^(q^2) + a1 x^q + a0 x

  CHECK(m1 == 72);
  CHECK(m2 == 1);
  REQUIRE(m2_winners.size() == 1);
  CHECK(m2_winners[0] == std::vector<uint64_t>{1});
}

TEST_CASE("index shift")
{
  auto F = make_field(3, {1, 2});
  auto x = make_lin_poly(F, 2, {1});

  // t = nm leaves the polynomial unchanged (nm = 1 here; larger nm at t = nm
  // is never scattered since s0 = 1 kills the whole layer)
  auto F11 = make_field(3, {1});
  auto x11 = make_lin_poly(F11, 1, {1});
  auto same = index_shift(x11, 1, 1);
  CHECK(same.coeffs == x11.coeffs);

  // q=3, n=2, m=1, t=1: x becomes x^q, scattered at index 0
  auto shifted = index_shift(x, 1, 1);
  CHECK(shifted.coeffs == std::vector<uint64_t>{0, 1});
  CHECK(is_scattered(shifted, 1, 0));

  // q=3, n=1, m=2, t=1: x over F_9 becomes x^q
  auto G = make_field(3, {1, 2});
  auto x1 = make_lin_poly(G, 1, {1});
  auto s2 = index_shift(x1, 2, 1);
  CHECK(s2.coeffs == std::vector<uint64_t>{0, 1});
  CHECK(is_scattered(s2, 2, 0));

  CHECK_THROWS_AS(index_shift(x, 1, 7), error); // t > nm

  auto H = make_field(3, {1, 3});
  auto xh = make_lin_poly(H, 1, {1});
  CHECK_THROWS_AS(index_shift(xh, 3, 3), error); // not scattered
}

TEST_CASE("index-shifted polynomials stay index-0 scattered")
{
  auto F1 = make_field(3, {1, 2});
  for (uint64_t a0 = 1; a0 < 9; ++a0) {
    auto l = make_lin_poly(F1, 2, {a0, 1});
    for (uint32_t t : {1u, 2u}) {
      if (!is_scattered(l, 1, t))
        continue;
      auto sh = index_shift(l, 1, t);
      CHECK(is_scattered(sh, 1, 0));
    }
  }
}

TEST_CASE("exceptional scan")
{
  auto F = make_field(3, {1});
  auto x = make_lin_poly(F, 1, {1});

  auto rep = exceptional_scan(x, 3, 6);
  REQUIRE(rep.entries.size() == 6);
  std::vector<bool> expect{true, true, false, true, true, false};
  for (size_t i = 0; i < 6; ++i) {
    CHECK(rep.entries[i].first == i + 1);
    CHECK(rep.entries[i].second == expect[i]);
  }
  auto j = rep.to_json();
  CHECK(std::string(j["note"]).find("evidence") != std::string::npos);

  auto all = exceptional_scan(x, 1, 4);
  for (auto const &[m, sc] : all.entries)
    CHECK(sc);

  CHECK(exceptional_scan(x, 3, 0).entries.empty());

  run_limits tight;
  tight.max_specializations = 100;
  CHECK_THROWS_AS(exceptional_scan(x, 3, 5, tight), error);
}

TEST_CASE("budget and environment limits")
{
  auto F = make_field(3, {1, 2, 2});
  auto l = make_lin_poly(F, 2, {1});
  run_limits tight;
  tight.max_specializations = 10;
  CHECK_THROWS_AS(root_count_profile(l, 2, 3, tight), error);
  CHECK_THROWS_AS(is_scattered(l, 2, 3, tight), error);

  setenv("SCATTER_MAX_SPECIALIZATIONS", "12345", 1);
  setenv("SCATTER_THREADS", "3", 1);
  auto lim = default_limits();
  CHECK(lim.max_specializations == 12345);
  CHECK(lim.threads == 3);
  unsetenv("SCATTER_MAX_SPECIALIZATIONS");
  unsetenv("SCATTER_THREADS");
  auto def = default_limits();
  CHECK(def.max_specializations == (uint64_t{1} << 20));
  CHECK(def.threads == 0);
}

TEST_CASE("multithreaded profiles match single-threaded")
{
  auto F = make_field(3, {1, 2, 3});
  auto l = make_lin_poly(F, 2, {7, 0, 1});
  run_limits one, four;
  one.threads = 1;
  four.threads = 4;
  auto a = root_count_profile(l, 3, 2, one);
  auto b = root_count_profile(l, 3, 2, four);
  CHECK(a.histogram == b.histogram);
  CHECK(a.specializations() == 729);
  CHECK(is_scattered(l, 3, 2, one) == is_scattered(l, 3, 2, four));
}

TEST_CASE("tower extension carries coefficients verbatim")
{
  auto F = make_field(3, {1, 2});
  auto l = make_lin_poly(F, 2, {5, 3, 1});
  auto le = extend_for_m(l, 3);
  CHECK(le.coeffs == l.coeffs);
  CHECK(le.F->same_prefix(*F, 2));
  CHECK(le.F->cardinality(3) == 729); // q^(nm) = 3^6

  // profiles at the shared layer agree
  CHECK(root_count_profile(l, 1, 2).histogram ==
        root_count_profile(le, 1, 2).histogram);
}
