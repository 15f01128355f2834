#include "doctest.h"

#include "scat/mrd.hpp"

using namespace scat;

TEST_CASE("codes from x^q are maximum rank distance")
{
  auto F27 = make_field(3, {3});
  auto code = build_code(make_lin_poly(F27, 1, {0, 1}));
  CHECK(code.n == 3);
  auto rep = min_rank_distance(code);
  CHECK(rep.q == 3);
  CHECK(rep.n == 3);
  CHECK(rep.min_rank == 2);
  CHECK(rep.is_mrd);
  CHECK(rep.codewords == 729);
  CHECK(rep.classes_checked == 28);

  auto F9 = make_field(3, {2});
  auto rep2 = min_rank_distance(build_code(make_lin_poly(F9, 1, {0, 1})));
  CHECK(rep2.n == 2);
  CHECK(rep2.min_rank == 1);
  CHECK(rep2.is_mrd);
  CHECK(rep2.codewords == 81);
  CHECK(rep2.classes_checked == 10);

  auto j = rep.to_json();
  CHECK(j["n"] == 3);
  CHECK(j["min_rank"] == 2);
  CHECK(j["is_mrd"] == true);
}

TEST_CASE("construction rejects degenerate and non-scattered input")
{
  auto F27 = make_field(3, {3});
  CHECK_THROWS_AS(build_code(make_lin_poly(F27, 1, {1})), error);
  CHECK_THROWS_AS(build_code(make_lin_poly(F27, 1, {2})), error);
  CHECK_THROWS_AS(build_code(make_lin_poly(F27, 1, {})), error);

  // kernel of x^{q^2} - s0 x can be 2-dimensional over F_81
  auto F81 = make_field(3, {4});
  lin_poly sq2 = make_lin_poly(F81, 1, {0, 0, 1});
  CHECK(!is_scattered(sq2, 1, 0));
  CHECK_THROWS_AS(build_code(sq2), error);

  // over F_p itself there is no room for a dimension-2 code
  auto F3 = make_field(3, {1});
  CHECK_THROWS_AS(build_code(make_lin_poly(F3, 1, {0, 1})), error);
}

TEST_CASE("non-scattered polynomials fall short of the bound")
{
  auto F81 = make_field(3, {4});
  rank_code C{make_lin_poly(F81, 1, {0, 0, 1}), 4};
  auto rep = min_rank_distance(C);
  CHECK(rep.min_rank == 2);
  CHECK(rep.min_rank < 3);
  CHECK(!rep.is_mrd);

  // x^{q^4} acts as x on F_81, so the word at b = -1 would have rank zero
  rank_code dep{make_lin_poly(F81, 1, {0, 0, 0, 0, 1}), 4};
  CHECK_THROWS_AS(min_rank_distance(dep), error);
}

TEST_CASE("budget limits")
{
  auto F = make_field(3, {2, 4}); // q = 9, n = 4: 9^8 codewords
  auto code = build_code(make_lin_poly(F, 2, {0, 1}));
  CHECK(code.n == 4);
  CHECK_THROWS_AS(min_rank_distance(code), error);

  auto F27 = make_field(3, {3});
  auto small = build_code(make_lin_poly(F27, 1, {0, 1}));
  run_limits tight;
  tight.max_specializations = 100;
  CHECK_THROWS_AS(min_rank_distance(small, tight), error);
}

TEST_CASE("scatteredness matches the distance bound across a family")
{
  auto F27 = make_field(3, {3});
  uint64_t scattered_seen = 0, short_seen = 0;
  for (uint64_t a0 = 0; a0 < 27; ++a0)
    for (uint64_t a1 = 0; a1 < 27; ++a1) {
      lin_poly l = make_lin_poly(F27, 1, {a0, a1, 1});
      bool sc = is_scattered(l, 1, 0);
      auto rep = min_rank_distance(rank_code{l, 3});
      CHECK(rep.min_rank >= 1);
      CHECK(rep.is_mrd == sc);
      if (sc) {
        ++scattered_seen;
        CHECK(rep.min_rank == 2);
      } else {
        ++short_seen;
        CHECK(rep.min_rank < 2);
      }
    }
  CHECK(scattered_seen + short_seen == 729);
  CHECK(scattered_seen > 0);

  // degree-1 family: kernels of x^q - cx are at most one-dimensional
  for (uint64_t a0 = 0; a0 < 27; ++a0) {
    auto rep = min_rank_distance(build_code(make_lin_poly(F27, 1, {a0, 1})));
    CHECK(rep.min_rank == 2);
    CHECK(rep.is_mrd);
  }
}
