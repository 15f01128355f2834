#include "scat/mrd.hpp"

#include "scat/intutil.hpp"

namespace scat {

rank_code build_code(const lin_poly &l, const run_limits &lim)
{
  if (l.is_zero() || lin_degree(l) == 0)
    fail(errc::not_scattered, "basis polynomials must be independent maps");
  const field_ctx &F = *l.F;
  uint32_t n = F.abs_degree(l.layer) / F.abs_degree(l.base_layer());
  if (n < 2)
    fail(errc::bad_argument, "code needs a proper extension layer");
  if (!is_scattered(l, 1, 0, lim))
    fail(errc::not_scattered, "polynomial is not scattered of index 0");
  return rank_code{l, n};
}

nlohmann::json rank_report::to_json() const
{
  return {{"q", q},
          {"n", n},
          {"min_rank", min_rank},
          {"is_mrd", is_mrd},
          {"codewords", codewords},
          {"classes_checked", classes_checked}};
}

rank_report min_rank_distance(const rank_code &C, const run_limits &lim)
{
  const lin_poly &l = C.l;
  if (l.is_zero())
    fail(errc::bad_argument, "code has no second basis polynomial");
  const field_ctx &F = *l.F;
  size_t li = l.layer, base = l.base_layer();

  rank_report rep;
  rep.q = l.q();
  rep.n = C.n;
  uint64_t qn = F.cardinality(li);
  unsigned __int128 cw = (unsigned __int128)qn * qn;
  if (cw > lim.max_specializations)
    fail(errc::budget_exceeded, "q^{2n} codewords exceed the specialization budget");
  rep.codewords = uint64_t(cw);

  // scaling a codeword by F_{q^n}^* multiplies the map by an invertible
  // matrix, so one representative per projective (a : b) class suffices:
  // (0 : 1) is the identity map, the rest are l + b*x
  uint32_t best = C.n;
  rep.classes_checked = 1;
  for (uint64_t b = 0; b < qn; ++b) {
    std::vector<uint64_t> cc = l.coeffs;
    cc[0] = F.add(li, cc[0], b);
    bool zero = true;
    for (uint64_t c : cc)
      if (c) {
        zero = false;
        break;
      }
    if (zero)
      fail(errc::bad_argument, "code contains a rank-zero word; basis maps are dependent");
    lin_poly word = make_lin_poly(l.F, l.layer, std::move(cc));
    uint32_t rk = mat_rank(F, base, linear_map_matrix(word, li));
    if (rk == 0)
      fail(errc::bad_argument, "code contains a rank-zero word; basis maps are dependent");
    best = std::min(best, rk);
    ++rep.classes_checked;
  }
  rep.min_rank = best;
  rep.is_mrd = best + 1 == C.n;
  return rep;
}

} // namespace scat
