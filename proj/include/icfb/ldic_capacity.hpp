#pragma once

#include <algorithm>

#include "bitvec.hpp"
#include "rate_region.hpp"
#include "rational.hpp"

namespace icfb {

namespace detail {
inline long long posi(long long v) { return v > 0 ? v : 0; }
inline Rational posr(const Rational& v) { return v > Rational(0) ? v : Rational(0); }
inline Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }
}  // namespace detail

// Capacity region of the linear deterministic IC with rate-limited feedback:
// the nine half-plane constraints, exactly in closed form.
inline RateRegion<Rational> capacity_region(const LdicParams& g) {
  using detail::posi;
  g.validate();
  const long long n11 = g.n11, n22 = g.n22, n12 = g.n12, n21 = g.n21;
  const Rational c1 = g.cfb1, c2 = g.cfb2;
  RateRegion<Rational> r;
  r.add(1, 0, std::min(std::max(n11, n21), std::max(n11, n12)));
  r.add(1, 0, Rational(n11) + c2);
  r.add(0, 1, std::min(std::max(n22, n12), std::max(n22, n21)));
  r.add(0, 1, Rational(n22) + c1);
  r.add(1, 1, posi(n11 - n12) + std::max(n22, n12));
  r.add(1, 1, posi(n22 - n21) + std::max(n11, n21));
  r.add(1, 1, Rational(std::max(n21, posi(n11 - n12)) + std::max(n12, posi(n22 - n21))) + c1 + c2);
  r.add(2, 1, Rational(posi(n11 - n12) + std::max(n11, n21) + std::max(n12, posi(n22 - n21))) + c2);
  r.add(1, 2, Rational(posi(n22 - n21) + std::max(n22, n12) + std::max(n21, posi(n11 - n12))) + c1);
  return r;
}

// The closed-form region achieved by the message-splitting / quantize-and-
// forward scheme under the channel's natural input distribution. Provably
// carves out the same polytope as capacity_region; regions_equal machine-
// checks that claim.
inline RateRegion<Rational> achievable_region(const LdicParams& g) {
  using detail::posi;
  using detail::posr;
  using detail::rmin;
  g.validate();
  const long long n11 = g.n11, n22 = g.n22, n12 = g.n12, n21 = g.n21;
  const Rational c1 = g.cfb1, c2 = g.cfb2;
  const Rational v1 = posi(n11 - n12);  // private levels of user 1
  const Rational v2 = posi(n22 - n21);
  RateRegion<Rational> r;
  r.add(1, 0, std::max(n11, n21));
  r.add(1, 0, v1 + rmin(Rational(n11), posr(Rational(n12) - c2)) + rmin(Rational(n12), c2));
  r.add(0, 1, std::max(n22, n12));
  r.add(0, 1, v2 + rmin(Rational(n22), posr(Rational(n21) - c1)) + rmin(Rational(n21), c1));
  r.add(1, 1, v1 + Rational(std::max(n22, n12)));
  r.add(1, 1, v2 + Rational(std::max(n11, n21)));
  r.add(1, 1, Rational(std::max<long long>(posi(n11 - n12), n21) + std::max<long long>(posi(n22 - n21), n12)) +
                  rmin(rmin(v1, Rational(n21)), c1) + rmin(rmin(v2, Rational(n12)), c2));
  r.add(2, 1, Rational(posi(n11 - n12) + std::max(n11, n21) + std::max<long long>(posi(n22 - n21), n12)) +
                  rmin(rmin(v2, Rational(n12)), c2));
  r.add(1, 2, Rational(posi(n22 - n21) + std::max(n22, n12) + std::max<long long>(posi(n11 - n12), n21)) +
                  rmin(rmin(v1, Rational(n21)), c1));
  return r;
}

inline RateRegion<Rational> nonfeedback_region(LdicParams g) {
  g.cfb1 = 0;
  g.cfb2 = 0;
  return capacity_region(g);
}

// The closed-form mutual-information terms behind achievable_region, under
// the scheme's input distribution. All twelve are exact; the two feedback
// quantization slacks are identically zero.
struct InfoTerms {
  Rational i_uv2x1_y1, i_uv1x2_y2;
  Rational i_x1_given, i_x2_given;
  Rational i_u2_y1, i_u1_y2;
  Rational i_x1_u1v2, i_x2_u2v1;
  Rational i_x1v2_v1u2, i_x2v1_v2u1;
  Rational i_x1v2_u1u2, i_x2v1_u1u2;
  Rational delta1, delta2;
};

inline InfoTerms info_terms(const LdicParams& g) {
  using detail::posi;
  using detail::posr;
  using detail::rmin;
  using detail::rmax;
  g.validate();
  const long long n11 = g.n11, n22 = g.n22, n12 = g.n12, n21 = g.n21;
  const Rational c1 = g.cfb1, c2 = g.cfb2;

  auto one_side = [](long long ndd, long long ndc, long long ncd, const Rational& cfb_own,
                     const Rational& cfb_other, Rational& given, Rational& u_y, Rational& x_uv,
                     Rational& xv_vu, Rational& xv_uu) {
    // ndd: direct gain, ndc: gain of this user's cross link, ncd: gain of the
    // interfering cross link into this receiver.
    const Rational priv = posi(ndd - ndc);
    given = priv;
    u_y = rmin(Rational(ncd), cfb_own);
    x_uv = priv + rmin(Rational(ndd), posr(Rational(ndc) - cfb_other));
    xv_vu = posr(Rational(ncd) - cfb_own) + posr(priv - Rational(ncd)) +
            rmin(priv, rmin(Rational(ncd), cfb_own));
    xv_uu = priv + rmin(Rational(ndd), posr(Rational(ndc) - cfb_other)) +
            posr(Rational(ncd) - rmax(Rational(ndd), rmin(Rational(ncd), cfb_own))) +
            posr(rmin(Rational(ncd), posr(Rational(ndd) - posr(Rational(ndc) - cfb_other))) -
                 rmax(rmin(Rational(ncd), cfb_own), priv));
  };

  InfoTerms t;
  t.i_uv2x1_y1 = std::max(n11, n21);
  t.i_uv1x2_y2 = std::max(n22, n12);
  one_side(n11, n12, n21, c1, c2, t.i_x1_given, t.i_u2_y1, t.i_x1_u1v2, t.i_x1v2_v1u2, t.i_x1v2_u1u2);
  one_side(n22, n21, n12, c2, c1, t.i_x2_given, t.i_u1_y2, t.i_x2_u2v1, t.i_x2v1_v2u1, t.i_x2v1_u1u2);
  t.delta1 = 0;
  t.delta2 = 0;
  return t;
}

// Normalized symmetric sum-rate capacity as a function of alpha = m/n and
// beta = cfb/n. Boundary alphas belong to both adjacent branches; the
// formula is continuous there.
inline Rational symmetric_sumrate_normalized(const Rational& alpha, const Rational& beta) {
  using detail::rmin;
  if (alpha < Rational(0) || beta < Rational(0))
    throw std::invalid_argument("symmetric_sumrate_normalized: negative argument");
  const Rational two(2);
  if (alpha <= Rational(1, 2)) return rmin(two - two * alpha + two * beta, two - alpha);
  if (alpha <= Rational(2, 3)) return rmin(two * alpha + two * beta, two - alpha);
  if (alpha <= Rational(1)) return two - alpha;
  if (alpha <= two + two * beta) return alpha;
  return two + two * beta;
}

// Symmetric sum-rate capacity, unnormalized: n11=n22=n, n12=n21=m, equal
// feedback capacities.
inline Rational symmetric_sumrate(int n, int m, const Rational& cfb) {
  if (n < 0 || m < 0 || cfb < Rational(0))
    throw std::invalid_argument("symmetric_sumrate: negative argument");
  if (n == 0) return 0;
  return Rational(n) * symmetric_sumrate_normalized(Rational(m, n), cfb / Rational(n));
}

}  // namespace icfb
