#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussian_bounds.hpp"

namespace icfb {

// Per-codeword transmit powers: user 1 splits across four codewords, user 2
// across three. Sums must respect the unit power constraint.
struct PowerSplit {
  std::array<double, 4> p1{};
  std::array<double, 3> p2{};

  double p1_head(int j) const {  // p1[0] + ... + p1[j-1]
    double s = 0;
    for (int i = 0; i < j; ++i) s += p1[static_cast<std::size_t>(i)];
    return s;
  }
  double p2_head(int j) const {
    double s = 0;
    for (int i = 0; i < j; ++i) s += p2[static_cast<std::size_t>(i)];
    return s;
  }
  double p1_total() const { return p1_head(4); }
  double p2_total() const { return p2_head(3); }

  bool feasible(double slack = 1e-12) const {
    for (double v : p1)
      if (v < 0) return false;
    for (double v : p2)
      if (v < 0) return false;
    return p1_total() <= 1.0 + slack && p2_total() <= 1.0 + slack;
  }
};

// Interference regimes of the symmetric channel. Boundaries are closed on
// both sides; callers evaluate every matching case and keep the best rate.
enum class Regime { InrBelowOne, CaseA, CaseB, CaseD, CaseE, CaseC };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::InrBelowOne: return "inr<1";
    case Regime::CaseA: return "a";
    case Regime::CaseB: return "b";
    case Regime::CaseC: return "c";
    case Regime::CaseD: return "d";
    case Regime::CaseE: return "e";
  }
  return "?";
}

inline std::vector<Regime> applicable_regimes(double snr, double inr) {
  if (!(snr > 0) || !(inr > 0)) throw std::invalid_argument("regime classification needs positive snr and inr");
  if (inr < 1.0) return {Regime::InrBelowOne};
  const double ls = std::log2(snr), li = std::log2(inr);
  std::vector<Regime> out;
  if (li <= 0.5 * ls) out.push_back(Regime::CaseA);
  if (0.5 * ls <= li && li <= (2.0 / 3.0) * ls) out.push_back(Regime::CaseB);
  if ((2.0 / 3.0) * ls <= li && li <= ls) out.push_back(Regime::CaseD);
  if (ls <= li && li <= 2.0 * ls) out.push_back(Regime::CaseE);
  if (2.0 * ls <= li) out.push_back(Regime::CaseC);
  return out;
}

inline Regime classify_regime(double snr, double inr) { return applicable_regimes(snr, inr).front(); }

// The gap certified for each regime by the explicit power assignments
// (case c splits on snr at 1).
inline double regime_gap_bound(Regime r, double snr) {
  switch (r) {
    case Regime::InrBelowOne: return 2.6;
    case Regime::CaseA: return 9.6;
    case Regime::CaseB: return 14.8;
    case Regime::CaseC: return snr < 1.0 ? 2.6 : 7.0;
    case Regime::CaseD: return 3.0;
    case Regime::CaseE: return 4.0;
  }
  return 14.8;
}

// The reference power assignments behind the constant-gap guarantee. Cases d, e and
// inr<1 run without feedback and have no split.
inline PowerSplit default_power_split(double snr, double inr, double cfb, Regime regime) {
  if (!(snr > 0) || !(inr > 0) || cfb < 0) throw std::invalid_argument("invalid channel parameters");
  PowerSplit ps;
  const double pow_fb = std::exp2(cfb);
  switch (regime) {
    case Regime::CaseA: {
      if (inr < 1.0) throw std::invalid_argument("case a assumes inr >= 1");
      const double mcap = std::max(0.0, std::min(pow_fb, inr - 1.0));
      ps.p1 = {std::max(0.0, 1.0 / inr - mcap / snr), mcap / snr, mcap / inr, 0.0};
      ps.p2 = {1.0 / inr, mcap / (2.0 * inr), 0.0};
      return ps;
    }
    case Regime::CaseB: {
      if (inr < 1.0) throw std::invalid_argument("case b assumes inr >= 1");
      const double mcap = std::max(0.0, std::min(pow_fb, snr * snr / (inr * inr * inr) - 1.0));
      ps.p1 = {std::max(0.0, 1.0 / inr - mcap / snr), mcap / snr, mcap / inr, 0.0};
      ps.p1[3] = std::max(0.0, 1.0 - ps.p1_head(3));
      ps.p2 = {1.0 / inr, mcap / (2.0 * inr), 0.0};
      ps.p2[2] = std::max(0.0, 1.0 - ps.p2_head(2));
      return ps;
    }
    case Regime::CaseC: {
      if (inr < 1.0) throw std::invalid_argument("case c assumes inr >= 1");
      if (snr <= 1.0) {
        const double v = std::min(pow_fb, inr) / inr;
        ps.p1 = {0.0, 0.0, v, 0.0};
        ps.p2 = {0.0, v, 0.0};
      } else {
        const double m2 = std::min(pow_fb, inr / (snr * snr));
        ps.p1 = {0.0, 0.0, (snr / inr) * m2, 0.0};
        ps.p1[3] = 1.0 - ps.p1[2];
        ps.p2 = {0.0, m2 / inr, 0.0};
        ps.p2[2] = 1.0 - ps.p2[1];
      }
      return ps;
    }
    default:
      throw std::invalid_argument("no feedback power split for this regime");
  }
}

namespace detail {
inline double pos_log2(double x) { return x > 1.0 ? std::log2(x) : 0.0; }  // [log2(x)]^+
}  // namespace detail

// The two lattice-coded rates of the feedback strategy, already capped at
// the feedback capacity.
inline std::pair<double, double> lattice_rates(Regime regime, double snr, double inr, double cfb,
                                               const PowerSplit& ps) {
  using detail::pos_log2;
  switch (regime) {
    case Regime::CaseA: {
      const double den = 1.0 + inr * ps.p2[0];
      return {std::min(pos_log2(snr * ps.p1[1] / den), cfb), std::min(pos_log2(inr * ps.p2[1] / den), cfb)};
    }
    case Regime::CaseB: {
      const double den = 1.0 + inr * ps.p2[0] + snr * ps.p1[0];
      return {std::min(pos_log2(snr * ps.p1[1] / den), cfb), std::min(pos_log2(inr * ps.p2[1] / den), cfb)};
    }
    case Regime::CaseC:
      // The own-signal noise here is the not-yet-removed relay codeword only;
      // the non-cooperative codeword is decoded and cancelled first.
      return {0.0, std::min(pos_log2(inr * ps.p2[1] / (1.0 + snr * ps.p1[2])), cfb)};
    default:
      return {0.0, 0.0};
  }
}

// Sum-rate of the lattice feedback strategy for the given decode order,
// evaluated exactly as the closed forms prescribe (logs base 2, lattice
// rates clipped at zero and capped at cfb). With cap_by_relay_pipe the
// relayed rate is additionally limited by the relay codeword's own decoding
// constraint, which makes the value achievable for any feasible split, not
// just the reference one.
inline double feedback_sumrate(Regime regime, double snr, double inr, double cfb, const PowerSplit& ps,
                               bool cap_by_relay_pipe = false) {
  if (!ps.feasible()) throw std::invalid_argument("power split violates the unit power constraint");
  auto [lat1, lat2] = lattice_rates(regime, snr, inr, cfb, ps);
  if (cap_by_relay_pipe) {
    double pipe = 0.0;
    switch (regime) {
      case Regime::CaseA:
        pipe = log2p1(snr * ps.p1[2] / (1.0 + inr * ps.p2_total() + snr * ps.p1_head(2)));
        break;
      case Regime::CaseB:
        pipe = log2p1(snr * ps.p1[2] / (1.0 + inr * ps.p2_total() + snr * ps.p1_head(2)));
        break;
      case Regime::CaseC:
        pipe = log2p1(inr * ps.p1[2] / (1.0 + snr * ps.p2_total()));
        break;
      default:
        break;
    }
    lat2 = std::min(lat2, pipe);
  }
  switch (regime) {
    case Regime::CaseA: {
      const double r11 = log2p1(snr * ps.p1[0] / (1.0 + inr * ps.p2_total() + snr * ps.p1[1]));
      const double r21 = log2p1(snr * ps.p2[0] / (1.0 + inr * ps.p1_head(2)));
      return r11 + lat1 + r21 + lat2;
    }
    case Regime::CaseB: {
      const double r11 = log2p1(snr * ps.p1[0] / (1.0 + inr * ps.p2[0]));
      const double r14 = log2p1(inr * ps.p1[3] / (1.0 + inr * ps.p1_head(2) + snr * ps.p2[0]));
      const double r21 = log2p1(snr * ps.p2[0] / (1.0 + inr * ps.p1_head(2)));
      const double r23 = log2p1(inr * ps.p2[2] / (1.0 + inr * ps.p2_head(2) + snr * ps.p1_head(2)));
      return r11 + lat1 + r14 + r21 + lat2 + r23;
    }
    case Regime::CaseC: {
      const double r14 = log2p1(snr * ps.p1[3] / (1.0 + snr * ps.p1[2]));
      const double r23 = log2p1(snr * ps.p2[2] / (1.0 + snr * ps.p2[1]));
      return r14 + lat2 + r23;
    }
    default:
      throw std::invalid_argument("feedback_sumrate covers cases a, b and c only");
  }
}

// Non-feedback reference rates for the regimes where feedback buys at most a
// constant: the known schemes come within one bit of these expressions, so
// one bit is subtracted up front.
inline double nonfeedback_sumrate(double snr, double inr, Regime regime) {
  switch (regime) {
    case Regime::InrBelowOne:
      return 2.0 * log2p1(snr / (1.0 + inr));
    case Regime::CaseD:
      return log2p1(snr) + log2p1(snr / (1.0 + inr)) - 1.0;
    case Regime::CaseE:
      return log2p1(snr + inr) - 1.0;
    default:
      throw std::invalid_argument("nonfeedback_sumrate covers inr<1, d and e only");
  }
}

namespace detail {

// Free parameters per lattice case, chosen so the power coupling that makes
// the aligned codewords a lattice point is preserved:
//   cases a/b: x = P2^(1), y = P2^(2);   case c: y = P2^(2).
inline PowerSplit split_from_params(Regime regime, double snr, double inr, double x, double y) {
  PowerSplit ps;
  switch (regime) {
    case Regime::CaseA:
      ps.p1 = {std::max(0.0, x - (inr / snr) * y), (inr / snr) * y, 2.0 * y, 0.0};
      ps.p2 = {x, y, 0.0};
      break;
    case Regime::CaseB:
      ps.p1 = {std::max(0.0, x - (inr / snr) * y), (inr / snr) * y, 2.0 * y, 0.0};
      ps.p1[3] = std::max(0.0, 1.0 - ps.p1_head(3));
      ps.p2 = {x, y, 0.0};
      ps.p2[2] = std::max(0.0, 1.0 - x - y);
      break;
    case Regime::CaseC:
      if (snr <= 1.0) {
        ps.p1 = {0.0, 0.0, y, 0.0};
        ps.p2 = {0.0, y, 0.0};
      } else {
        ps.p1 = {0.0, 0.0, std::min(1.0, snr * y), 0.0};
        ps.p1[3] = 1.0 - ps.p1[2];
        ps.p2 = {0.0, y, 1.0 - y};
      }
      break;
    default:
      break;
  }
  return ps;
}

inline double optimized_case(Regime regime, double snr, double inr, double cfb, int grid_steps,
                             double seed_x, double seed_y) {
  const bool two_dim = regime != Regime::CaseC;
  double x = std::clamp(seed_x, 1e-12, 1.0);
  double y = std::clamp(seed_y, 1e-12, 1.0);
  auto eval = [&](double xx, double yy) {
    const PowerSplit ps = split_from_params(regime, snr, inr, xx, yy);
    if (!ps.feasible()) return -1.0;
    return feedback_sumrate(regime, snr, inr, cfb, ps, /*cap_by_relay_pipe=*/true);
  };
  double best = eval(x, y);
  for (int sweep = 0; sweep < 3; ++sweep) {
    for (int dim = 0; dim < (two_dim ? 2 : 1); ++dim) {
      double& var = (two_dim && dim == 0) ? x : y;
      const double center = var;
      const double lo = std::max(1e-12, center * 1e-4);
      const double hi = 1.0;
      double best_var = var;
      for (int i = 0; i < grid_steps; ++i) {
        const double v = lo * std::pow(hi / lo, static_cast<double>(i) / (grid_steps - 1));
        const double old = var;
        var = v;
        const double r = eval(x, y);
        if (r > best) {
          best = r;
          best_var = v;
        }
        var = old;
      }
      var = best_var;
    }
  }
  return best;
}

}  // namespace detail

// Best achievable sum-rate when the whole feedback budget sits on one link.
// Dispatches on the regime; boundary points evaluate every matching case.
// With optimize set, the lattice cases additionally run a coordinate-descent
// search over their free power parameters, seeded at the default split.
inline double achievable_sumrate_extreme(double snr, double inr, double cfb, bool optimize = false,
                                         int grid_steps = 32) {
  if (cfb < 0) throw std::invalid_argument("negative feedback capacity");
  double best = 0.0;
  const auto regimes = applicable_regimes(snr, inr);
  auto consider_lattice = [&](Regime r) {
    std::vector<PowerSplit> seeds;
    seeds.push_back(default_power_split(snr, inr, cfb, r));
    if (r == Regime::CaseC && snr == 1.0) {
      // the other printed sub-assignment also applies at the split point
      PowerSplit high;
      const double m2 = std::min(std::exp2(cfb), inr / (snr * snr));
      high.p1 = {0.0, 0.0, (snr / inr) * m2, 0.0};
      high.p1[3] = 1.0 - high.p1[2];
      high.p2 = {0.0, m2 / inr, 0.0};
      high.p2[2] = 1.0 - high.p2[1];
      seeds.push_back(high);
    }
    for (const auto& ps : seeds) best = std::max(best, feedback_sumrate(r, snr, inr, cfb, ps));
    if (optimize) {
      const PowerSplit& ps = seeds.front();
      const double seed_x = r == Regime::CaseC ? ps.p2[1] : ps.p2[0];
      const double seed_y = ps.p2[1];
      best = std::max(best, detail::optimized_case(r, snr, inr, cfb, grid_steps, seed_x, seed_y));
    }
  };
  for (Regime r : regimes) {
    switch (r) {
      case Regime::InrBelowOne:
      case Regime::CaseD:
      case Regime::CaseE:
        best = std::max(best, nonfeedback_sumrate(snr, inr, r));
        break;
      default:
        consider_lattice(r);
    }
  }
  return best;
}

// General feedback assignment: time sharing between the two extreme-case
// strategies at lambda = cfb1/(cfb1+cfb2). For the symmetric channel both
// extremes achieve the same sum-rate, run at the total feedback rate.
inline double achievable_sumrate(double snr, double inr, double cfb1, double cfb2,
                                 bool optimize = false, int grid_steps = 32) {
  if (cfb1 < 0 || cfb2 < 0) throw std::invalid_argument("negative feedback capacity");
  const double total = cfb1 + cfb2;
  const double extreme = achievable_sumrate_extreme(snr, inr, total, optimize, grid_steps);
  const double lambda = total > 0 ? cfb1 / total : 0.0;
  return lambda * extreme + (1.0 - lambda) * extreme;
}

// Outer bound minus achievable rate, signed: a negative value is a bug.
inline double sumrate_gap(double snr, double inr, double cfb1, double cfb2, bool optimize = false,
                          int grid_steps = 32) {
  return symmetric_sumrate_outer(snr, inr, cfb1, cfb2) -
         achievable_sumrate(snr, inr, cfb1, cfb2, optimize, grid_steps);
}

}  // namespace icfb
