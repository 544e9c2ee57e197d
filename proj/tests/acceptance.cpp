// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Sweeps run in parallel; every numeric claim is checked at the
// stated tolerance.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "icfb/csv.hpp"
#include "icfb/gaussian_ach.hpp"
#include "icfb/gaussian_bounds.hpp"
#include "icfb/ldic_capacity.hpp"
#include "icfb/ldic_sim.hpp"
#include "icfb/parallel.hpp"

namespace {

using icfb::LdicParams;
using icfb::RatePair;
using icfb::RateRegion;
using icfb::Rational;

int failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string title)
      : number_(number), title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

  void expect(bool ok, const std::string& detail) {
    if (!ok && first_problem_.empty()) first_problem_ = detail;
    ok_ = ok_ && ok;
  }
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  void finish(double time_limit_s = 0.0) {
    const double t = seconds();
    if (time_limit_s > 0.0 && t > time_limit_s)
      expect(false, "took " + std::to_string(t) + " s, limit " + std::to_string(time_limit_s));
    std::printf("%s criterion %d: %s (%.2f s)%s%s\n", ok_ ? "PASS" : "FAIL", number_,
                title_.c_str(), t, first_problem_.empty() ? "" : " -- ",
                first_problem_.c_str());
    std::fflush(stdout);
    if (!ok_) ++failures;
  }

 private:
  int number_;
  std::string title_;
  bool ok_ = true;
  std::string first_problem_;
  std::chrono::steady_clock::time_point start_;
};

Rational max_sum(const RateRegion<Rational>& r) {
  return icfb::max_weighted(r, Rational(1), Rational(1)).value();
}

void criterion1_motivating_example() {
  Criterion c(1, "reference schedule achieves (B-2)/B * (4,1) exactly");
  for (int B : {3, 10, 100}) {
    const auto res = icfb::run_motivating_example(B);
    c.expect(res.decode_ok, "decode failed at B=" + std::to_string(B));
    c.expect(res.achieved.r1 == Rational(4 * (B - 2), B) && res.achieved.r2 == Rational(B - 2, B),
             "wrong rates at B=" + std::to_string(B));
  }
  c.finish(1.0);
}

void criterion2_region_equivalence() {
  Criterion c(2, "capacity and achievable regions coincide on 60,025 instances");
  const int cfbs[] = {0, 1, 2, 4, 8};
  std::atomic<long long> checked{0};
  std::atomic<bool> all_ok{true};
  icfb::parallel_for(7 * 7 * 7 * 7, [&](std::size_t idx) {
    LdicParams g;
    g.n11 = static_cast<int>(idx % 7);
    g.n22 = static_cast<int>(idx / 7 % 7);
    g.n12 = static_cast<int>(idx / 49 % 7);
    g.n21 = static_cast<int>(idx / 343 % 7);
    for (int c1 : cfbs)
      for (int c2 : cfbs) {
        g.cfb1 = c1;
        g.cfb2 = c2;
        if (!icfb::regions_equal(icfb::capacity_region(g), icfb::achievable_region(g)))
          all_ok = false;
        ++checked;
      }
  });
  c.expect(checked == 60025, "instance count " + std::to_string(checked.load()));
  c.expect(all_ok, "regions differ somewhere on the grid");
  c.finish(60.0);
}

void criterion3_symmetric_sumrate() {
  Criterion c(3, "region maximum equals the symmetric closed form; sweep CSV reproduces it");
  for (int n = 1; n <= 8; ++n)
    for (int m = 0; m <= 3 * n; ++m)
      for (int cf = 0; cf <= 2 * n; ++cf) {
        LdicParams g{n, n, m, m, cf, cf};
        if (max_sum(icfb::capacity_region(g)) != icfb::symmetric_sumrate(n, m, cf))
          c.expect(false, "mismatch at n=" + std::to_string(n) + " m=" + std::to_string(m) +
                              " c=" + std::to_string(cf));
      }

  // the three sweep curves, alpha step 0.01
  auto oracle = [](double a, double b) {
    if (a <= 0.5) return std::min(2 - 2 * a + 2 * b, 2 - a);
    if (a <= 2.0 / 3.0) return std::min(2 * a + 2 * b, 2 - a);
    if (a <= 1.0) return 2 - a;
    if (a <= 2 + 2 * b) return a;
    return 2 + 2 * b;
  };
  const Rational betas[] = {Rational(0), Rational(1, 8), Rational(10)};
  for (const auto& beta : betas) {
    for (int k = 0; k <= 300; ++k) {
      const Rational alpha(k, 100);
      const std::string cell = icfb::format_sig9(icfb::symmetric_sumrate_normalized(alpha, beta));
      const double parsed = std::stod(cell);
      const double want = oracle(alpha.to_double(), beta.to_double());
      if (std::abs(parsed - want) > 1e-8)
        c.expect(false, "curve value off at alpha=" + alpha.str() + " beta=" + beta.str());
    }
  }
  c.finish();
}

void criterion4_simulator_achievability() {
  Criterion c(4, "simulator decodes error-free at the exact closed-form sum rate");
  const int B = 50;
  struct Tuple {
    int n, m, cf;
  };
  std::vector<Tuple> tuples;
  for (int n = 1; n <= 8; ++n)
    for (int m = 0; 3 * m <= 2 * n; ++m)
      for (int cf = 0; cf <= n; ++cf) tuples.push_back({n, m, cf});
  std::atomic<bool> all_ok{true};
  icfb::parallel_for(tuples.size(), [&](std::size_t i) {
    const auto [n, m, cf] = tuples[i];
    LdicParams g{n, n, m, m, cf, cf};
    const auto scheme = icfb::build_scheme(g);
    const Rational target = Rational(B - 2, B) * icfb::symmetric_sumrate(n, m, cf);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto res = icfb::simulate(g, scheme, B, seed);
      if (!res.decode_ok || res.achieved.r1 + res.achieved.r2 != target) {
        all_ok = false;
        return;
      }
    }
  });
  c.expect(all_ok, "a tuple failed to decode or missed its rate");
  c.finish();
}

void criterion5_constant_gap() {
  Criterion c(5, "reference power splits stay within the per-regime constants");
  std::atomic<bool> sign_ok{true}, global_ok{true}, regime_ok{true};
  const double cfb_totals[] = {0, 1, 5, 10, 20};
  icfb::parallel_for(41, [&](std::size_t si) {
    const double snr = std::pow(10.0, (2.0 * static_cast<double>(si)) / 10.0);
    for (int ii = -10; ii <= 160; ii += 2) {
      const double inr = std::pow(10.0, ii / 10.0);
      for (double cfb : cfb_totals) {
        const double gap = icfb::sumrate_gap(snr, inr, cfb, 0, false);
        if (gap < -1e-9) sign_ok = false;
        if (gap > 14.8 + 1e-6) global_ok = false;
        const icfb::Regime regime = icfb::classify_regime(snr, inr);
        if (gap > icfb::regime_gap_bound(regime, snr) + 1e-6) regime_ok = false;
      }
    }
  });
  c.expect(sign_ok, "negative gap");
  c.expect(global_ok, "gap above 14.8");
  c.expect(regime_ok, "gap above its regime constant");
  c.finish(30.0);
}

void criterion6_figure7() {
  Criterion c(6, "optimized splits reach the reported sweep gaps (+1 bit tolerance)");
  const double limits[][2] = {{20, 5.0}, {40, 6.0}, {60, 6.5}};
  for (const auto& [snr_db, limit] : limits) {
    const double snr = std::pow(10.0, snr_db / 10.0);
    double worst = 0;
    std::atomic<bool> sign_ok{true};
    std::vector<double> gaps(86);
    icfb::parallel_for(gaps.size(), [&](std::size_t i) {
      const double inr = std::pow(10.0, (-10.0 + 2.0 * static_cast<double>(i)) / 10.0);
      gaps[i] = icfb::sumrate_gap(snr, inr, 10, 0, true);
      if (gaps[i] < -1e-9) sign_ok = false;
    });
    for (double g : gaps) worst = std::max(worst, g);
    c.expect(sign_ok, "negative gap at snr " + std::to_string(snr_db));
    c.expect(worst <= limit, "max gap " + std::to_string(worst) + " above " +
                                 std::to_string(limit) + " at snr " + std::to_string(snr_db));
  }
  c.finish();
}

void criterion7_feedback_worth() {
  Criterion c(7, "feedback is worth at most one bit per bit, and regions grow with it");
  const int cfbs[] = {0, 1, 2, 4, 8};
  std::atomic<bool> worth_ok{true}, monotone_ok{true};
  icfb::parallel_for(7 * 7 * 7 * 7, [&](std::size_t idx) {
    LdicParams g;
    g.n11 = static_cast<int>(idx % 7);
    g.n22 = static_cast<int>(idx / 7 % 7);
    g.n12 = static_cast<int>(idx / 49 % 7);
    g.n21 = static_cast<int>(idx / 343 % 7);
    g.cfb1 = 0;
    g.cfb2 = 0;
    const Rational base = max_sum(icfb::capacity_region(g));
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) {
        g.cfb1 = cfbs[a];
        g.cfb2 = cfbs[b];
        const auto region = icfb::capacity_region(g);
        if (max_sum(region) > base + Rational(cfbs[a]) + Rational(cfbs[b])) worth_ok = false;
        // componentwise-larger feedback must contain this region
        for (int da = 0; da < 2; ++da)
          for (int db = 0; db < 2; ++db) {
            if (a + da >= 5 || b + db >= 5) continue;
            LdicParams h = g;
            h.cfb1 = cfbs[a + da];
            h.cfb2 = cfbs[b + db];
            const auto bigger = icfb::capacity_region(h);
            for (const auto& v : icfb::vertices(region))
              if (!icfb::contains(bigger, v)) monotone_ok = false;
          }
      }
  });
  c.expect(worth_ok, "sum-rate grew by more than the feedback spent");
  c.expect(monotone_ok, "regions are not monotone in the feedback capacities");
  c.finish();
}

void criterion8_recovery() {
  Criterion c(8, "no-feedback and infinite-feedback limits, interference-free Gaussian bound");
  // (a) cfb = 0 matches the feedback-free formulas, written out independently
  for (int n11 = 0; n11 <= 6; n11 += 2)
    for (int n22 = 0; n22 <= 6; n22 += 3)
      for (int n12 = 0; n12 <= 6; ++n12)
        for (int n21 = 0; n21 <= 6; ++n21) {
          auto pos = [](int v) { return v > 0 ? v : 0; };
          RateRegion<Rational> want;
          want.add(1, 0, std::min(std::max(n11, n21), std::max(n11, n12)));
          want.add(1, 0, n11);
          want.add(0, 1, std::min(std::max(n22, n12), std::max(n22, n21)));
          want.add(0, 1, n22);
          want.add(1, 1, pos(n11 - n12) + std::max(n22, n12));
          want.add(1, 1, pos(n22 - n21) + std::max(n11, n21));
          want.add(1, 1, std::max(n21, pos(n11 - n12)) + std::max(n12, pos(n22 - n21)));
          want.add(2, 1, pos(n11 - n12) + std::max(n11, n21) + std::max(n12, pos(n22 - n21)));
          want.add(1, 2, pos(n22 - n21) + std::max(n22, n12) + std::max(n21, pos(n11 - n12)));
          if (!icfb::regions_equal(icfb::nonfeedback_region({n11, n22, n12, n21, 5, 7}), want))
            c.expect(false, "no-feedback mismatch");
        }
  // (b) cfb = 4q matches the region with the feedback-bearing constraints deleted
  for (int n11 = 0; n11 <= 6; n11 += 2)
    for (int n22 = 0; n22 <= 6; ++n22)
      for (int n12 = 0; n12 <= 6; n12 += 2)
        for (int n21 = 0; n21 <= 6; ++n21) {
          LdicParams g{n11, n22, n12, n21, 0, 0};
          const int big = 4 * std::max(1, g.q());
          g.cfb1 = big;
          g.cfb2 = big;
          const auto full = icfb::capacity_region(g);
          RateRegion<Rational> pruned;
          const auto& cons = full.constraints();
          for (std::size_t idx : {0u, 2u, 4u, 5u})
            pruned.add(cons[idx].c1, cons[idx].c2, cons[idx].bound);
          if (!icfb::regions_equal(full, pruned)) c.expect(false, "infinite-feedback mismatch");
        }
  // (c) interference-free Gaussian bound collapses to the point-to-point rates
  for (double snr_db = 0; snr_db <= 80; snr_db += 0.5) {
    const double snr = std::pow(10.0, snr_db / 10.0);
    for (double cfb : {0.0, 1.5, 10.0}) {
      const double got = icfb::symmetric_sumrate_outer(snr, 0.0, cfb, cfb);
      const double want = 2.0 * std::log2(1.0 + snr);
      if (std::abs(got - want) > 1e-9) c.expect(false, "interference-free bound off");
    }
  }
  c.finish();
}

}  // namespace

int main() {
  criterion1_motivating_example();
  criterion2_region_equivalence();
  criterion3_symmetric_sumrate();
  criterion4_simulator_achievability();
  criterion5_constant_gap();
  criterion6_figure7();
  criterion7_feedback_worth();
  criterion8_recovery();
  if (failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d criterion(s) FAILED\n", failures);
  return failures;
}
