#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "icfb/gaussian_ach.hpp"

using icfb::PowerSplit;
using icfb::Regime;

TEST_CASE("regime classification") {
  CHECK(icfb::classify_regime(1e4, 10) == Regime::CaseA);
  CHECK(icfb::classify_regime(4, 64) == Regime::CaseC);
  CHECK(icfb::classify_regime(0.9, 0.5) == Regime::InrBelowOne);
  CHECK(icfb::classify_regime(1e3, 1e2) == Regime::CaseB);  // boundary b/d
  CHECK(icfb::classify_regime(1e2, 1e3) == Regime::CaseE);
  CHECK(icfb::classify_regime(100, 100) == Regime::CaseD);  // boundary d/e
  CHECK_THROWS_AS(icfb::classify_regime(0, 1), std::invalid_argument);

  auto both = icfb::applicable_regimes(100, 10);  // inr^2 == snr
  CHECK(both.size() == 2);
  CHECK(both[0] == Regime::CaseA);
  CHECK(both[1] == Regime::CaseB);
}

TEST_CASE("reference power split, weak interference") {
  auto ps = icfb::default_power_split(1e4, 10, 10, Regime::CaseA);
  CHECK(ps.p1[1] == Catch::Approx(9e-4));
  CHECK(ps.p2[0] == Catch::Approx(0.1));
  CHECK(ps.p2[1] == Catch::Approx(0.45));
  CHECK(ps.feasible());
  CHECK(ps.p1_total() <= 1.0 + 1e-12);
  CHECK(ps.p2_total() <= 1.0 + 1e-12);
  // the aligned codewords really arrive at the same power
  CHECK(1e4 * ps.p1[1] == Catch::Approx(10 * ps.p2[1] * 2));
}

TEST_CASE("reference power split, degenerate feedback") {
  auto ps = icfb::default_power_split(100, 1.0, 0, Regime::CaseA);
  CHECK(ps.p1[1] == Catch::Approx(0.0).margin(1e-15));
  CHECK(ps.p1[2] == Catch::Approx(0.0).margin(1e-15));
  CHECK(ps.p2[1] == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("reference power split, very strong interference") {
  auto ps = icfb::default_power_split(0.5, 100, 3, Regime::CaseC);
  CHECK(ps.p1[2] == Catch::Approx(0.08));
  CHECK(ps.p2[1] == Catch::Approx(0.08));
  CHECK(ps.p1[0] == 0.0);
  CHECK(ps.p2[2] == 0.0);
  CHECK_THROWS_AS(icfb::default_power_split(10, 10, 1, Regime::CaseD), std::invalid_argument);
}

TEST_CASE("feedback sum-rate formulas") {
  SECTION("all powers zero gives zero rate") {
    PowerSplit ps;
    CHECK(icfb::feedback_sumrate(Regime::CaseA, 100, 10, 5, ps) == Catch::Approx(0.0).margin(1e-15));
    CHECK(icfb::feedback_sumrate(Regime::CaseB, 100, 10, 5, ps) == Catch::Approx(0.0).margin(1e-15));
    CHECK(icfb::feedback_sumrate(Regime::CaseC, 100, 10, 5, ps) == Catch::Approx(0.0).margin(1e-15));
  }
  SECTION("very strong interference, closed-form structure") {
    auto ps = icfb::default_power_split(0.5, 100, 3, Regime::CaseC);
    const double lattice = std::min(3.0, std::log2(100 * 0.08 / (1.0 + 0.5 * 0.08)));
    CHECK(icfb::feedback_sumrate(Regime::CaseC, 0.5, 100, 3, ps) ==
          Catch::Approx(lattice).epsilon(1e-12));
  }
  SECTION("weak interference beats the outer bound minus its regime constant") {
    auto ps = icfb::default_power_split(1e4, 10, 10, Regime::CaseA);
    const double r = icfb::feedback_sumrate(Regime::CaseA, 1e4, 10, 10, ps);
    CHECK(r > 0.0);
    CHECK(r >= icfb::symmetric_sumrate_outer(1e4, 10, 10, 0) - 9.6);
  }
  SECTION("infeasible splits are rejected") {
    PowerSplit ps;
    ps.p1 = {0.9, 0.9, 0, 0};
    CHECK_THROWS_AS(icfb::feedback_sumrate(Regime::CaseA, 100, 10, 1, ps), std::invalid_argument);
  }
}

TEST_CASE("lattice rates never exceed the feedback capacity") {
  for (double cfb : {0.0, 1.0, 5.0, 20.0})
    for (double snr : {2.0, 100.0, 1e6})
      for (Regime r : {Regime::CaseA, Regime::CaseB, Regime::CaseC}) {
        const double inr = r == Regime::CaseA ? std::sqrt(snr) / 2
                           : r == Regime::CaseB ? std::pow(snr, 0.6)
                                                : snr * snr * 4;
        if (inr < 1) continue;
        auto ps = icfb::default_power_split(snr, inr, cfb, r);
        auto [l1, l2] = icfb::lattice_rates(r, snr, inr, cfb, ps);
        CHECK(l1 <= cfb + 1e-12);
        CHECK(l2 <= cfb + 1e-12);
        CHECK(l1 >= 0.0);
        CHECK(l2 >= 0.0);
      }
}

TEST_CASE("non-feedback reference rates") {
  CHECK(icfb::nonfeedback_sumrate(100, 0.5, Regime::InrBelowOne) ==
        Catch::Approx(2 * std::log2(1 + 100 / 1.5)).epsilon(1e-12));
  CHECK(icfb::nonfeedback_sumrate(50, 50, Regime::CaseE) ==
        Catch::Approx(std::log2(1 + 100) - 1).epsilon(1e-12));
  CHECK(icfb::nonfeedback_sumrate(1e3, 1e2, Regime::CaseD) ==
        Catch::Approx(std::log2(1001.0) + std::log2(1 + 1000.0 / 101.0) - 1).epsilon(1e-12));
  CHECK_THROWS_AS(icfb::nonfeedback_sumrate(100, 10, Regime::CaseA), std::invalid_argument);
}

TEST_CASE("extreme-case dispatch identities") {
  // zero feedback: every lattice term dies, a/b/c reduce to their private parts
  const double v0 = icfb::achievable_sumrate_extreme(1e4, 10, 0);
  auto ps0 = icfb::default_power_split(1e4, 10, 0, Regime::CaseA);
  CHECK(v0 == Catch::Approx(icfb::feedback_sumrate(Regime::CaseA, 1e4, 10, 0, ps0)));

  const double v = icfb::achievable_sumrate_extreme(1e4, 10, 10);
  auto ps = icfb::default_power_split(1e4, 10, 10, Regime::CaseA);
  CHECK(v == Catch::Approx(icfb::feedback_sumrate(Regime::CaseA, 1e4, 10, 10, ps)));
}

TEST_CASE("time sharing over the feedback split") {
  const double both = icfb::achievable_sumrate(1e4, 50, 5, 5);
  const double one = icfb::achievable_sumrate(1e4, 50, 10, 0);
  const double ext = icfb::achievable_sumrate_extreme(1e4, 50, 10);
  CHECK(both == Catch::Approx(ext));
  CHECK(one == Catch::Approx(ext));
  CHECK(icfb::achievable_sumrate(1e4, 50, 0, 0) == Catch::Approx(icfb::achievable_sumrate_extreme(1e4, 50, 0)));
}

TEST_CASE("optimizer never loses to the reference split and keeps the gap sign") {
  for (double snr_db : {10.0, 25.0, 40.0})
    for (double inr_db : {-5.0, 5.0, 18.0, 33.0, 60.0}) {
      const double snr = std::pow(10.0, snr_db / 10.0);
      const double inr = std::pow(10.0, inr_db / 10.0);
      const double plain = icfb::achievable_sumrate(snr, inr, 5, 5, false);
      const double tuned = icfb::achievable_sumrate(snr, inr, 5, 5, true);
      CHECK(tuned >= plain - 1e-12);
      CHECK(icfb::sumrate_gap(snr, inr, 5, 5, true) >= -1e-9);
    }
}

TEST_CASE("constant gap on a spot grid, reference powers") {
  for (double snr_db = 0; snr_db <= 80; snr_db += 8)
    for (double inr_db = -10; inr_db <= 160; inr_db += 10)
      for (double cfb : {0.0, 1.0, 10.0}) {
        const double snr = std::pow(10.0, snr_db / 10.0);
        const double inr = std::pow(10.0, inr_db / 10.0);
        const double gap = icfb::sumrate_gap(snr, inr, cfb, 0, false);
        INFO("snr_db=" << snr_db << " inr_db=" << inr_db << " cfb=" << cfb);
        CHECK(gap >= -1e-9);
        CHECK(gap <= 14.8 + 1e-6);
        CHECK(gap <= icfb::regime_gap_bound(icfb::classify_regime(snr, inr), snr) + 1e-6);
      }
}

TEST_CASE("equal feedback split achieves the per-user symmetric-capacity gap") {
  for (double snr_db = 0; snr_db <= 80; snr_db += 16)
    for (double inr_db = -10; inr_db <= 160; inr_db += 17) {
      const double snr = std::pow(10.0, snr_db / 10.0);
      const double inr = std::pow(10.0, inr_db / 10.0);
      const double gap = icfb::sumrate_gap(snr, inr, 5, 5, false);
      CHECK(gap / 2.0 <= 7.4 + 1e-6);
    }
}

TEST_CASE("with powers held fixed, more feedback never lowers the formula value") {
  for (Regime r : {Regime::CaseA, Regime::CaseB, Regime::CaseC})
    for (double snr : {1.3, 4.0, 100.0, 1e5})
      for (double cfb_ref : {1.0, 5.0, 20.0}) {
        const double inr = r == Regime::CaseA ? std::sqrt(snr) / 2
                           : r == Regime::CaseB ? std::pow(snr, 0.6)
                                                : snr * snr * 4;
        if (inr < 1) continue;
        const auto ps = icfb::default_power_split(snr, inr, cfb_ref, r);
        double prev = -1.0;
        for (double cfb = 0; cfb <= 24; cfb += 0.25) {
          const double v = icfb::feedback_sumrate(r, snr, inr, cfb, ps);
          CHECK(v >= prev - 1e-12);
          prev = v;
        }
      }
}
