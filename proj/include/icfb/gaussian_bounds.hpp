#pragma once

#include <cmath>
#include <stdexcept>

#include "rate_region.hpp"

namespace icfb {

// SNR/INR values in linear scale plus feedback capacities in bits per
// channel use. All rates are base-2 logs.
struct GaussianParams {
  double snr1 = 0, snr2 = 0;
  double inr12 = 0, inr21 = 0;
  double cfb1 = 0, cfb2 = 0;

  static GaussianParams symmetric(double snr, double inr, double cfb1, double cfb2) {
    return {snr, snr, inr, inr, cfb1, cfb2};
  }

  void validate() const {
    for (double v : {snr1, snr2, inr12, inr21, cfb1, cfb2})
      if (!(v >= 0) || !std::isfinite(v)) throw std::invalid_argument("Gaussian parameters must be finite and nonnegative");
  }
};

inline double log2p1(double x) { return std::log1p(x) * 1.4426950408889634; }  // log2(1+x)

// The eleven-constraint outer region at a fixed input correlation rho.
inline RateRegion<double> outer_region_at_rho(const GaussianParams& p, double rho) {
  p.validate();
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::domain_error("rho must lie in [0,1]");
  const double r2 = 1.0 - rho * rho;
  const double s1 = p.snr1, s2 = p.snr2, i12 = p.inr12, i21 = p.inr21;

  const double rx1_full = log2p1(s1 + i21 + 2.0 * rho * std::sqrt(s1 * i21));
  const double rx2_full = log2p1(s2 + i12 + 2.0 * rho * std::sqrt(s2 * i12));
  const double s1_over_i12 = log2p1(r2 * s1 / (1.0 + r2 * i12));
  const double s2_over_i21 = log2p1(r2 * s2 / (1.0 + r2 * i21));
  const double rx1_cond = log2p1(r2 * i21 + r2 * s1 / (1.0 + r2 * i12));
  const double rx2_cond = log2p1(r2 * i12 + r2 * s2 / (1.0 + r2 * i21));

  RateRegion<double> r;
  r.add(1, 0, rx1_full);
  r.add(1, 0, s1_over_i12 + log2p1(r2 * i12));
  r.add(1, 0, log2p1(r2 * s1) + p.cfb2);
  r.add(0, 1, rx2_full);
  r.add(0, 1, s2_over_i21 + log2p1(r2 * i21));
  r.add(0, 1, log2p1(r2 * s2) + p.cfb1);
  r.add(1, 1, rx1_cond + rx2_cond + p.cfb1 + p.cfb2);
  r.add(1, 1, s1_over_i12 + rx2_full);
  r.add(1, 1, s2_over_i21 + rx1_full);
  r.add(2, 1, rx1_full + s1_over_i12 + rx2_cond + p.cfb1 + p.cfb2);
  r.add(1, 2, rx2_full + s2_over_i21 + rx1_cond + p.cfb1 + p.cfb2);
  return r;
}

// Best sum-rate over the rho family: uniform grid plus golden-section
// refinement around the grid argmax. Each sum bound is smooth in rho, so
// this lands well inside 1e-6 bits of the true maximum.
inline double sumrate_outer(const GaussianParams& p, int rho_steps = 201) {
  if (rho_steps < 2) throw std::invalid_argument("sumrate_outer: need at least two grid points");
  auto sum_at = [&](double rho) {
    return max_weighted(outer_region_at_rho(p, rho), 1.0, 1.0, 1e-12).value();
  };
  double best = -1.0, best_rho = 0.0;
  for (int i = 0; i < rho_steps; ++i) {
    const double rho = static_cast<double>(i) / (rho_steps - 1);
    const double v = sum_at(rho);
    if (v > best) {
      best = v;
      best_rho = rho;
    }
  }
  const double h = 1.0 / (rho_steps - 1);
  double lo = std::max(0.0, best_rho - h), hi = std::min(1.0, best_rho + h);
  const double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = sum_at(x1), f2 = sum_at(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = sum_at(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = sum_at(x1);
    }
  }
  return std::max(best, std::max(f1, f2));
}

// Symmetric closed-form sum-rate outer bound: the minimum of the three
// rho-maximized expressions.
inline double symmetric_sumrate_outer(double snr, double inr, double cfb1, double cfb2) {
  GaussianParams::symmetric(snr, inr, cfb1, cfb2).validate();
  const double a = 2.0 * log2p1(snr) + cfb1 + cfb2;
  const double b = log2p1(snr / (1.0 + inr)) + log2p1(snr + inr + 2.0 * std::sqrt(snr * inr));
  const double c = 2.0 * log2p1(inr + snr / (1.0 + inr)) + cfb1 + cfb2;
  return std::min(a, std::min(b, c));
}

}  // namespace icfb
