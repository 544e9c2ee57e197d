#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace icfb {

// A 2-D rate region: the intersection of half-planes c1*R1 + c2*R2 <= bound
// with the nonnegative quadrant. T is either Rational (exact, used for the
// deterministic channel) or double (used for the Gaussian bounds, where the
// caller supplies a tolerance).

template <class T>
struct RatePair {
  T r1{};
  T r2{};
  friend bool operator==(const RatePair&, const RatePair&) = default;
};

template <class T>
struct RateConstraint {
  T c1{};
  T c2{};
  T bound{};
};

struct UnboundedRegionError : std::domain_error {
  using std::domain_error::domain_error;
};

template <class T>
class RateRegion {
 public:
  RateRegion() = default;

  void add(T c1, T c2, T bound) {
    if (c1 < T(0) || c2 < T(0) || (c1 == T(0) && c2 == T(0)))
      throw std::invalid_argument("rate constraint must have nonnegative coefficients, not both zero");
    cons_.push_back({std::move(c1), std::move(c2), std::move(bound)});
  }

  const std::vector<RateConstraint<T>>& constraints() const { return cons_; }

  // All coefficients are nonnegative, so the region is nonempty exactly when
  // the origin is feasible.
  bool is_empty(const T& tol = T(0)) const {
    for (const auto& c : cons_)
      if (c.bound < T(0) - tol) return true;
    return false;
  }

  bool caps_r1() const {
    for (const auto& c : cons_)
      if (c.c1 > T(0)) return true;
    return false;
  }
  bool caps_r2() const {
    for (const auto& c : cons_)
      if (c.c2 > T(0)) return true;
    return false;
  }
  bool is_bounded() const { return caps_r1() && caps_r2(); }

 private:
  std::vector<RateConstraint<T>> cons_;
};

template <class T>
bool contains(const RateRegion<T>& region, const RatePair<T>& p, const T& tol = T(0)) {
  if (p.r1 < T(0) - tol || p.r2 < T(0) - tol) return false;
  for (const auto& c : region.constraints())
    if (c.c1 * p.r1 + c.c2 * p.r2 > c.bound + tol) return false;
  return true;
}

namespace detail {

// Every vertex of the region is the intersection of two non-parallel
// boundary lines (constraints or axes); conversely any feasible such
// intersection is extreme. Enumerating the pairs is exact and cheap in 2-D.
template <class T, class Fn>
void for_each_candidate_vertex(const RateRegion<T>& region, const T& tol, Fn&& fn) {
  struct Line {
    T a, b, c;  // a*x + b*y = c
  };
  std::vector<Line> lines;
  lines.reserve(region.constraints().size() + 2);
  for (const auto& c : region.constraints()) lines.push_back({c.c1, c.c2, c.bound});
  lines.push_back({T(1), T(0), T(0)});
  lines.push_back({T(0), T(1), T(0)});

  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const T det = lines[i].a * lines[j].b - lines[i].b * lines[j].a;
      if (det == T(0)) continue;
      RatePair<T> p;
      p.r1 = (lines[i].c * lines[j].b - lines[i].b * lines[j].c) / det;
      p.r2 = (lines[i].a * lines[j].c - lines[i].c * lines[j].a) / det;
      if (contains(region, p, tol)) fn(p);
    }
  }
}

template <class T>
T abs_diff(const T& a, const T& b) {
  return a < b ? b - a : a - b;
}

}  // namespace detail

// Maximum of w1*R1 + w2*R2 over the region. Returns nullopt for an empty
// region (the "-infinity" marker that keeps downstream gap math total) and
// throws UnboundedRegionError when no constraint caps the objective.
template <class T>
std::optional<T> max_weighted(const RateRegion<T>& region, const T& w1, const T& w2, const T& tol = T(0)) {
  if (w1 < T(0) || w2 < T(0) || (w1 == T(0) && w2 == T(0)))
    throw std::invalid_argument("max_weighted: weights must be nonnegative, not both zero");
  if (region.is_empty(tol)) return std::nullopt;
  if ((w1 > T(0) && !region.caps_r1()) || (w2 > T(0) && !region.caps_r2()))
    throw UnboundedRegionError("max_weighted: objective is unbounded over the region");
  std::optional<T> best;
  detail::for_each_candidate_vertex(region, tol, [&](const RatePair<T>& p) {
    T v = w1 * p.r1 + w2 * p.r2;
    if (!best || v > *best) best = v;
  });
  return best;
}

// All extreme points, deduplicated (coordinates within tol) and sorted
// lexicographically. Empty region -> empty list; unbounded region -> error.
template <class T>
std::vector<RatePair<T>> vertices(const RateRegion<T>& region, const T& tol = T(0)) {
  if (region.is_empty(tol)) return {};
  if (!region.is_bounded()) throw UnboundedRegionError("vertices: region is unbounded");
  std::vector<RatePair<T>> out;
  detail::for_each_candidate_vertex(region, tol, [&](const RatePair<T>& p) {
    for (const auto& q : out)
      if (detail::abs_diff(p.r1, q.r1) <= tol && detail::abs_diff(p.r2, q.r2) <= tol) return;
    out.push_back(p);
  });
  std::sort(out.begin(), out.end(), [](const RatePair<T>& a, const RatePair<T>& b) {
    if (a.r1 != b.r1) return a.r1 < b.r1;
    return a.r2 < b.r2;
  });
  return out;
}

// Two bounded regions are equal when each one's vertices lie in the other.
template <class T>
bool regions_equal(const RateRegion<T>& a, const RateRegion<T>& b, const T& tol = T(0)) {
  if (!a.is_bounded() || !b.is_bounded())
    throw UnboundedRegionError("regions_equal: both regions must be bounded");
  if (a.is_empty(tol) || b.is_empty(tol)) return a.is_empty(tol) == b.is_empty(tol);
  bool equal = true;
  detail::for_each_candidate_vertex(a, tol, [&](const RatePair<T>& p) {
    if (!contains(b, p, tol)) equal = false;
  });
  if (!equal) return false;
  detail::for_each_candidate_vertex(b, tol, [&](const RatePair<T>& p) {
    if (!contains(a, p, tol)) equal = false;
  });
  return equal;
}

}  // namespace icfb
