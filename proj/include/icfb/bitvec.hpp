#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace icfb {

// Fixed-length GF(2) column vector. Index 0 is the most significant level,
// matching the top-down level diagrams of the deterministic channel.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int q) : bits_(static_cast<std::size_t>(q), 0) {
    if (q < 0) throw std::invalid_argument("BitVec: negative length");
  }
  BitVec(std::initializer_list<int> init) {
    bits_.reserve(init.size());
    for (int b : init) bits_.push_back(static_cast<std::uint8_t>(b & 1));
  }

  static BitVec from_string(const std::string& s) {
    BitVec v;
    v.bits_.reserve(s.size());
    for (char c : s) {
      if (c != '0' && c != '1') throw std::invalid_argument("BitVec: expected a 0/1 string");
      v.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return v;
  }

  int size() const { return static_cast<int>(bits_.size()); }
  std::uint8_t get(int i) const { return bits_.at(static_cast<std::size_t>(i)); }
  void set(int i, int value) { bits_.at(static_cast<std::size_t>(i)) = static_cast<std::uint8_t>(value & 1); }

  bool any() const {
    for (auto b : bits_)
      if (b) return true;
    return false;
  }
  int popcount() const {
    int n = 0;
    for (auto b : bits_) n += b;
    return n;
  }

  BitVec& operator^=(const BitVec& o) {
    if (o.size() != size()) throw std::invalid_argument("BitVec: length mismatch");
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= o.bits_[i];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend bool operator==(const BitVec&, const BitVec&) = default;

  std::string str() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
    return s;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

// Channel gains and feedback capacities of the linear deterministic IC.
// Region math accepts rational feedback capacities; the simulator requires
// integers.
struct LdicParams {
  int n11 = 0;
  int n22 = 0;
  int n12 = 0;
  int n21 = 0;
  Rational cfb1 = 0;
  Rational cfb2 = 0;

  int q() const { return std::max(std::max(n11, n22), std::max(n12, n21)); }

  void validate() const {
    if (n11 < 0 || n22 < 0 || n12 < 0 || n21 < 0)
      throw std::invalid_argument("channel gains must be nonnegative");
    if (cfb1 < Rational(0) || cfb2 < Rational(0))
      throw std::invalid_argument("feedback capacities must be nonnegative");
  }

  bool symmetric() const { return n11 == n22 && n12 == n21 && cfb1 == cfb2; }
};

// S^{q-n} x: the bottom n entries of the result are the top n entries of x.
inline BitVec shift_down(const BitVec& x, int n) {
  const int q = x.size();
  if (n < 0 || n > q) throw std::invalid_argument("shift_down: gain exceeds vector length");
  BitVec y(q);
  for (int i = 0; i < n; ++i) y.set(q - n + i, x.get(i));
  return y;
}

// One use of the deterministic channel.
inline std::pair<BitVec, BitVec> channel_output(const BitVec& x1, const BitVec& x2, const LdicParams& g) {
  g.validate();
  const int q = g.q();
  if (x1.size() != q || x2.size() != q)
    throw std::invalid_argument("channel_output: inputs must have length q");
  BitVec y1 = shift_down(x1, g.n11) ^ shift_down(x2, g.n21);
  BitVec y2 = shift_down(x1, g.n12) ^ shift_down(x2, g.n22);
  return {std::move(y1), std::move(y2)};
}

// Keeps the bottom min(cross_gain, cfb) levels of y, zeroing the rest.
inline BitVec lsb_feedback(const BitVec& y, int cross_gain, int cfb) {
  if (cross_gain < 0 || cfb < 0) throw std::invalid_argument("lsb_feedback: negative argument");
  const int q = y.size();
  const int keep = std::min(cross_gain, cfb);
  if (keep > q) throw std::invalid_argument("lsb_feedback: window exceeds vector length");
  BitVec out(q);
  for (int i = q - keep; i < q; ++i) out.set(i, y.get(i));
  return out;
}

}  // namespace icfb
