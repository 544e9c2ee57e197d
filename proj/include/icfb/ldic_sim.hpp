#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bitvec.hpp"
#include "ldic_capacity.hpp"
#include "rate_region.hpp"

namespace icfb {

struct SchemeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedRegimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DecodingAmbiguityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Role of one transmit level inside a block.
//   Private  - fresh bit, visible only at the intended receiver
//   Coop     - fresh bit that lands in the other receiver's feedback window,
//              travels back over the feedback link and is relayed two blocks
//              later by the other transmitter
//   NonCoop  - fresh bit visible at both receivers, never fed back
//   Relay    - repetition of the other user's Coop bit from block b-2
//   Echo     - same-block repetition of one of this user's own Coop bits on a
//              level the intended receiver hears cleanly
enum class LevelRole : std::uint8_t { Silent, Private, Coop, NonCoop, Relay, Echo };

struct TxPlan {
  std::vector<LevelRole> roles;  // index 0 = most significant level
  std::map<int, int> echo_src;   // echo level -> own coop level it repeats

  std::vector<int> levels_with(LevelRole r) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(roles.size()); ++i)
      if (roles[i] == r) out.push_back(i);
    return out;
  }
  std::vector<int> fresh_levels() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(roles.size()); ++i)
      if (roles[i] == LevelRole::Private || roles[i] == LevelRole::Coop || roles[i] == LevelRole::NonCoop)
        out.push_back(i);
    return out;
  }
};

// Full description of one block-Markov schedule on the deterministic IC.
struct SchemeConfig {
  int q = 0;
  std::array<TxPlan, 2> tx;
  std::array<std::vector<int>, 2> feedback_levels;  // receiver levels sent back, ascending

  int fresh_per_block(int user) const { return static_cast<int>(tx[user].fresh_levels().size()); }
  int coop_count(int user) const { return static_cast<int>(tx[user].levels_with(LevelRole::Coop).size()); }

  RatePair<Rational> steady_rates() const {
    return {Rational(fresh_per_block(0)), Rational(fresh_per_block(1))};
  }

  void validate(const LdicParams& g) const;
};

namespace detail {
inline int cross_gain_into(const LdicParams& g, int rx) { return rx == 0 ? g.n21 : g.n12; }
inline int direct_gain(const LdicParams& g, int rx) { return rx == 0 ? g.n11 : g.n22; }
inline Rational rx_cfb(const LdicParams& g, int rx) { return rx == 0 ? g.cfb1 : g.cfb2; }
}  // namespace detail

inline void SchemeConfig::validate(const LdicParams& g) const {
  g.validate();
  if (q != g.q()) throw SchemeError("scheme/params mismatch: wrong vector length");
  if (!g.cfb1.is_integer() || !g.cfb2.is_integer())
    throw SchemeError("simulation requires integer feedback capacities");
  for (int u = 0; u < 2; ++u) {
    if (static_cast<int>(tx[u].roles.size()) != q)
      throw SchemeError("scheme/params mismatch: role table length");
    for (const auto& [lvl, src] : tx[u].echo_src) {
      if (lvl < 0 || lvl >= q || tx[u].roles[lvl] != LevelRole::Echo)
        throw SchemeError("echo entry does not point at an echo level");
      if (src < 0 || src >= q || tx[u].roles[src] != LevelRole::Coop)
        throw SchemeError("echo source must be a coop level of the same transmitter");
    }
    if (tx[u].levels_with(LevelRole::Echo).size() != tx[u].echo_src.size())
      throw SchemeError("every echo level needs a source");
  }
  for (int rx = 0; rx < 2; ++rx) {
    const int other = 1 - rx;
    const long long budget = detail::rx_cfb(g, rx).num();
    if (static_cast<long long>(feedback_levels[rx].size()) > budget)
      throw SchemeError("feedback window exceeds the feedback capacity");
    const int cross = detail::cross_gain_into(g, rx);
    for (int v : feedback_levels[rx]) {
      if (v < 0 || v >= q) throw SchemeError("feedback level out of range");
      if (v < q - cross) throw SchemeError("feedback level above the interfered window");
    }
    // Each of the other user's coop levels must land inside this window.
    for (int c : tx[other].levels_with(LevelRole::Coop)) {
      const int landing = c + (q - cross);
      bool in_window = false;
      for (int v : feedback_levels[rx]) in_window |= (v == landing);
      if (!in_window) throw SchemeError("coop level does not land in the feedback window");
    }
    if (tx[rx].levels_with(LevelRole::Relay).size() != tx[other].levels_with(LevelRole::Coop).size())
      throw SchemeError("relay level count must match the other user's coop count");
  }
}

// Builds the symmetric block-Markov schedule. Supported for n11=n22=n,
// n12=n21=m with m <= 2n/3 and equal integer feedback capacities.
inline SchemeConfig build_scheme(const LdicParams& g) {
  g.validate();
  if (!g.symmetric()) throw UnsupportedRegimeError("scheme construction needs symmetric parameters");
  if (!g.cfb1.is_integer()) throw UnsupportedRegimeError("scheme construction needs integer feedback capacity");
  const int n = g.n11, m = g.n12;
  const long long cfb = g.cfb1.num();
  if (3 * m > 2 * n) throw UnsupportedRegimeError("scheme construction covers m <= 2n/3 only");

  SchemeConfig s;
  s.q = g.q();
  if (n == 0) return s;

  const int w = static_cast<int>(std::min<long long>(m, cfb));  // feedback window depth
  long long coop_total, nc_total;
  if (2 * m <= n) {
    coop_total = std::min<long long>(2 * cfb, m);
    nc_total = 0;
  } else {
    const long long top_fresh = std::min<long long>(4LL * m - 2LL * n + 2 * cfb, m);
    coop_total = std::min<long long>(2 * cfb, top_fresh);
    nc_total = top_fresh - coop_total;
  }
  const std::array<int, 2> coop = {static_cast<int>((coop_total + 1) / 2),
                                   static_cast<int>(coop_total / 2)};
  const std::array<int, 2> nc = {static_cast<int>(nc_total / 2),
                                 static_cast<int>((nc_total + 1) / 2)};

  for (int u = 0; u < 2; ++u) {
    const int other = 1 - u;
    TxPlan plan;
    plan.roles.assign(n, LevelRole::Silent);
    // Fresh private bits occupy the bottom n-m levels.
    for (int i = m; i < n; ++i) plan.roles[i] = LevelRole::Private;
    // Coop bits sit at the bottom of the top-m zone so the cross channel
    // drops them into the other receiver's feedback window.
    for (int i = m - coop[u]; i < m; ++i) plan.roles[i] = LevelRole::Coop;
    // Echoes repair the own-receiver copies of coop bits that the other
    // user's non-cooperative bits land on.
    const int lo = std::max(m - coop[u], n - m);
    const int hi = std::min(m, n - m + nc[other]);
    const int echo_count = std::max(0, hi - lo);
    int next = 0;
    for (int i = 0; i < nc[u]; ++i) plan.roles[next++] = LevelRole::NonCoop;
    for (int i = 0; i < coop[other]; ++i) plan.roles[next++] = LevelRole::Relay;
    for (int i = 0; i < echo_count; ++i) {
      plan.roles[next] = LevelRole::Echo;
      plan.echo_src[next] = lo + i;
      ++next;
    }
    if (next > m - coop[u]) throw SchemeError("level budget overflow in scheme construction");
    s.tx[u] = std::move(plan);
  }
  for (int rx = 0; rx < 2; ++rx)
    for (int v = n - w; v < n; ++v) s.feedback_levels[rx].push_back(v);
  s.validate(g);
  return s;
}

// The asymmetric reference schedule on the (4,4,2,2,1,1) channel: four fresh
// bits per block for user 1, one for user 2, one-bit feedback of the
// interfered level, corner point (4,1) in the limit.
inline LdicParams motivating_params() { return LdicParams{4, 4, 2, 2, 1, 1}; }

inline SchemeConfig motivating_scheme() {
  SchemeConfig s;
  s.q = 4;
  s.tx[0].roles = {LevelRole::Coop, LevelRole::NonCoop, LevelRole::Private, LevelRole::Private};
  s.tx[1].roles = {LevelRole::Silent, LevelRole::Relay, LevelRole::Private, LevelRole::Silent};
  s.feedback_levels[0] = {};
  s.feedback_levels[1] = {2};  // the level carrying (a1 xor b)
  s.validate(motivating_params());
  return s;
}

struct BlockRecord {
  BitVec tx1, tx2;  // transmitted vectors
  BitVec y1, y2;    // received vectors
  BitVec fb1, fb2;  // feedback in transit during this block (from block b-1)
  std::vector<std::uint8_t> dec1, dec2;  // decoded fresh bits, level order
};

struct SimResult {
  int blocks = 0;
  RatePair<Rational> achieved;
  bool decode_ok = false;
  std::vector<BlockRecord> trace;

  std::string trace_text() const;
};

namespace detail {

class Simulation {
 public:
  Simulation(const LdicParams& g, const SchemeConfig& s, int blocks, std::uint64_t seed, bool zero_messages)
      : g_(g), s_(s), B_(blocks) {
    s_.validate(g_);
    if (B_ < 3) throw std::invalid_argument("simulate: need at least three blocks");
    for (int u = 0; u < 2; ++u) {
      fresh_[u] = s_.tx[u].fresh_levels();
      coop_levels_[u] = s_.tx[u].levels_with(LevelRole::Coop);
      relay_levels_[u] = s_.tx[u].levels_with(LevelRole::Relay);
      fresh_index_[u].assign(static_cast<std::size_t>(s_.q), -1);
      for (std::size_t i = 0; i < fresh_[u].size(); ++i)
        fresh_index_[u][static_cast<std::size_t>(fresh_[u][i])] = static_cast<int>(i);
      relay_index_[u].assign(static_cast<std::size_t>(s_.q), -1);
      for (std::size_t i = 0; i < relay_levels_[u].size(); ++i)
        relay_index_[u][static_cast<std::size_t>(relay_levels_[u][i])] = static_cast<int>(i);
    }
    std::mt19937_64 rng(seed);
    for (int u = 0; u < 2; ++u) {
      msg_[u].assign(static_cast<std::size_t>(B_) * fresh_[u].size(), 0);
      if (!zero_messages) {
        for (int b = 1; b <= B_ - 2; ++b)
          for (std::size_t i = 0; i < fresh_[u].size(); ++i)
            msg_at(u, b, i) = static_cast<std::uint8_t>(rng() & 1);
      }
    }
  }

  SimResult run() {
    forward_pass();
    decode();
    SimResult r;
    r.blocks = B_;
    r.achieved = achieved_;
    r.decode_ok = decode_ok_;
    r.trace = std::move(records_);
    return r;
  }

 private:
  // A transmit-level bit as the decoder may model it: a known constant, or a
  // reference to one fresh message bit (relays and echoes are aliases).
  struct Symbol {
    bool known = true;
    std::uint8_t value = 0;
    int user = 0, block = 0, fresh_idx = 0;
  };

  std::uint8_t& msg_at(int u, int block, std::size_t fresh_idx) {
    return msg_[u][static_cast<std::size_t>(block - 1) * fresh_[u].size() + fresh_idx];
  }
  std::uint8_t msg_at(int u, int block, std::size_t fresh_idx) const {
    return msg_[u][static_cast<std::size_t>(block - 1) * fresh_[u].size() + fresh_idx];
  }

  std::uint8_t tx_bit(int u, int b, int level) const {
    switch (s_.tx[u].roles[static_cast<std::size_t>(level)]) {
      case LevelRole::Silent:
        return 0;
      case LevelRole::Private:
      case LevelRole::Coop:
      case LevelRole::NonCoop:
        return b <= B_ - 2 ? msg_at(u, b, static_cast<std::size_t>(fresh_index_[u][static_cast<std::size_t>(level)])) : 0;
      case LevelRole::Echo: {
        if (b > B_ - 2) return 0;
        const int src = s_.tx[u].echo_src.at(level);
        return msg_at(u, b, static_cast<std::size_t>(fresh_index_[u][static_cast<std::size_t>(src)]));
      }
      case LevelRole::Relay: {
        if (b <= 2) return 0;
        const int i = relay_index_[u][static_cast<std::size_t>(level)];
        return recovered_[u][static_cast<std::size_t>(b - 2)][static_cast<std::size_t>(i)];
      }
    }
    return 0;
  }

  Symbol symbol(int u, int b, int level) const {
    switch (s_.tx[u].roles[static_cast<std::size_t>(level)]) {
      case LevelRole::Silent:
        return {};
      case LevelRole::Private:
      case LevelRole::Coop:
      case LevelRole::NonCoop:
        if (b > B_ - 2) return {};
        return {false, 0, u, b, fresh_index_[u][static_cast<std::size_t>(level)]};
      case LevelRole::Echo: {
        if (b > B_ - 2) return {};
        const int src = s_.tx[u].echo_src.at(level);
        return {false, 0, u, b, fresh_index_[u][static_cast<std::size_t>(src)]};
      }
      case LevelRole::Relay: {
        const int other = 1 - u;
        const int src_block = b - 2;
        if (src_block < 1 || src_block > B_ - 2) return {};
        const int i = relay_index_[u][static_cast<std::size_t>(level)];
        const int coop_level = coop_levels_[other][static_cast<std::size_t>(i)];
        return {false, 0, other, src_block, fresh_index_[other][static_cast<std::size_t>(coop_level)]};
      }
    }
    return {};
  }

  void forward_pass() {
    const int q = s_.q;
    recovered_[0].assign(static_cast<std::size_t>(B_ + 1), {});
    recovered_[1].assign(static_cast<std::size_t>(B_ + 1), {});
    records_.resize(static_cast<std::size_t>(B_));
    std::array<BitVec, 2> pending_fb = {BitVec(q), BitVec(q)};
    for (int b = 1; b <= B_; ++b) {
      BitVec x1(q), x2(q);
      for (int l = 0; l < q; ++l) {
        x1.set(l, tx_bit(0, b, l));
        x2.set(l, tx_bit(1, b, l));
      }
      auto [y1, y2] = channel_output(x1, x2, g_);
      auto& rec = records_[static_cast<std::size_t>(b - 1)];
      rec.tx1 = x1;
      rec.tx2 = x2;
      rec.y1 = y1;
      rec.y2 = y2;
      rec.fb1 = pending_fb[0];
      rec.fb2 = pending_fb[1];

      // Receivers emit their feedback; each transmitter cancels its own
      // contribution on the fed-back levels and keeps the other user's coop
      // bits for relaying in block b+2.
      for (int rx = 0; rx < 2; ++rx) {
        const BitVec& y = rx == 0 ? y1 : y2;
        BitVec fb(q);
        for (int v : s_.feedback_levels[rx]) fb.set(v, y.get(v));
        pending_fb[rx] = fb;
        const int other = 1 - rx;
        const int cross = cross_gain_into(g_, rx);
        const int direct = direct_gain(g_, rx);
        const auto& coops = coop_levels_[other];
        std::vector<std::uint8_t> got(coops.size(), 0);
        for (std::size_t i = 0; i < coops.size(); ++i) {
          const int v = coops[i] + (q - cross);
          const int own_level = v - (q - direct);
          const std::uint8_t own = own_level >= 0 ? tx_bit(rx, b, own_level) : 0;
          got[i] = static_cast<std::uint8_t>(y.get(v) ^ own);
          if (got[i] != tx_bit(other, b, coops[i]))
            throw SchemeError("feedback recovery mismatch: coop bit not cancellable");
        }
        recovered_[rx][static_cast<std::size_t>(b)] = std::move(got);
      }
    }
  }

  void decode() {
    const int q = s_.q;
    struct Equation {
      std::uint8_t rhs;
      Symbol a, b;
    };
    // solved[rx][user]: flat (block, fresh_idx) -> -1 unknown, else the bit
    std::array<std::array<std::vector<std::int8_t>, 2>, 2> solved;
    for (int rx = 0; rx < 2; ++rx)
      for (int u = 0; u < 2; ++u)
        solved[rx][u].assign(static_cast<std::size_t>(B_) * fresh_[u].size(), -1);
    auto slot = [&](int rx, const Symbol& v) -> std::int8_t& {
      return solved[rx][v.user][static_cast<std::size_t>(v.block - 1) * fresh_[v.user].size() +
                                static_cast<std::size_t>(v.fresh_idx)];
    };

    for (int rx = 0; rx < 2; ++rx) {
      std::vector<Equation> eqs;
      eqs.reserve(static_cast<std::size_t>(B_) * q);
      const int direct = direct_gain(g_, rx);
      const int cross = cross_gain_into(g_, rx);
      for (int b = 1; b <= B_; ++b) {
        const BitVec& y = rx == 0 ? records_[static_cast<std::size_t>(b - 1)].y1
                                  : records_[static_cast<std::size_t>(b - 1)].y2;
        for (int v = 0; v < q; ++v) {
          Equation e;
          e.rhs = y.get(v);
          const int own_level = v - (q - direct);
          const int cross_level = v - (q - cross);
          e.a = own_level >= 0 ? symbol(rx, b, own_level) : Symbol{};
          e.b = cross_level >= 0 ? symbol(1 - rx, b, cross_level) : Symbol{};
          eqs.push_back(e);
        }
      }
      bool progress = true;
      while (progress) {
        progress = false;
        for (const auto& e : eqs) {
          int unknowns = 0;
          const Symbol* open = nullptr;
          std::uint8_t acc = e.rhs;
          for (const Symbol* t : {&e.a, &e.b}) {
            if (t->known) {
              acc ^= t->value;
            } else {
              const std::int8_t s = slot(rx, *t);
              if (s >= 0) {
                acc ^= static_cast<std::uint8_t>(s);
              } else {
                ++unknowns;
                open = t;
              }
            }
          }
          if (unknowns == 1) {
            slot(rx, *open) = static_cast<std::int8_t>(acc);
            progress = true;
          }
        }
      }
    }

    // Each receiver must have resolved every fresh bit of its own user.
    bool all_match = true;
    long long correct[2] = {0, 0};
    for (int u = 0; u < 2; ++u) {
      for (int b = 1; b <= B_ - 2; ++b) {
        for (std::size_t i = 0; i < fresh_[u].size(); ++i) {
          const std::int8_t got = solved[u][u][static_cast<std::size_t>(b - 1) * fresh_[u].size() + i];
          if (got < 0)
            throw DecodingAmbiguityError("level superposition left unresolved at receiver " +
                                         std::to_string(u + 1) + ", block " + std::to_string(b));
          if (static_cast<std::uint8_t>(got) == msg_at(u, b, i))
            ++correct[u];
          else
            all_match = false;
        }
      }
    }
    for (int b = 1; b <= B_; ++b) {
      auto& rec = records_[static_cast<std::size_t>(b - 1)];
      for (int u = 0; u < 2; ++u) {
        auto& out = u == 0 ? rec.dec1 : rec.dec2;
        out.clear();
        if (b <= B_ - 2)
          for (std::size_t i = 0; i < fresh_[u].size(); ++i)
            out.push_back(static_cast<std::uint8_t>(
                solved[u][u][static_cast<std::size_t>(b - 1) * fresh_[u].size() + i]));
      }
    }
    decode_ok_ = all_match;
    achieved_ = {Rational(correct[0], B_), Rational(correct[1], B_)};
  }

  LdicParams g_;
  SchemeConfig s_;
  int B_;
  std::array<std::vector<int>, 2> fresh_, coop_levels_, relay_levels_;
  std::array<std::vector<int>, 2> fresh_index_, relay_index_;
  std::array<std::vector<std::uint8_t>, 2> msg_;
  std::array<std::vector<std::vector<std::uint8_t>>, 2> recovered_;  // [rx][block] other user's coop bits
  std::vector<BlockRecord> records_;
  RatePair<Rational> achieved_;
  bool decode_ok_ = false;
};

}  // namespace detail

// Runs B blocks of the scheme, one vector per block. Fresh bits are drawn
// i.i.d. uniform from the seed; zero_messages forces the all-zero message.
inline SimResult simulate(const LdicParams& g, const SchemeConfig& scheme, int blocks,
                          std::uint64_t seed, bool zero_messages = false) {
  detail::Simulation sim(g, scheme, blocks, seed, zero_messages);
  return sim.run();
}

inline SimResult run_motivating_example(int blocks, std::uint64_t seed = 1) {
  return simulate(motivating_params(), motivating_scheme(), blocks, seed);
}

inline std::string SimResult::trace_text() const {
  std::string out;
  auto bits = [](const std::vector<std::uint8_t>& v) {
    if (v.empty()) return std::string("-");
    std::string s;
    for (auto b : v) s.push_back(static_cast<char>('0' + b));
    return s;
  };
  for (std::size_t b = 0; b < trace.size(); ++b) {
    const auto& r = trace[b];
    out += "block " + std::to_string(b + 1) + "\n";
    out += "  tx1 " + r.tx1.str() + "  tx2 " + r.tx2.str() + "\n";
    out += "  y1  " + r.y1.str() + "  y2  " + r.y2.str() + "\n";
    out += "  fb1 " + r.fb1.str() + "  fb2 " + r.fb2.str() + "\n";
    out += "  dec1 " + bits(r.dec1) + "  dec2 " + bits(r.dec2) + "\n";
  }
  return out;
}

}  // namespace icfb
