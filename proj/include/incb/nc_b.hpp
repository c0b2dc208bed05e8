#pragma once

// Type-B non-crossing partitions: symmetric non-crossing partitions of
// {1..n, -1..-n} in the linear order 1 < ... < n < -1 < ... < -n, with the
// zero-block / Abs-fibration structure and the zero-block Moebius bridge.

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "incb/errors.hpp"
#include "incb/nc_a.hpp"

namespace incb {

inline constexpr int kMaxNcbN = 6;

// position of a signed element along the order 1 < ... < n < -1 < ... < -n,
// 1-based so that partitions of positions live in NC(2n)
inline int bpos(int e, int n) { return e > 0 ? e : n - e; }
inline int bpos_inv(int pos, int n) { return pos <= n ? pos : -(pos - n); }

struct BPartition {
  int n = 0;
  std::vector<std::vector<int>> blocks;  // elements sorted by bpos; blocks by first pos

  friend bool operator==(const BPartition& a, const BPartition& b) {
    return a.n == b.n && a.blocks == b.blocks;
  }
  friend bool operator!=(const BPartition& a, const BPartition& b) { return !(a == b); }
  friend bool operator<(const BPartition& a, const BPartition& b);
};

inline Partition to_position_partition(const BPartition& t) {
  std::vector<std::vector<int>> blocks;
  for (const auto& b : t.blocks) {
    std::vector<int> pb;
    for (int e : b) pb.push_back(bpos(e, t.n));
    blocks.push_back(std::move(pb));
  }
  return make_partition(2 * t.n, std::move(blocks));
}

inline BPartition from_position_partition(const Partition& p) {
  if (p.n % 2 != 0) throw DimensionMismatch("from_position_partition: odd point count");
  int n = p.n / 2;
  std::vector<std::vector<int>> blocks;
  for (const auto& b : p.blocks) {
    std::vector<int> sb;
    for (int pos : b) sb.push_back(bpos_inv(pos, n));
    blocks.push_back(std::move(sb));
  }
  return BPartition{n, std::move(blocks)};
}

inline bool operator<(const BPartition& a, const BPartition& b) {
  if (a.n != b.n) return a.n < b.n;
  return to_position_partition(a).blocks < to_position_partition(b).blocks;
}

inline bool is_symmetric(const BPartition& t) {
  std::set<std::set<int>> blockset;
  for (const auto& b : t.blocks) blockset.insert(std::set<int>(b.begin(), b.end()));
  for (const auto& b : blockset) {
    std::set<int> neg;
    for (int e : b) neg.insert(-e);
    if (!blockset.count(neg)) return false;
  }
  return true;
}

inline BPartition make_bpartition(int n, std::vector<std::vector<int>> blocks) {
  for (auto& b : blocks)
    std::sort(b.begin(), b.end(), [n](int a, int c) { return bpos(a, n) < bpos(c, n); });
  std::sort(blocks.begin(), blocks.end(), [n](const auto& a, const auto& c) {
    return bpos(a.front(), n) < bpos(c.front(), n);
  });
  BPartition t{n, std::move(blocks)};
  Partition check = to_position_partition(t);  // validates coverage of +/-1..n
  if (has_crossing(check.blocks))
    throw ParseError("make_bpartition: crossing in the order 1<...<n<-1<...<-n");
  if (!is_symmetric(t)) throw ParseError("make_bpartition: not closed under V -> -V");
  int zero_blocks = 0;
  for (const auto& b : t.blocks) {
    std::set<int> s(b.begin(), b.end()), neg;
    for (int e : b) neg.insert(-e);
    if (s == neg) ++zero_blocks;
  }
  if (zero_blocks > 1) throw ParseError("make_bpartition: more than one zero-block");
  return t;
}

inline std::optional<std::vector<int>> zero_block(const BPartition& t) {
  for (const auto& b : t.blocks) {
    std::set<int> s(b.begin(), b.end()), neg;
    for (int e : b) neg.insert(-e);
    if (s == neg) return b;
  }
  return std::nullopt;
}

inline Partition abs_map(const BPartition& t) {
  std::set<std::set<int>> absblocks;
  for (const auto& b : t.blocks) {
    std::set<int> a;
    for (int e : b) a.insert(e > 0 ? e : -e);
    absblocks.insert(std::move(a));
  }
  std::vector<std::vector<int>> blocks;
  for (const auto& a : absblocks) blocks.emplace_back(a.begin(), a.end());
  return make_partition(t.n, std::move(blocks));
}

inline BPartition full_bpartition(int n) {
  std::vector<int> b;
  for (int i = 1; i <= n; ++i) b.push_back(i);
  for (int i = 1; i <= n; ++i) b.push_back(-i);
  return make_bpartition(n, {b});
}

inline BPartition discrete_bpartition(int n) {
  std::vector<std::vector<int>> blocks;
  for (int i = 1; i <= n; ++i) blocks.push_back({i});
  for (int i = 1; i <= n; ++i) blocks.push_back({-i});
  return make_bpartition(n, std::move(blocks));
}

inline const std::vector<BPartition>& enumerate_ncb(int n) {
  if (n < 1 || n > kMaxNcbN) throw SizeLimit("enumerate_ncb: n must be in 1..6");
  static std::mutex mu;
  static std::map<int, std::vector<BPartition>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<BPartition> result;
  for (const auto& p : enumerate_nc(2 * n)) {
    BPartition t = from_position_partition(p);
    if (is_symmetric(t)) result.push_back(std::move(t));
  }
  return cache.emplace(n, std::move(result)).first->second;
}

inline std::vector<BPartition> enumerate_ncz(int n) {
  std::vector<BPartition> result;
  for (const auto& t : enumerate_ncb(n))
    if (zero_block(t)) result.push_back(t);
  return result;
}

namespace detail {

// Backtracking sign assignment: the optional zero-block choice is fixed as
// V u (-V); every other block W of p contributes a signed copy S (one sign
// per element) together with its mirror -S.  Partial assignments are pruned
// by crossing checks against already placed blocks.
inline void lift_search(const Partition& p, const std::optional<std::vector<int>>& zero_choice,
                        std::size_t next_block, std::vector<std::vector<int>>& placed,
                        std::vector<BPartition>& out) {
  int n = p.n;
  auto crosses_placed = [&](const std::vector<int>& cand) {
    std::vector<int> cpos;
    for (int e : cand) cpos.push_back(bpos(e, n));
    std::sort(cpos.begin(), cpos.end());
    for (const auto& b : placed) {
      std::vector<int> bp;
      for (int e : b) bp.push_back(bpos(e, n));
      std::sort(bp.begin(), bp.end());
      if (blocks_cross(cpos, bp)) return true;
    }
    return false;
  };
  if (next_block == p.blocks.size()) {
    out.push_back(make_bpartition(n, placed));
    return;
  }
  const std::vector<int>& w = p.blocks[next_block];
  if (zero_choice && w == *zero_choice) {
    std::vector<int> z;
    for (int e : w) z.push_back(e);
    for (int e : w) z.push_back(-e);
    if (!crosses_placed(z)) {
      placed.push_back(z);
      lift_search(p, zero_choice, next_block + 1, placed, out);
      placed.pop_back();
    }
    return;
  }
  // the pair {S, -S} is unordered, so the minimum element's sign is fixed +
  std::size_t m = w.size();
  for (std::uint32_t mask = 0; mask < (1u << (m - 1)); ++mask) {
    std::vector<int> s{w[0]}, neg{-w[0]};
    for (std::size_t i = 1; i < m; ++i) {
      int sign = (mask & (1u << (i - 1))) ? -1 : 1;
      s.push_back(sign * w[i]);
      neg.push_back(-sign * w[i]);
    }
    std::vector<int> spos, negpos;
    for (int e : s) spos.push_back(bpos(e, n));
    for (int e : neg) negpos.push_back(bpos(e, n));
    std::sort(spos.begin(), spos.end());
    std::sort(negpos.begin(), negpos.end());
    if (blocks_cross(spos, negpos)) continue;
    if (crosses_placed(s) || crosses_placed(neg)) continue;
    placed.push_back(s);
    placed.push_back(neg);
    lift_search(p, zero_choice, next_block + 1, placed, out);
    placed.pop_back();
    placed.pop_back();
  }
}

}  // namespace detail

inline BPartition zero_block_lift(const Partition& p, const std::vector<int>& v) {
  std::vector<int> vs = v;
  std::sort(vs.begin(), vs.end());
  bool found = false;
  for (const auto& b : p.blocks)
    if (b == vs) found = true;
  if (!found) throw BlockNotInPartition("zero_block_lift: v is not a block of p");
  std::vector<std::vector<int>> placed;
  std::vector<BPartition> out;
  detail::lift_search(p, vs, 0, placed, out);
  if (out.size() != 1)
    throw std::logic_error("zero_block_lift: expected a unique lift, found " +
                           std::to_string(out.size()));
  return out.front();
}

inline std::vector<BPartition> fiber(const Partition& p) {
  std::vector<BPartition> result;
  for (const auto& v : p.blocks) result.push_back(zero_block_lift(p, v));
  std::vector<std::vector<int>> placed;
  std::vector<BPartition> plain;
  detail::lift_search(p, std::nullopt, 0, placed, plain);
  std::vector<BPartition> dedup;
  for (auto& t : plain) {
    if (zero_block(t)) continue;  // defensive; signs never produce Z = -Z here
    if (std::find(dedup.begin(), dedup.end(), t) == dedup.end()) dedup.push_back(std::move(t));
  }
  std::sort(dedup.begin(), dedup.end());
  for (auto& t : dedup) result.push_back(std::move(t));
  return result;
}

inline BPartition kreweras_b(const BPartition& t) {
  BPartition k = from_position_partition(kreweras(to_position_partition(t)));
  if (!is_symmetric(k)) throw std::logic_error("kreweras_b: complement lost symmetry");
  return make_bpartition(k.n, k.blocks);
}

inline bool leq_b(const BPartition& s, const BPartition& t) {
  if (s.n != t.n) throw DimensionMismatch("leq_b: different n");
  return leq(to_position_partition(s), to_position_partition(t));
}

inline long long mobius_b_zero(const BPartition& s, const BPartition& t) {
  if (!zero_block(s) || !zero_block(t))
    throw NoZeroBlock("mobius_b_zero: both arguments must have a zero-block");
  if (!leq_b(s, t)) throw NotComparable("mobius_b_zero: s is not below t");
  return mobius_a(abs_map(s), abs_map(t));
}

inline std::string to_text(const BPartition& t) {
  std::ostringstream os;
  for (const auto& b : t.blocks) {
    os << '{';
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) os << ',';
      os << b[i];
    }
    os << '}';
  }
  return os.str();
}

inline BPartition parse_bpartition(const std::string& text) {
  auto blocks = detail::parse_block_text(text);
  int n = 0;
  for (const auto& b : blocks)
    for (int e : b) n = std::max(n, std::abs(e));
  return make_bpartition(n, std::move(blocks));
}

}  // namespace incb
