#pragma once

// Type-A non-crossing partition lattice NC(n): enumeration, reverse-refinement
// order, meet/join, Kreweras complementation, Moebius function, block helpers.

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "incb/errors.hpp"

namespace incb {

inline constexpr int kMaxNcN = 12;

struct Partition {
  int n = 0;
  std::vector<std::vector<int>> blocks;  // canonical: elements ascending, blocks by min

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.n == b.n && a.blocks == b.blocks;
  }
  friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
  friend bool operator<(const Partition& a, const Partition& b) {
    if (a.n != b.n) return a.n < b.n;
    return a.blocks < b.blocks;
  }
};

inline void canonicalize_blocks(std::vector<std::vector<int>>& blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return a.front() < b.front();
            });
}

inline Partition make_partition(int n, std::vector<std::vector<int>> blocks) {
  canonicalize_blocks(blocks);
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  int count = 0;
  for (const auto& b : blocks) {
    if (b.empty()) throw ParseError("make_partition: empty block");
    for (int e : b) {
      if (e < 1 || e > n || seen[static_cast<std::size_t>(e)])
        throw ParseError("make_partition: elements must cover 1..n exactly once");
      seen[static_cast<std::size_t>(e)] = 1;
      ++count;
    }
  }
  if (count != n) throw ParseError("make_partition: elements must cover 1..n exactly once");
  return Partition{n, std::move(blocks)};
}

inline Partition full_partition(int n) {
  std::vector<int> b(static_cast<std::size_t>(n));
  std::iota(b.begin(), b.end(), 1);
  return Partition{n, {b}};
}

inline Partition discrete_partition(int n) {
  std::vector<std::vector<int>> blocks;
  for (int i = 1; i <= n; ++i) blocks.push_back({i});
  return Partition{n, std::move(blocks)};
}

// block index per element, 0-based block ids in canonical order
inline std::vector<int> block_index(const Partition& p) {
  std::vector<int> idx(static_cast<std::size_t>(p.n) + 1, -1);
  for (std::size_t b = 0; b < p.blocks.size(); ++b)
    for (int e : p.blocks[b]) idx[static_cast<std::size_t>(e)] = static_cast<int>(b);
  return idx;
}

// Crossing test for blocks of position indices along a line: blocks A, B cross
// iff positions alternate A,B,A,B somewhere.
inline bool blocks_cross(const std::vector<int>& a, const std::vector<int>& b) {
  // merge-walk; a and b sorted ascending by position
  std::size_t i = 0, j = 0;
  int switches = 0;
  int last = -1;  // 0 = from a, 1 = from b
  while (i < a.size() || j < b.size()) {
    int cur;
    if (j >= b.size() || (i < a.size() && a[i] < b[j])) {
      cur = 0;
      ++i;
    } else {
      cur = 1;
      ++j;
    }
    if (cur != last) {
      ++switches;
      last = cur;
    }
  }
  return switches >= 4;
}

inline bool has_crossing(const std::vector<std::vector<int>>& blocks) {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      if (blocks_cross(blocks[i], blocks[j])) return true;
  return false;
}

inline bool is_noncrossing(const Partition& p) { return !has_crossing(p.blocks); }

namespace detail {

// Enumerate all non-crossing partitions of the given ascending label list by
// recursing on the block of the smallest label; the chosen block splits the
// rest into independent gaps.
inline void enum_nc_labels(const std::vector<int>& labels,
                           std::vector<std::vector<std::vector<int>>>& out) {
  if (labels.empty()) {
    out.push_back({});
    return;
  }
  std::size_t m = labels.size() - 1;  // candidates after the first label
  std::vector<int> rest(labels.begin() + 1, labels.end());
  // choose the index set of the first block within rest (any subset, since
  // positions are linear the gaps are the maximal runs between chosen indices)
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> first{labels[0]};
    std::vector<std::vector<int>> gaps;
    std::vector<int> gap;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) {
        first.push_back(rest[i]);
        gaps.push_back(gap);
        gap.clear();
      } else {
        gap.push_back(rest[i]);
      }
    }
    gaps.push_back(gap);
    // recursively partition each gap, take the cartesian product
    std::vector<std::vector<std::vector<std::vector<int>>>> gap_parts;
    bool ok = true;
    for (const auto& g : gaps) {
      std::vector<std::vector<std::vector<int>>> parts;
      enum_nc_labels(g, parts);
      if (parts.empty()) ok = false;
      gap_parts.push_back(std::move(parts));
    }
    if (!ok) continue;
    std::vector<std::size_t> pick(gap_parts.size(), 0);
    for (;;) {
      std::vector<std::vector<int>> blocks{first};
      for (std::size_t g = 0; g < gap_parts.size(); ++g)
        for (const auto& b : gap_parts[g][pick[g]]) blocks.push_back(b);
      out.push_back(std::move(blocks));
      std::size_t g = 0;
      while (g < pick.size() && ++pick[g] == gap_parts[g].size()) pick[g++] = 0;
      if (g == pick.size()) break;
    }
  }
}

}  // namespace detail

inline const std::vector<Partition>& enumerate_nc(int n) {
  if (n < 1 || n > kMaxNcN) throw SizeLimit("enumerate_nc: n must be in 1..12");
  static std::mutex mu;
  static std::map<int, std::vector<Partition>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<int> labels(static_cast<std::size_t>(n));
  std::iota(labels.begin(), labels.end(), 1);
  std::vector<std::vector<std::vector<int>>> raw;
  detail::enum_nc_labels(labels, raw);
  std::vector<Partition> result;
  result.reserve(raw.size());
  for (auto& blocks : raw) {
    canonicalize_blocks(blocks);
    result.push_back(Partition{n, std::move(blocks)});
  }
  std::sort(result.begin(), result.end());
  return cache.emplace(n, std::move(result)).first->second;
}

inline long long catalan(int n) {
  long long c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

inline bool leq(const Partition& p, const Partition& q) {
  if (p.n != q.n) throw DimensionMismatch("leq: partitions of different n");
  std::vector<int> qidx = block_index(q);
  for (const auto& b : p.blocks) {
    int target = qidx[static_cast<std::size_t>(b.front())];
    for (int e : b)
      if (qidx[static_cast<std::size_t>(e)] != target) return false;
  }
  return true;
}

inline Partition meet(const Partition& p, const Partition& q) {
  if (p.n != q.n) throw DimensionMismatch("meet: partitions of different n");
  std::vector<int> pidx = block_index(p), qidx = block_index(q);
  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (int e = 1; e <= p.n; ++e)
    groups[{pidx[static_cast<std::size_t>(e)], qidx[static_cast<std::size_t>(e)]}].push_back(e);
  std::vector<std::vector<int>> blocks;
  for (auto& [key, b] : groups) blocks.push_back(std::move(b));
  canonicalize_blocks(blocks);
  return Partition{p.n, std::move(blocks)};
}

// Least upper bound in NC(n): merge the blocks of p and q transitively, then
// repeatedly merge any two crossing blocks until non-crossing.  Each merge is
// forced in any non-crossing upper bound, so the result is the NC join.
inline Partition join(const Partition& p, const Partition& q) {
  if (p.n != q.n) throw DimensionMismatch("join: partitions of different n");
  std::vector<int> parent(static_cast<std::size_t>(p.n) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };
  for (const auto& b : p.blocks)
    for (std::size_t i = 1; i < b.size(); ++i) unite(b[0], b[i]);
  for (const auto& b : q.blocks)
    for (std::size_t i = 1; i < b.size(); ++i) unite(b[0], b[i]);
  for (;;) {
    std::map<int, std::vector<int>> groups;
    for (int e = 1; e <= p.n; ++e) groups[find(e)].push_back(e);
    std::vector<std::vector<int>> blocks;
    for (auto& [r, b] : groups) blocks.push_back(std::move(b));
    canonicalize_blocks(blocks);
    bool merged = false;
    for (std::size_t i = 0; i < blocks.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < blocks.size() && !merged; ++j)
        if (blocks_cross(blocks[i], blocks[j])) {
          unite(blocks[i][0], blocks[j][0]);
          merged = true;
        }
    if (!merged) return Partition{p.n, std::move(blocks)};
  }
}

// Kreweras complement via the permutation picture: with c the long cycle
// (1 2 ... n) and s_p the product of block cycles of p (each block mapped to
// its cycle in increasing order), the blocks of Kr(p) are the cycles of
// s_p^{-1} o c.
inline Partition kreweras(const Partition& p) {
  int n = p.n;
  std::vector<int> sp(static_cast<std::size_t>(n) + 1);
  for (const auto& b : p.blocks)
    for (std::size_t i = 0; i < b.size(); ++i)
      sp[static_cast<std::size_t>(b[i])] = b[(i + 1) % b.size()];
  std::vector<int> sp_inv(static_cast<std::size_t>(n) + 1);
  for (int e = 1; e <= n; ++e) sp_inv[static_cast<std::size_t>(sp[static_cast<std::size_t>(e)])] = e;
  std::vector<int> perm(static_cast<std::size_t>(n) + 1);
  for (int e = 1; e <= n; ++e) {
    int c = (e % n) + 1;
    perm[static_cast<std::size_t>(e)] = sp_inv[static_cast<std::size_t>(c)];
  }
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::vector<int>> blocks;
  for (int e = 1; e <= n; ++e) {
    if (seen[static_cast<std::size_t>(e)]) continue;
    std::vector<int> cyc;
    int x = e;
    while (!seen[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = 1;
      cyc.push_back(x);
      x = perm[static_cast<std::size_t>(x)];
    }
    blocks.push_back(std::move(cyc));
  }
  canonicalize_blocks(blocks);
  return Partition{n, std::move(blocks)};
}

inline Partition cyclic_rotate(const Partition& p) {
  std::vector<std::vector<int>> blocks = p.blocks;
  for (auto& b : blocks)
    for (int& e : b) e = (e % p.n) + 1;
  canonicalize_blocks(blocks);
  return Partition{p.n, std::move(blocks)};
}

inline Partition rainbow_with_center(int n) {
  if (n < 1 || n % 2 == 0) throw EvenInput("rainbow_with_center: n must be odd");
  std::vector<std::vector<int>> blocks;
  for (int i = 1; i <= (n - 1) / 2; ++i) blocks.push_back({i, n + 1 - i});
  blocks.push_back({(n + 1) / 2});
  canonicalize_blocks(blocks);
  return Partition{n, std::move(blocks)};
}

namespace detail {

// mu(p, q) by the incidence-algebra recursion over the interval [p, q],
// memoized on the upper endpoint.
inline long long mobius_interval(const Partition& p, const Partition& q,
                                 const std::vector<Partition>& interval,
                                 std::map<Partition, long long>& memo) {
  if (p == q) return 1;
  auto it = memo.find(q);
  if (it != memo.end()) return it->second;
  long long acc = 0;
  for (const auto& r : interval)
    if (r != q && leq(r, q)) acc += mobius_interval(p, r, interval, memo);
  long long val = -acc;
  memo.emplace(q, val);
  return val;
}

}  // namespace detail

inline long long mobius_a(const Partition& p, const Partition& q) {
  if (p.n != q.n) throw DimensionMismatch("mobius_a: partitions of different n");
  if (!leq(p, q)) throw NotComparable("mobius_a: p is not below q");
  std::vector<Partition> interval;
  for (const auto& r : enumerate_nc(p.n))
    if (leq(p, r) && leq(r, q)) interval.push_back(r);
  std::map<Partition, long long> memo;
  return detail::mobius_interval(p, q, interval, memo);
}

// mu(pi, 1_n) for every pi in NC(n), aligned with enumerate_nc(n).  Computed
// once per n by the dual recursion mu(pi,1) = -sum_{pi < rho <= 1} mu(rho,1).
inline const std::vector<long long>& mobius_to_top(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<long long>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const auto& lattice = enumerate_nc(n);
  std::size_t m = lattice.size();
  std::map<Partition, std::size_t> pos;
  for (std::size_t i = 0; i < m; ++i) pos.emplace(lattice[i], i);
  // order by decreasing number of blocks: coarser partitions processed first
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lattice[a].blocks.size() < lattice[b].blocks.size();
  });
  std::vector<long long> table(m, 0);
  for (std::size_t oi = 0; oi < m; ++oi) {
    std::size_t i = order[oi];
    if (lattice[i].blocks.size() == 1) {
      table[i] = 1;
      continue;
    }
    long long acc = 0;
    // strict coarsenings of lattice[i] have strictly fewer blocks
    for (std::size_t oj = 0; oj < oi; ++oj) {
      std::size_t j = order[oj];
      if (lattice[j].blocks.size() < lattice[i].blocks.size() && leq(lattice[i], lattice[j]))
        acc += table[j];
    }
    table[i] = -acc;
  }
  return cache.emplace(n, std::move(table)).first->second;
}

inline std::string to_text(const Partition& p) {
  std::ostringstream os;
  for (const auto& b : p.blocks) {
    os << '{';
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) os << ',';
      os << b[i];
    }
    os << '}';
  }
  return os.str();
}

namespace detail {

inline std::vector<std::vector<int>> parse_block_text(const std::string& text) {
  std::vector<std::vector<int>> blocks;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '{') throw ParseError("partition text: expected '{'");
    ++i;
    std::vector<int> block;
    std::string num;
    for (; i < text.size() && text[i] != '}'; ++i) {
      char c = text[i];
      if (c == ',') {
        if (num.empty()) throw ParseError("partition text: empty entry");
        block.push_back(std::stoi(num));
        num.clear();
      } else if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
        num += c;
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        throw ParseError("partition text: unexpected character");
      }
    }
    if (i >= text.size()) throw ParseError("partition text: missing '}'");
    ++i;
    if (!num.empty()) block.push_back(std::stoi(num));
    if (block.empty()) throw ParseError("partition text: empty block");
    blocks.push_back(std::move(block));
  }
  if (blocks.empty()) throw ParseError("partition text: no blocks");
  return blocks;
}

}  // namespace detail

inline Partition parse_partition(const std::string& text) {
  auto blocks = detail::parse_block_text(text);
  int n = 0;
  for (const auto& b : blocks)
    for (int e : b) n = std::max(n, e);
  Partition p = make_partition(n, std::move(blocks));
  if (has_crossing(p.blocks)) throw ParseError("parse_partition: partition is crossing");
  return p;
}

// Interval partition of 1..s from class labels (used for groupings of
// consecutive arguments).
struct Grouping {
  int n = 0;
  std::vector<int> labels;  // size n, values 1..k
};

inline Partition interval_partition(const std::vector<int>& group_sizes) {
  std::vector<std::vector<int>> blocks;
  int next = 1;
  for (int sz : group_sizes) {
    std::vector<int> b;
    for (int i = 0; i < sz; ++i) b.push_back(next++);
    blocks.push_back(std::move(b));
  }
  return Partition{next - 1, std::move(blocks)};
}

}  // namespace incb
