#pragma once

#include <cstdint>
#include <vector>

#include "congestcut/errors.hpp"

namespace congestcut {

/// Subset of the vertex ids 0..n-1, stored as a bitset.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : n_(n), bits_((n + 63) / 64, 0) {}

  static VertexSet of(int n, std::initializer_list<int> ids) {
    VertexSet s(n);
    for (int v : ids) s.add(v);
    return s;
  }
  static VertexSet of(int n, const std::vector<int>& ids) {
    VertexSet s(n);
    for (int v : ids) s.add(v);
    return s;
  }
  static VertexSet full(int n) {
    VertexSet s(n);
    for (int v = 0; v < n; ++v) s.add(v);
    return s;
  }

  int universe() const { return n_; }

  bool contains(int v) const {
    return (bits_[v >> 6] >> (v & 63)) & 1ULL;
  }
  void add(int v) {
    if (v < 0 || v >= n_) throw domain_error("vertex id out of range");
    bits_[v >> 6] |= 1ULL << (v & 63);
  }
  void remove(int v) { bits_[v >> 6] &= ~(1ULL << (v & 63)); }

  int size() const {
    int c = 0;
    for (std::uint64_t w : bits_) c += __builtin_popcountll(w);
    return c;
  }
  bool empty() const {
    for (std::uint64_t w : bits_) if (w) return false;
    return true;
  }
  bool is_full() const { return size() == n_; }

  VertexSet complement() const {
    VertexSet r(n_);
    for (int v = 0; v < n_; ++v) if (!contains(v)) r.add(v);
    return r;
  }

  VertexSet sym_diff(const VertexSet& o) const {
    VertexSet r(n_);
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] ^ o.bits_[i];
    return r;
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(size());
    for (int v = 0; v < n_; ++v) if (contains(v)) out.push_back(v);
    return out;
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace congestcut
