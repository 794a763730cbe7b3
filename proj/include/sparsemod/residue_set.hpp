#pragma once

#include <bit>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "sparsemod/numtheory.hpp"

namespace sparsemod {

/// Subset of F_p stored as a bit-vector of length p.
class ResidueSet {
 public:
  static constexpr unsigned kWordBits = 64;

  explicit ResidueSet(u64 p) : p_(p), words_((p + kWordBits - 1) / kWordBits, 0) {
    require(p >= 2, "residue set modulus must be at least 2");
  }

  ResidueSet(u64 p, std::initializer_list<u64> elems) : ResidueSet(p) {
    for (u64 e : elems) insert(e % p);
  }

  template <typename Range>
  static ResidueSet of(u64 p, const Range& elems) {
    ResidueSet s(p);
    for (u64 e : elems) s.insert(e % p);
    return s;
  }

  static ResidueSet full(u64 p) {
    ResidueSet s(p);
    for (auto& w : s.words_) w = ~u64{0};
    s.mask_tail();
    return s;
  }

  u64 modulus() const { return p_; }

  bool contains(u64 r) const { return (words_[r / kWordBits] >> (r % kWordBits)) & 1; }

  void insert(u64 r) {
    require(r < p_, "residue out of range");
    words_[r / kWordBits] |= u64{1} << (r % kWordBits);
  }

  u64 size() const {
    u64 n = 0;
    for (u64 w : words_) n += static_cast<u64>(std::popcount(w));
    return n;
  }

  bool empty() const { return size() == 0; }
  bool is_full() const { return size() == p_; }

  std::vector<u64> elements() const {
    std::vector<u64> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      u64 w = words_[i];
      while (w) {
        out.push_back(i * kWordBits + static_cast<u64>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  std::optional<u64> first_missing() const {
    for (u64 r = 0; r < p_; ++r) {
      if (!contains(r)) return r;
    }
    return std::nullopt;
  }

  ResidueSet& operator|=(const ResidueSet& other) {
    require(other.p_ == p_, "residue sets over different moduli");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  /// this |= (src + shift), i.e. sets bit (a + shift) mod p for every a in src.
  /// A cyclic rotation is a left shift by `shift` plus a right shift by
  /// p - shift, each done word-wise with carries across word boundaries.
  void or_rotated(const ResidueSet& src, u64 shift) {
    require(src.p_ == p_, "residue sets over different moduli");
    shift %= p_;
    if (shift == 0) {
      *this |= src;
      return;
    }
    or_shift_left(src.words_, shift);
    or_shift_right(src.words_, p_ - shift);
    mask_tail();
  }

  ResidueSet rotated(u64 shift) const {
    ResidueSet out(p_);
    out.or_rotated(*this, shift);
    return out;
  }

  friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

 private:
  void mask_tail() {
    const u64 rem = p_ % kWordBits;
    if (rem) words_.back() &= (u64{1} << rem) - 1;
  }

  void or_shift_left(const std::vector<u64>& src, u64 shift) {
    const std::size_t ws = shift / kWordBits;
    const unsigned bs = shift % kWordBits;
    const std::size_t n = words_.size();
    for (std::size_t j = n; j-- > ws;) {
      u64 w = src[j - ws] << bs;
      if (bs && j - ws >= 1) w |= src[j - ws - 1] >> (kWordBits - bs);
      words_[j] |= w;
    }
  }

  void or_shift_right(const std::vector<u64>& src, u64 shift) {
    const std::size_t ws = shift / kWordBits;
    const unsigned bs = shift % kWordBits;
    const std::size_t n = words_.size();
    for (std::size_t j = 0; j + ws < n; ++j) {
      u64 w = src[j + ws] >> bs;
      if (bs && j + ws + 1 < n) w |= src[j + ws + 1] << (kWordBits - bs);
      words_[j] |= w;
    }
  }

  u64 p_;
  std::vector<u64> words_;
};

}  // namespace sparsemod
