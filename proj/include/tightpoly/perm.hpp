#ifndef TIGHTPOLY_PERM_HPP
#define TIGHTPOLY_PERM_HPP

#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "tightpoly/errors.hpp"

namespace tightpoly {

using Point = std::uint32_t;

/// A permutation of {0, ..., degree-1} stored as its image array. Acts on the
/// right: point^(a*b) = (point^a)^b.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<Point> images) : images_(std::move(images)) {}

  static Perm identity(std::size_t degree) {
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    return Perm(std::move(img));
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Perm inverse() const {
    std::vector<Point> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
    return Perm(std::move(inv));
  }

  /// Apply *this, then other.
  friend Perm operator*(const Perm& a, const Perm& b) {
    std::vector<Point> out(a.images_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = b.images_[a.images_[i]];
    return Perm(std::move(out));
  }

  Perm pow(long long k) const {
    Perm base = k < 0 ? inverse() : *this;
    unsigned long long e = static_cast<unsigned long long>(k < 0 ? -k : k);
    Perm acc = identity(degree());
    while (e) {
      if (e & 1ULL) acc = acc * base;
      base = base * base;
      e >>= 1ULL;
    }
    return acc;
  }

  /// Multiplicative order: lcm of cycle lengths.
  long long order() const {
    std::vector<bool> seen(images_.size(), false);
    long long result = 1;
    for (std::size_t s = 0; s < images_.size(); ++s) {
      if (seen[s]) continue;
      long long len = 0;
      for (std::size_t x = s; !seen[x]; x = images_[x]) {
        seen[x] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<Point> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept {
    // FNV-1a over at most 64 evenly spaced images; equality settles the rest.
    const auto img = p.images();
    const std::size_t step = img.size() / 64 + 1;
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < img.size(); i += step) {
      h ^= img[i];
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Permutation images of a presentation's generators.
struct PermRep {
  std::size_t degree = 0;
  std::vector<Perm> gens;

  int ngens() const noexcept { return static_cast<int>(gens.size()); }
  friend bool operator==(const PermRep&, const PermRep&) = default;
};

}  // namespace tightpoly

#endif  // TIGHTPOLY_PERM_HPP
