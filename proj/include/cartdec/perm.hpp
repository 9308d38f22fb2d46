#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "cartdec/error.hpp"

namespace cartdec {

// A permutation of {0,...,degree-1}, stored as its image array.
// Composition is left-to-right: (a * b) maps i to b[a[i]], matching the
// convention that permutations act on the right.
class Perm {
 public:
  Perm() = default;

  static Perm identity(int degree) {
    Perm p;
    p.img_.resize(degree);
    std::iota(p.img_.begin(), p.img_.end(), 0);
    return p;
  }

  static Perm from_images(std::vector<std::uint16_t> images) {
    Perm p;
    p.img_ = std::move(images);
    if (!p.valid()) fail(ErrorKind::InvalidPermutation, "image array is not a bijection");
    return p;
  }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator[](int pt) const { return img_[pt]; }
  const std::vector<std::uint16_t>& images() const { return img_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  friend Perm operator*(const Perm& a, const Perm& b) {
    Perm c;
    c.img_.resize(a.img_.size());
    for (std::size_t i = 0; i < a.img_.size(); ++i) c.img_[i] = b.img_[a.img_[i]];
    return c;
  }

  Perm inverse() const {
    Perm p;
    p.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) p.img_[img_[i]] = static_cast<std::uint16_t>(i);
    return p;
  }

  Perm conjugated_by(const Perm& g) const { return g.inverse() * (*this) * g; }

  friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
  friend std::strong_ordering operator<=>(const Perm& a, const Perm& b) {
    return a.img_ <=> b.img_;
  }

  int order() const {
    Perm p = *this;
    Perm e = identity(degree());
    int n = 1;
    while (!(p == e)) {
      p = p * (*this);
      ++n;
    }
    return n;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (std::uint16_t v : img_) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }

  // Cycle notation with 0-based points, fixed points omitted, identity "()".
  std::string to_cycles() const {
    std::string out;
    std::vector<bool> seen(img_.size(), false);
    for (int i = 0; i < degree(); ++i) {
      if (seen[i] || img_[i] == i) continue;
      out += '(';
      int j = i;
      bool first = true;
      do {
        if (!first) out += ' ';
        out += std::to_string(j);
        seen[j] = true;
        j = img_[j];
        first = false;
      } while (j != i);
      out += ')';
    }
    if (out.empty()) out = "()";
    return out;
  }

  static Perm parse_cycles(const std::string& text, int degree) {
    std::vector<std::uint16_t> img(degree);
    std::iota(img.begin(), img.end(), 0);
    std::vector<bool> moved(degree, false);
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    bool any = false;
    while (pos < text.size()) {
      if (text[pos] != '(') fail(ErrorKind::ParseError, "expected '(' in cycle string: " + text);
      ++pos;
      std::vector<int> cyc;
      skip_ws();
      while (pos < text.size() && text[pos] != ')') {
        if (!std::isdigit(static_cast<unsigned char>(text[pos])))
          fail(ErrorKind::ParseError, "expected point index in cycle string: " + text);
        int v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          v = v * 10 + (text[pos] - '0');
          ++pos;
        }
        if (v >= degree) fail(ErrorKind::ParseError, "point out of range in cycle string: " + text);
        cyc.push_back(v);
        skip_ws();
      }
      if (pos >= text.size()) fail(ErrorKind::ParseError, "unterminated cycle in: " + text);
      ++pos;  // ')'
      for (int v : cyc) {
        if (moved[v]) fail(ErrorKind::ParseError, "point repeated in cycle string: " + text);
        moved[v] = true;
      }
      for (std::size_t i = 0; i + 1 < cyc.size(); ++i) img[cyc[i]] = static_cast<std::uint16_t>(cyc[i + 1]);
      if (cyc.size() >= 2) img[cyc.back()] = static_cast<std::uint16_t>(cyc.front());
      any = true;
      skip_ws();
    }
    if (!any) fail(ErrorKind::ParseError, "empty cycle string (identity is \"()\")");
    return from_images(std::move(img));
  }

 private:
  bool valid() const {
    std::vector<bool> hit(img_.size(), false);
    for (std::uint16_t v : img_) {
      if (v >= img_.size() || hit[v]) return false;
      hit[v] = true;
    }
    return !img_.empty();
  }

  std::vector<std::uint16_t> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const { return p.hash(); }
};

}  // namespace cartdec
