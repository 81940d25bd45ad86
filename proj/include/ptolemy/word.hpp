#ifndef PTOLEMY_WORD_HPP
#define PTOLEMY_WORD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptolemy/dperm.hpp"

namespace ptolemy {

// One T-matrix factor acting on two distinct decorated slots.
struct Letter {
  bool bar = false;  // true = inverse factor
  DecoratedIndex a;
  DecoratedIndex b;

  Letter() = default;
  Letter(bool bar_, DecoratedIndex a_, DecoratedIndex b_) : bar(bar_), a(a_), b(b_) {
    if (a.label == b.label) throw Error("BadLabel", "letter needs distinct labels");
  }

  Letter inverse() const { return Letter(!bar, a, b); }
  // The other presentation under the symmetry T_ab = T_{b^ av}.
  Letter mirrored() const {
    return Letter(bar, DecoratedIndex(b.label, b.deco + 1), DecoratedIndex(a.label, a.deco - 1));
  }
  // Presentation-independent canonical form (the lexicographically smaller
  // of the two symmetric presentations).
  Letter canonical() const {
    Letter m = mirrored();
    return (*this <= m) ? *this : m;
  }
  bool same_factor(const Letter& o) const {  // equal modulo the symmetry
    return canonical() == o.canonical();
  }
  uint32_t support() const { return (1u << a.label) | (1u << b.label); }

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// Scalar exponent group for the central generator: order 0 means infinite.
struct ScalarGroup {
  unsigned long long order = 0;
  long long reduce(long long e) const {
    if (order == 0) return e;
    long long m = static_cast<long long>(order);
    return ((e % m) + m) % m;
  }
};

// Normal-form word: central exponent, T/T-bar letters, permutation tail.
class OperatorWord {
public:
  OperatorWord() = default;
  explicit OperatorWord(int size)
      : size_(size), tail_(DecoratedPermutation::identity(size)) {}
  OperatorWord(int size, long long zexp, std::vector<Letter> letters, DecoratedPermutation tail)
      : size_(size), zeta_(zexp), letters_(std::move(letters)), tail_(std::move(tail)) {
    check_labels();
  }

  static OperatorWord identity(int size) { return OperatorWord(size); }
  static OperatorWord scalar(int size, long long e) {
    OperatorWord w(size);
    w.zeta_ = e;
    return w;
  }
  static OperatorWord letter(int size, const Letter& l) {
    OperatorWord w(size);
    w.letters_.push_back(l);
    w.check_labels();
    return w;
  }
  static OperatorWord perm(const DecoratedPermutation& p) {
    OperatorWord w(p.size());
    w.tail_ = p;
    return w;
  }

  int size() const { return size_; }
  long long zeta_exp() const { return zeta_; }
  const std::vector<Letter>& letters() const { return letters_; }
  const DecoratedPermutation& tail() const { return tail_; }
  int length() const { return static_cast<int>(letters_.size()); }

  void set_zeta(long long e) { zeta_ = e; }
  void add_zeta(long long e) { zeta_ += e; }
  std::vector<Letter>& mutable_letters() { return letters_; }
  DecoratedPermutation& mutable_tail() { return tail_; }

  OperatorWord multiply(const OperatorWord& rhs) const;
  OperatorWord inverse() const;
  // u * w * u^-1
  OperatorWord conjugate_by(const OperatorWord& u) const;
  // Applies p to every letter index and conjugates the tail: p w p^-1.
  OperatorWord relabel(const DecoratedPermutation& p) const;
  // Reduces the scalar exponent into the given group.
  OperatorWord reduce_scalar(const ScalarGroup& g) const;

  // Structural equality (presentation-sensitive).
  friend bool operator==(const OperatorWord&, const OperatorWord&) = default;

  // Commutation-and-presentation-insensitive key: letters in canonical
  // presentation, ordered by a Foata-style normal form.
  std::vector<Letter> canonical_letters() const;
  bool equivalent(const OperatorWord& rhs) const;

  std::string str() const;
  static OperatorWord parse(int size, const std::string& text);

private:
  void check_labels() const;

  int size_ = 0;
  long long zeta_ = 0;
  std::vector<Letter> letters_;
  DecoratedPermutation tail_;
};

std::string show(const Letter& l);
// Parses a single letter like "T[1,3^]" or "T'[8v,5^]".
Letter parse_letter(const std::string& text);

}  // namespace ptolemy

#endif
