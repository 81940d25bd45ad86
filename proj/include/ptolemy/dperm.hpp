#ifndef PTOLEMY_DPERM_HPP
#define PTOLEMY_DPERM_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptolemy {

// Error with a stable machine-readable code ("FixedSide", "NoMatch", ...).
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

// Decoration exponent mod 3: 0 plain, 1 hat, 2 check (check = hat^-1).
inline int dec_norm(int d) { return ((d % 3) + 3) % 3; }

// Tensor-slot index with a Z/3 decoration.
struct DecoratedIndex {
  int label = 1;      // 1-based slot label
  int deco = 0;       // 0 plain, 1 hat, 2 check

  DecoratedIndex() = default;
  DecoratedIndex(int l, int d) : label(l), deco(dec_norm(d)) {}

  friend bool operator==(const DecoratedIndex&, const DecoratedIndex&) = default;
  friend auto operator<=>(const DecoratedIndex&, const DecoratedIndex&) = default;
};

// Renders "3", "3^" (hat), "3v" (check).
std::string show(const DecoratedIndex& ix);

// Element of the wreath-type group (Z/3 decorations with label permutations).
// Represents the operator  prod_k R_k^{deco[k]} . P_perm ; acting on a
// decorated index by  (l, d) -> (perm(l), d + deco[perm(l)]).
class DecoratedPermutation {
public:
  DecoratedPermutation() = default;
  explicit DecoratedPermutation(int size);  // identity on labels 1..size

  static DecoratedPermutation identity(int size) { return DecoratedPermutation(size); }
  // R_k: pure decoration increment at label k.
  static DecoratedPermutation rotation(int size, int label, int amount = 1);
  // P_sigma: pure permutation, sigma given as 1-based image table.
  static DecoratedPermutation permutation(const std::vector<int>& image);
  // Decorated transposition P_(a b a^): maps a -> b and b -> a-with-deco+1.
  // Used by the inversion relation; a and b are decorated indices on
  // distinct labels.
  static DecoratedPermutation inversion_cycle(int size, const DecoratedIndex& a,
                                              const DecoratedIndex& b);

  int size() const { return static_cast<int>(perm_.size()); }
  bool is_identity() const;

  int image(int label) const { return perm_.at(label - 1); }
  int deco_at(int label) const { return deco_.at(label - 1); }

  DecoratedIndex apply(const DecoratedIndex& ix) const;

  DecoratedPermutation compose(const DecoratedPermutation& rhs) const;  // this * rhs
  DecoratedPermutation inverse() const;

  // Multiplies this by R_label^amount on the left (R * this).
  void pre_rotate(int label, int amount);

  friend bool operator==(const DecoratedPermutation&, const DecoratedPermutation&) = default;

  // Paper-style decorated cycle notation: "(1 2 1^)(4 5)".
  std::string cycles() const;

  // Parses cycle notation produced by cycles(); size is the label count.
  static DecoratedPermutation parse_cycles(int size, const std::string& text);

private:
  std::vector<int> perm_;  // perm_[l-1] = image of label l
  std::vector<int> deco_;  // deco_[m-1] = increment applied when mapping onto m
};

}  // namespace ptolemy

#endif
