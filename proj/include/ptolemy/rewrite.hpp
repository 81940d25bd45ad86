#ifndef PTOLEMY_REWRITE_HPP
#define PTOLEMY_REWRITE_HPP

#include <optional>
#include <string>
#include <vector>

#include "ptolemy/word.hpp"

namespace ptolemy {

enum class Rule {
  Pentagon,   // T_xy T_xz T_yz <-> T_yz T_xy
  Inversion,  // T_ab T_ba^ <-> z P_(a b a^)   (and the barred pair)
  Symmetry,   // T_ab <-> T_{b^ av}
  Commute,    // swap adjacent letters with disjoint label support
  Cancel,     // drop/insert an adjacent inverse pair
  PermPush,   // assertion on the tail (no-op on the word value)
  Derived,    // local fragment rewrite justified by bounded base-rule search
};

std::string rule_name(Rule r);

struct Step {
  Rule rule = Rule::Pentagon;
  bool forward = true;
  int pos = 1;  // 1-based letter index of the matched fragment

  // Bindings, used when the match alone does not determine the rewrite:
  //  - Inversion insertions: indices a, b of the inserted pair.
  //  - Cancel insertion: the first inserted letter (second is its inverse).
  //  - PermPush: the asserted tail.
  //  - Derived: take (fragment length), replacement letters, search depth.
  std::optional<DecoratedIndex> bind_a, bind_b;
  std::optional<Letter> bind_letter;
  std::optional<DecoratedPermutation> bind_perm;
  std::vector<Letter> fragment;     // Derived: the matched letters
  std::vector<Letter> replacement;  // Derived: what they become
  int depth = 0;                    // 0 = default derived-search depth

  std::string str() const;
};

// Default depth budget for Derived steps (base rules per fragment).
inline constexpr int kDefaultDerivedDepth = 4;

// Applies one step; throws Error("NoMatch"/"BadPosition"/...) on failure.
OperatorWord apply_step(const OperatorWord& w, const Step& s);

// Verifies fragment_before -> fragment_after by bounded search over the
// scalar-neutral base rules (pentagon, symmetry, commute, cancel). Returns
// the base-rule chain if found. Fragments are letter sequences only.
std::optional<std::vector<Step>> derived_step_verify(const std::vector<Letter>& fragment_before,
                                                     const std::vector<Letter>& fragment_after,
                                                     int depth);

struct Script {
  struct Item {
    std::optional<Step> step;            // a rewrite step...
    std::optional<OperatorWord> assert_word;  // ...or an intermediate assertion
    std::optional<long long> assert_exp;      // ...or an exponent checkpoint
    std::string source;                  // original line, for reporting
  };
  int size = 0;                          // 2N, from the "size" header line
  std::optional<OperatorWord> start;     // optional embedded start word
  std::optional<OperatorWord> expected;  // optional embedded final word
  std::vector<Item> items;

  static Script parse(int size, const std::string& text);
  static Script load(int size, const std::string& path);
  // Loads a self-contained script whose first directive is "size <2N>".
  static Script load_file(const std::string& path);
  std::string str() const;
};

struct ReplayReport {
  bool ok = false;
  int failed_item = -1;          // 0-based index into script items
  std::string message;
  OperatorWord final_word;
  std::vector<long long> exponents;  // running zeta exponent after each item
  int steps_applied = 0;
};

// Replays the script from `start`; checks embedded assertions and, when
// given, final equality with `expected` (structural equality).
ReplayReport check_script(const OperatorWord& start, const Script& script,
                          const std::optional<OperatorWord>& expected);

// Step parsing/printing for script files ("pentagon fwd @3", ...).
Step parse_step(int size, const std::string& line);

}  // namespace ptolemy

#endif
