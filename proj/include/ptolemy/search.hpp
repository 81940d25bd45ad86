#ifndef PTOLEMY_SEARCH_HPP
#define PTOLEMY_SEARCH_HPP

#include <optional>
#include <utility>
#include <vector>

#include "ptolemy/rewrite.hpp"
#include "ptolemy/word.hpp"

namespace ptolemy {

struct SearchLimits {
  size_t node_budget = 1000000;  // nodes expanded
  int max_growth = 2;            // letters above the start length
  int elaborate_depth = 8;       // base-rule depth when expanding a macro move
  bool exact_tail = true;        // goal matching also compares the tail
};

SearchLimits default_limits();  // honors the PTOLEMY_BUDGET env variable

struct NormalForm {
  long long zeta_exp = 0;
  DecoratedPermutation tail;
};

struct SearchOutcome {
  bool found = false;
  OperatorWord final_word;
  std::vector<Step> steps;  // kernel steps replaying start -> final_word
  size_t nodes = 0;
};

// Bounded best-first reduction to the letter-free scalar-and-tail form.
// Deterministic given (word, limits).
std::optional<NormalForm> normalize_bounded(const OperatorWord& w, const SearchLimits& limits,
                                            std::vector<Step>* steps_out = nullptr);

// Targeted search for a kernel-step chain from start to goal (words compared
// modulo letter presentation and commutation).
SearchOutcome derive_steps(const OperatorWord& start, const OperatorWord& goal,
                           const SearchLimits& limits);

// derive_steps through a sequence of intermediate goals; each leg must
// succeed. Returns the concatenated kernel chain.
SearchOutcome derive_via(const OperatorWord& start, const std::vector<OperatorWord>& waypoints,
                         const SearchLimits& limits);

}  // namespace ptolemy

#endif
