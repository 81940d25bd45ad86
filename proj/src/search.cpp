#include "ptolemy/search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <map>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>

namespace ptolemy {

SearchLimits default_limits() {
  SearchLimits lim;
  if (const char* env = std::getenv("PTOLEMY_BUDGET")) {
    long long v = std::atoll(env);
    if (v > 0) lim.node_budget = static_cast<size_t>(v);
  }
  return lim;
}

namespace {

// ---------------------------------------------------------------------------
// Macro patterns: every 2<->3 split of the pentagon relator and its inverse.
// Variables 0,1,2 stand for the decorated indices x,y,z.

struct PatLetter {
  bool bar;
  int vi, vj;
};
struct MacroPattern {
  std::vector<PatLetter> lhs, rhs;
};

std::vector<MacroPattern> build_patterns() {
  using PL = PatLetter;
  std::vector<PL> relator = {{false, 0, 1}, {false, 0, 2}, {false, 1, 2}, {true, 0, 1}, {true, 1, 2}};
  auto invert = [](std::vector<PL> v) {
    std::reverse(v.begin(), v.end());
    for (PL& l : v) l.bar = !l.bar;
    return v;
  };
  std::vector<MacroPattern> out;
  auto add = [&](std::vector<PL> lhs, std::vector<PL> rhs) {
    for (const MacroPattern& m : out) {
      auto eq = [](const std::vector<PL>& a, const std::vector<PL>& b) {
        if (a.size() != b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i)
          if (a[i].bar != b[i].bar || a[i].vi != b[i].vi || a[i].vj != b[i].vj) return false;
        return true;
      };
      if (eq(m.lhs, lhs) && eq(m.rhs, rhs)) return;
    }
    out.push_back({std::move(lhs), std::move(rhs)});
  };
  for (const auto& rel : {relator, invert(relator)}) {
    for (int rot = 0; rot < 5; ++rot) {
      std::vector<PL> r;
      for (int i = 0; i < 5; ++i) r.push_back(rel[(rot + i) % 5]);
      for (int k : {2, 3}) {
        std::vector<PL> lhs(r.begin(), r.begin() + k);
        std::vector<PL> rhs = invert(std::vector<PL>(r.begin() + k, r.end()));
        add(std::move(lhs), std::move(rhs));
      }
    }
  }
  return out;
}

const std::vector<MacroPattern>& patterns() {
  static const std::vector<MacroPattern> table = build_patterns();
  return table;
}

// Tries to unify `concrete` (with per-letter presentation mask) against pat.
// Returns the variable binding on success.
std::optional<std::array<DecoratedIndex, 3>> unify(const std::vector<PatLetter>& pat,
                                                   const std::vector<Letter>& concrete) {
  std::array<DecoratedIndex, 3> bind;
  std::array<bool, 3> bound = {false, false, false};
  for (size_t i = 0; i < pat.size(); ++i) {
    if (pat[i].bar != concrete[i].bar) return std::nullopt;
    const DecoratedIndex idx[2] = {concrete[i].a, concrete[i].b};
    const int vars[2] = {pat[i].vi, pat[i].vj};
    for (int s = 0; s < 2; ++s) {
      int v = vars[s];
      if (!bound[v]) {
        bind[v] = idx[s];
        bound[v] = true;
      } else if (!(bind[v] == idx[s])) {
        return std::nullopt;
      }
    }
  }
  // Distinct labels for distinct bound variables.
  for (int u = 0; u < 3; ++u)
    for (int v = u + 1; v < 3; ++v)
      if (bound[u] && bound[v] && bind[u].label == bind[v].label) return std::nullopt;
  return bind;
}

Letter instantiate(const PatLetter& pl, const std::array<DecoratedIndex, 3>& bind) {
  return Letter(pl.bar, bind[pl.vi], bind[pl.vj]);
}

// ---------------------------------------------------------------------------

struct KeyHash {
  size_t operator()(const std::string& s) const { return std::hash<std::string>()(s); }
};

std::string word_key(const OperatorWord& w, bool with_tail = true) {
  std::string k = std::to_string(w.zeta_exp());
  k += '|';
  for (const Letter& l : w.canonical_letters()) {
    k += l.bar ? '-' : '+';
    k += static_cast<char>('0' + l.a.label);
    k += static_cast<char>('a' + l.a.deco);
    k += static_cast<char>('0' + l.b.label);
    k += static_cast<char>('a' + l.b.deco);
  }
  k += '|';
  if (with_tail)
    for (int l = 1; l <= w.tail().size(); ++l) {
      k += static_cast<char>('0' + w.tail().image(l));
      k += static_cast<char>('a' + w.tail().deco_at(l));
    }
  return k;
}

// Elaborates a local fragment rewrite into kernel steps, cached.
const std::vector<Step>* elaborate(const std::vector<Letter>& before,
                                   const std::vector<Letter>& after, int depth) {
  static std::map<std::pair<std::vector<Letter>, std::vector<Letter>>, std::optional<std::vector<Step>>>
      cache;
  auto key = std::make_pair(before, after);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, derived_step_verify(before, after, depth)).first;
  return it->second ? &*it->second : nullptr;
}

struct Move {
  std::vector<Step> steps;  // kernel steps, positions valid on the source word
};

class Expander {
public:
  Expander(int size, const SearchLimits& limits) : size_(size), limits_(limits) {}

  // Deterministic enumeration of macro moves from w.
  std::vector<Move> moves(const OperatorWord& w, int max_len) const {
    std::vector<Move> out;
    const auto& L = w.letters();
    const int n = static_cast<int>(L.size());

    // Adjacency bridging: returns commute steps moving letter j to i+1
    // (moving j leftwards), or letter i to j-1 (moving i rightwards).
    auto bridge_pair = [&](int i, int j, bool move_left, std::vector<Step>& steps) -> bool {
      if (j == i + 1) return true;
      if (move_left) {
        for (int t = i + 1; t < j; ++t)
          if (L[t].support() & L[j].support()) return false;
        for (int p = j; p > i + 1; --p) {
          Step st;
          st.rule = Rule::Commute;
          st.pos = p;  // swaps letters p, p+1 (1-based): letter at index p-1
          steps.push_back(st);
        }
        return true;
      }
      for (int t = i + 1; t < j; ++t)
        if (L[t].support() & L[i].support()) return false;
      for (int p = i + 1; p < j; ++p) {
        Step st;
        st.rule = Rule::Commute;
        st.pos = p;
        steps.push_back(st);
      }
      return true;
    };

    auto presentations = [&](const Letter& l) { return std::array<Letter, 2>{l, l.mirrored()}; };

    // --- pair-based moves
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int strategy = 0; strategy < 2; ++strategy) {
          std::vector<Step> bridge;
          // After bridging the pair sits at positions (p, p+1), 1-based p:
          int p;
          {
            std::vector<Step> tmp;
            bool ok = bridge_pair(i, j, strategy == 0, tmp);
            if (!ok) continue;
            bridge = std::move(tmp);
            p = (strategy == 0) ? i + 1 : j;  // 1-based position of the pair head
          }
          if (j == i + 1 && strategy == 1) continue;  // identical to strategy 0

          const auto pres_i = presentations(L[i]);
          const auto pres_j = presentations(L[j]);
          for (int mi = 0; mi < 2; ++mi) {
            for (int mj = 0; mj < 2; ++mj) {
              const Letter a = pres_i[mi];
              const Letter b = pres_j[mj];
              auto emit_syms = [&](std::vector<Step>& steps) {
                if (mi) {
                  Step st;
                  st.rule = Rule::Symmetry;
                  st.pos = p;
                  steps.push_back(st);
                }
                if (mj) {
                  Step st;
                  st.rule = Rule::Symmetry;
                  st.pos = p + 1;
                  steps.push_back(st);
                }
              };
              // cancel
              if (b == a.inverse()) {
                Move mv;
                mv.steps = bridge;
                emit_syms(mv.steps);
                Step st;
                st.rule = Rule::Cancel;
                st.pos = p;
                mv.steps.push_back(st);
                out.push_back(std::move(mv));
              }
              // inversion, unbarred pair T_ab T_{b a^}
              if (!a.bar && !b.bar && a.b == b.a && b.b.label == a.a.label &&
                  b.b.deco == dec_norm(a.a.deco + 1)) {
                Move mv;
                mv.steps = bridge;
                emit_syms(mv.steps);
                Step st;
                st.rule = Rule::Inversion;
                st.pos = p;
                mv.steps.push_back(st);
                out.push_back(std::move(mv));
              }
              // inversion, barred pair T'_{b a^} T'_{ab}
              if (a.bar && b.bar && a.a == b.b && a.b.label == b.a.label &&
                  a.b.deco == dec_norm(b.a.deco + 1)) {
                Move mv;
                mv.steps = bridge;
                emit_syms(mv.steps);
                Step st;
                st.rule = Rule::Inversion;
                st.forward = false;
                st.pos = p;
                mv.steps.push_back(st);
                out.push_back(std::move(mv));
              }
              // relator splits with 2-letter lhs
              for (const MacroPattern& pat : patterns()) {
                if (pat.lhs.size() != 2) continue;
                if (static_cast<int>(pat.rhs.size()) - 2 + n > max_len) continue;
                auto bind = unify(pat.lhs, {a, b});
                if (!bind) continue;
                std::vector<Letter> before = {L[i], L[j]};
                std::vector<Letter> after;
                for (const PatLetter& pl : pat.rhs) after.push_back(instantiate(pl, *bind));
                const std::vector<Step>* chain = elaborate(before, after, limits_.elaborate_depth);
                if (!chain) continue;
                Move mv;
                mv.steps = bridge;
                for (Step st : *chain) {
                  st.pos += p - 1;
                  mv.steps.push_back(st);
                }
                out.push_back(std::move(mv));
              }
            }
          }
        }
      }
    }

    // --- triple-based moves (3-letter lhs patterns)
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          uint32_t un = L[i].support() | L[j].support() | L[k].support();
          if (std::popcount(un) > 3) continue;  // at most 3 distinct labels
          for (int strategy = 0; strategy < 2; ++strategy) {
            // strategy 0: pull j and k leftwards to i; 1: push i and j to k.
            std::vector<Step> bridge;
            int p;
            if (strategy == 0) {
              if (!bridge_pair(i, j, true, bridge)) continue;
              // After j moved to index i+1, the letters occupying i+2..k-1
              // are the original ones from {i+1..j-1, j+1..k-1}; k itself is
              // unmoved and must commute past all of them.
              bool ok = true;
              for (int t = i + 1; t < k && ok; ++t) {
                if (t == j) continue;
                if (L[t].support() & L[k].support()) ok = false;
              }
              if (!ok) continue;
              for (int q = k; q > i + 2; --q) {
                Step st;
                st.rule = Rule::Commute;
                st.pos = q;
                bridge.push_back(st);
              }
              p = i + 1;
            } else {
              // push i right to j-1, then slide the pair right to k-2.
              if (!bridge_pair(i, j, false, bridge)) continue;
              bool ok = true;
              for (int t = j + 1; t < k && ok; ++t)
                if (L[t].support() & (L[i].support() | L[j].support())) ok = false;
              if (!ok) continue;
              for (int s2 = 0; s2 < k - 1 - j; ++s2) {
                Step st1;
                st1.rule = Rule::Commute;
                st1.pos = j + s2 + 1;
                Step st2;
                st2.rule = Rule::Commute;
                st2.pos = j + s2;
                bridge.push_back(st1);
                bridge.push_back(st2);
              }
              p = k - 1;
            }

            const auto pres_i = presentations(L[i]);
            const auto pres_j = presentations(L[j]);
            const auto pres_k = presentations(L[k]);
            for (int mask = 0; mask < 8; ++mask) {
              const Letter a = pres_i[mask & 1];
              const Letter b = pres_j[(mask >> 1) & 1];
              const Letter c = pres_k[(mask >> 2) & 1];
              for (const MacroPattern& pat : patterns()) {
                if (pat.lhs.size() != 3) continue;
                auto bind = unify(pat.lhs, {a, b, c});
                if (!bind) continue;
                std::vector<Letter> before = {L[i], L[j], L[k]};
                std::vector<Letter> after;
                for (const PatLetter& pl : pat.rhs) after.push_back(instantiate(pl, *bind));
                const std::vector<Step>* chain = elaborate(before, after, limits_.elaborate_depth);
                if (!chain) continue;
                Move mv;
                mv.steps = bridge;
                for (Step st : *chain) {
                  st.pos += p - 1;
                  mv.steps.push_back(st);
                }
                out.push_back(std::move(mv));
              }
            }
          }
        }
      }
    }
    return out;
  }

private:
  int size_;
  SearchLimits limits_;
};

struct Node {
  OperatorWord word;
  int parent = -1;
  std::vector<Step> steps;  // steps from parent to this node
};

std::vector<Step> reconstruct(const std::vector<Node>& nodes, int idx) {
  std::vector<std::vector<Step>> chunks;
  for (int cur = idx; cur > 0; cur = nodes[cur].parent) chunks.push_back(nodes[cur].steps);
  std::vector<Step> steps;
  for (auto it = chunks.rbegin(); it != chunks.rend(); ++it)
    steps.insert(steps.end(), it->begin(), it->end());
  return steps;
}

SearchOutcome best_first(const OperatorWord& start, const std::optional<OperatorWord>& goal,
                         const SearchLimits& limits) {
  SearchOutcome res;
  Expander ex(start.size(), limits);
  const int max_len = start.length() + limits.max_growth +
                      (goal ? std::max(0, goal->length() - start.length()) : 0);

  std::vector<Letter> goal_letters;
  std::string goal_key;
  if (goal) {
    goal_letters = goal->canonical_letters();
    goal_key = word_key(*goal, limits.exact_tail);
  }

  auto heuristic = [&](const OperatorWord& w) -> int {
    if (!goal) return w.length();
    // multiset symmetric difference of canonical letters
    auto mine = w.canonical_letters();
    std::vector<Letter> inter;
    std::vector<Letter> sorted_goal = goal_letters, sorted_mine = mine;
    std::sort(sorted_goal.begin(), sorted_goal.end());
    std::sort(sorted_mine.begin(), sorted_mine.end());
    std::set_intersection(sorted_mine.begin(), sorted_mine.end(), sorted_goal.begin(),
                          sorted_goal.end(), std::back_inserter(inter));
    int diff = static_cast<int>(sorted_mine.size() + sorted_goal.size() - 2 * inter.size());
    diff += (w.zeta_exp() != goal->zeta_exp()) ? 1 : 0;
    diff += (limits.exact_tail && !(w.tail() == goal->tail())) ? 1 : 0;
    return diff;
  };

  std::vector<Node> nodes;
  nodes.push_back({start, -1, {}});
  std::unordered_map<std::string, int, KeyHash> seen;
  seen[word_key(start)] = 0;

  // Priority: shrink the letter count (or close the goal gap) first, then the
  // lexicographic canonical word, then insertion order.
  using QE = std::tuple<int, std::string, size_t, int>;
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> queue;
  size_t seq = 0;
  queue.emplace(heuristic(start), word_key(start), seq++, 0);

  auto is_goal = [&](const OperatorWord& w) {
    if (goal) return word_key(w, limits.exact_tail) == goal_key;
    return w.length() == 0;
  };

  if (is_goal(start)) {
    res.found = true;
    res.final_word = start;
    return res;
  }

  size_t expanded = 0;
  while (!queue.empty()) {
    auto [pri, lex, s, idx] = queue.top();
    queue.pop();
    if (++expanded > limits.node_budget) break;
    OperatorWord cur = nodes[idx].word;  // copy: nodes may reallocate
    for (Move& mv : ex.moves(cur, max_len)) {
      OperatorWord next = cur;
      bool ok = true;
      for (const Step& st : mv.steps) {
        try {
          next = apply_step(next, st);
        } catch (const Error&) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;  // should not happen; defensive
      std::string key = word_key(next);
      if (seen.count(key)) continue;
      int nidx = static_cast<int>(nodes.size());
      seen.emplace(std::move(key), nidx);
      nodes.push_back({next, idx, std::move(mv.steps)});
      if (is_goal(next)) {
        res.found = true;
        res.final_word = next;
        res.steps = reconstruct(nodes, nidx);
        res.nodes = expanded;
        return res;
      }
      queue.emplace(heuristic(next), word_key(next), seq++, nidx);
    }
  }
  res.nodes = expanded;
  return res;
}

}  // namespace

namespace {

// Rearranges `cur` (known trace-equivalent to goal's letters) into exactly
// goal's letter order and presentations with commute/symmetry steps.
bool polish_to_goal(OperatorWord& cur, const OperatorWord& goal, std::vector<Step>& steps) {
  for (int k = 0; k < goal.length(); ++k) {
    const Letter& want = goal.letters()[static_cast<size_t>(k)];
    int found = -1;
    for (int j = k; j < cur.length(); ++j) {
      const Letter& have = cur.letters()[static_cast<size_t>(j)];
      if (!have.same_factor(want) || have.bar != want.bar) continue;
      bool movable = true;
      for (int t = k; t < j && movable; ++t)
        if (cur.letters()[static_cast<size_t>(t)].support() & have.support()) movable = false;
      if (movable) {
        found = j;
        break;
      }
    }
    if (found < 0) return false;
    for (int j = found; j > k; --j) {
      Step st;
      st.rule = Rule::Commute;
      st.pos = j;  // swaps letters j, j+1 (1-based); letter at 0-based j moves left
      cur = apply_step(cur, st);
      steps.push_back(st);
    }
    if (!(cur.letters()[static_cast<size_t>(k)] == want)) {
      Step st;
      st.rule = Rule::Symmetry;
      st.pos = k + 1;
      cur = apply_step(cur, st);
      steps.push_back(st);
      if (!(cur.letters()[static_cast<size_t>(k)] == want)) return false;
    }
  }
  return cur.length() == goal.length();
}

}  // namespace

std::optional<NormalForm> normalize_bounded(const OperatorWord& w, const SearchLimits& limits,
                                            std::vector<Step>* steps_out) {
  SearchOutcome out = best_first(w, std::nullopt, limits);
  if (!out.found) return std::nullopt;
  if (steps_out) *steps_out = out.steps;
  NormalForm nf;
  nf.zeta_exp = out.final_word.zeta_exp();
  nf.tail = out.final_word.tail();
  return nf;
}

SearchOutcome derive_steps(const OperatorWord& start, const OperatorWord& goal,
                           const SearchLimits& limits) {
  SearchOutcome out = best_first(start, goal, limits);
  if (out.found && !(out.final_word == goal)) {
    // Same word modulo commutation and letter presentation; align exactly.
    OperatorWord cur = out.final_word;
    std::vector<Step> extra;
    if (polish_to_goal(cur, goal, extra)) {
      out.steps.insert(out.steps.end(), extra.begin(), extra.end());
      out.final_word = cur;
    }
  }
  return out;
}

SearchOutcome derive_via(const OperatorWord& start, const std::vector<OperatorWord>& waypoints,
                         const SearchLimits& limits) {
  SearchOutcome total;
  OperatorWord cur = start;
  for (const OperatorWord& wp : waypoints) {
    SearchOutcome leg = derive_steps(cur, wp, limits);
    total.nodes += leg.nodes;
    if (!leg.found) {
      total.found = false;
      total.final_word = cur;
      return total;
    }
    total.steps.insert(total.steps.end(), leg.steps.begin(), leg.steps.end());
    cur = leg.final_word;
  }
  total.found = true;
  total.final_word = cur;
  return total;
}

}  // namespace ptolemy
