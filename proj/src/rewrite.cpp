#include "ptolemy/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace ptolemy {

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Pentagon: return "pentagon";
    case Rule::Inversion: return "inversion";
    case Rule::Symmetry: return "symmetry";
    case Rule::Commute: return "commute";
    case Rule::Cancel: return "cancel";
    case Rule::PermPush: return "permpush";
    case Rule::Derived: return "derived";
  }
  return "?";
}

std::string Step::str() const {
  std::ostringstream out;
  out << rule_name(rule) << ' ' << (forward ? "fwd" : "bwd") << " @" << pos;
  if (bind_a) out << " a=" << show(*bind_a);
  if (bind_b) out << " b=" << show(*bind_b);
  if (bind_letter) out << ' ' << show(*bind_letter);
  if (bind_perm) out << " P[" << bind_perm->cycles() << "]";
  if (rule == Rule::Derived) {
    if (depth > 0) out << " depth " << depth;
    out << " :";
    for (const Letter& l : fragment) out << ' ' << show(l);
    out << " ->";
    for (const Letter& l : replacement) out << ' ' << show(l);
  }
  return out.str();
}

namespace {

void require(bool cond, const std::string& code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

std::string frag_str(const std::vector<Letter>& ls) {
  std::string s;
  for (const Letter& l : ls) {
    if (!s.empty()) s += ' ';
    s += show(l);
  }
  return s.empty() ? "(empty)" : s;
}

// Applies an inversion pair removal/insertion bookkeeping: conjugates the
// suffix letters starting at `from` (0-based) by p and pre-multiplies tail.
void push_permutation(OperatorWord& w, size_t from, const DecoratedPermutation& p) {
  auto& ls = w.mutable_letters();
  for (size_t i = from; i < ls.size(); ++i)
    ls[i] = Letter(ls[i].bar, p.apply(ls[i].a), p.apply(ls[i].b));
  w.mutable_tail() = p.compose(w.tail());
}

}  // namespace

OperatorWord apply_step(const OperatorWord& w, const Step& s) {
  const auto& L = w.letters();
  const int n = w.length();
  const int p = s.pos;  // 1-based
  OperatorWord r = w;
  auto& ls = r.mutable_letters();

  auto at = [&](int i) -> const Letter& { return L[static_cast<size_t>(i - 1)]; };

  switch (s.rule) {
    case Rule::Pentagon: {
      if (s.forward) {
        require(p >= 1 && p + 2 <= n, "BadPosition", "pentagon fwd needs 3 letters at @" + std::to_string(p));
        const Letter &l1 = at(p), &l2 = at(p + 1), &l3 = at(p + 2);
        bool shape = !l1.bar && !l2.bar && !l3.bar && l1.a == l2.a && l1.b == l3.a && l2.b == l3.b;
        require(shape, "NoMatch",
                "pentagon fwd at @" + std::to_string(p) + ": " + frag_str({l1, l2, l3}));
        ls[p - 1] = l3;
        ls[p] = l1;
        ls.erase(ls.begin() + (p + 1));
      } else {
        require(p >= 1 && p + 1 <= n, "BadPosition", "pentagon bwd needs 2 letters at @" + std::to_string(p));
        const Letter &l1 = at(p), &l2 = at(p + 1);  // T_yz, T_xy
        bool shape = !l1.bar && !l2.bar && l2.b == l1.a;
        require(shape, "NoMatch",
                "pentagon bwd at @" + std::to_string(p) + ": " + frag_str({l1, l2}));
        Letter mid(false, l2.a, l1.b);  // T_xz
        ls[p - 1] = l2;
        ls[p] = mid;
        ls.insert(ls.begin() + (p + 1), l1);
      }
      return r;
    }
    case Rule::Inversion: {
      if (s.forward && !s.bind_a) {
        require(p >= 1 && p + 1 <= n, "BadPosition", "inversion fwd needs 2 letters");
        const Letter &l1 = at(p), &l2 = at(p + 1);  // T_ab, T_{b a^}
        bool shape = !l1.bar && !l2.bar && l1.b == l2.a && l2.b.label == l1.a.label &&
                     l2.b.deco == dec_norm(l1.a.deco + 1);
        require(shape, "NoMatch",
                "inversion fwd at @" + std::to_string(p) + ": " + frag_str({l1, l2}));
        auto cyc = DecoratedPermutation::inversion_cycle(w.size(), l1.a, l1.b);
        ls.erase(ls.begin() + (p - 1), ls.begin() + (p + 1));
        r.add_zeta(1);
        push_permutation(r, p - 1, cyc);
      } else if (s.forward) {
        // insertion of the barred pair at position p (may be length+1)
        require(p >= 1 && p <= n + 1, "BadPosition", "inversion insert position");
        require(s.bind_a && s.bind_b, "NoMatch", "inversion insertion needs bindings a=, b=");
        DecoratedIndex a = *s.bind_a, b = *s.bind_b;
        auto cyc = DecoratedPermutation::inversion_cycle(w.size(), a, b);
        Letter first(true, b, DecoratedIndex(a.label, a.deco + 1));
        Letter second(true, a, b);
        ls.insert(ls.begin() + (p - 1), {first, second});
        r.add_zeta(1);
        push_permutation(r, p + 1, cyc);
      } else if (!s.bind_a) {
        require(p >= 1 && p + 1 <= n, "BadPosition", "inversion bwd needs 2 letters");
        const Letter &l1 = at(p), &l2 = at(p + 1);  // T'_{b a^}, T'_{ab}
        bool shape = l1.bar && l2.bar && l1.a == l2.b && l1.b.label == l2.a.label &&
                     l1.b.deco == dec_norm(l2.a.deco + 1);
        require(shape, "NoMatch",
                "inversion bwd at @" + std::to_string(p) + ": " + frag_str({l1, l2}));
        auto cyc = DecoratedPermutation::inversion_cycle(w.size(), l2.a, l2.b).inverse();
        ls.erase(ls.begin() + (p - 1), ls.begin() + (p + 1));
        r.add_zeta(-1);
        push_permutation(r, p - 1, cyc);
      } else {
        require(p >= 1 && p <= n + 1, "BadPosition", "inversion insert position");
        require(s.bind_a && s.bind_b, "NoMatch", "inversion insertion needs bindings a=, b=");
        DecoratedIndex a = *s.bind_a, b = *s.bind_b;
        auto cyc = DecoratedPermutation::inversion_cycle(w.size(), a, b).inverse();
        Letter first(false, a, b);
        Letter second(false, b, DecoratedIndex(a.label, a.deco + 1));
        ls.insert(ls.begin() + (p - 1), {first, second});
        r.add_zeta(-1);
        push_permutation(r, p + 1, cyc);
      }
      return r;
    }
    case Rule::Symmetry: {
      require(p >= 1 && p <= n, "BadPosition", "symmetry position");
      ls[p - 1] = ls[p - 1].mirrored();
      return r;
    }
    case Rule::Commute: {
      require(p >= 1 && p + 1 <= n, "BadPosition", "commute needs 2 letters");
      require((at(p).support() & at(p + 1).support()) == 0, "NoMatch",
              "commute at @" + std::to_string(p) + ": overlapping supports " +
                  frag_str({at(p), at(p + 1)}));
      std::swap(ls[p - 1], ls[p]);
      return r;
    }
    case Rule::Cancel: {
      if (s.forward) {
        require(p >= 1 && p + 1 <= n, "BadPosition", "cancel needs 2 letters");
        require(at(p + 1) == at(p).inverse(), "NoMatch",
                "cancel at @" + std::to_string(p) + ": " + frag_str({at(p), at(p + 1)}));
        ls.erase(ls.begin() + (p - 1), ls.begin() + (p + 1));
      } else {
        require(p >= 1 && p <= n + 1, "BadPosition", "cancel insert position");
        require(s.bind_letter.has_value(), "NoMatch", "cancel insertion needs a letter binding");
        ls.insert(ls.begin() + (p - 1), {*s.bind_letter, s.bind_letter->inverse()});
      }
      return r;
    }
    case Rule::PermPush: {
      require(s.bind_perm.has_value(), "NoMatch", "permpush needs a permutation binding");
      require(w.tail() == *s.bind_perm, "NoMatch",
              "permpush: tail is P[" + w.tail().cycles() + "], asserted P[" +
                  s.bind_perm->cycles() + "]");
      return r;
    }
    case Rule::Derived: {
      const std::vector<Letter>& before = s.forward ? s.fragment : s.replacement;
      const std::vector<Letter>& after = s.forward ? s.replacement : s.fragment;
      int len = static_cast<int>(before.size());
      require(p >= 1 && p - 1 + len <= n, "BadPosition", "derived fragment out of range");
      for (int i = 0; i < len; ++i)
        require(at(p + i) == before[static_cast<size_t>(i)], "NoMatch",
                "derived at @" + std::to_string(p) + ": word has " +
                    frag_str(std::vector<Letter>(L.begin() + (p - 1), L.begin() + (p - 1 + len))) +
                    ", step expects " + frag_str(before));
      int depth = s.depth > 0 ? s.depth : kDefaultDerivedDepth;
      auto chain = derived_step_verify(before, after, depth);
      require(chain.has_value(), "NoMatch",
              "derived at @" + std::to_string(p) + ": no base-rule chain within depth " +
                  std::to_string(depth) + " for " + frag_str(before) + " -> " + frag_str(after));
      ls.erase(ls.begin() + (p - 1), ls.begin() + (p - 1 + len));
      ls.insert(ls.begin() + (p - 1), after.begin(), after.end());
      return r;
    }
  }
  throw Error("NoMatch", "unknown rule");
}

namespace {

// Fragment-level search used by derived_step_verify: scalar-neutral rules
// only, so fragments are plain letter vectors.
struct FragNode {
  std::vector<Letter> letters;
  bool operator==(const FragNode&) const = default;
};

struct FragHash {
  size_t operator()(const std::vector<Letter>& v) const {
    size_t h = 1469598103934665603ull;
    auto mix = [&](size_t x) { h = (h ^ x) * 1099511628211ull; };
    for (const Letter& l : v) {
      mix(l.bar);
      mix(static_cast<size_t>(l.a.label) << 8 | l.a.deco);
      mix(static_cast<size_t>(l.b.label) << 8 | l.b.deco);
    }
    return h;
  }
};

std::vector<std::pair<std::vector<Letter>, Step>> fragment_neighbors(
    const std::vector<Letter>& f, const std::vector<Letter>& insert_pool, size_t max_len) {
  std::vector<std::pair<std::vector<Letter>, Step>> out;
  int n = static_cast<int>(f.size());
  auto push = [&](std::vector<Letter> g, Step st) { out.emplace_back(std::move(g), std::move(st)); };

  for (int p = 1; p <= n; ++p) {
    // symmetry
    {
      std::vector<Letter> g = f;
      g[p - 1] = g[p - 1].mirrored();
      Step st;
      st.rule = Rule::Symmetry;
      st.pos = p;
      push(std::move(g), st);
    }
    if (p + 1 <= n) {
      const Letter &l1 = f[p - 1], &l2 = f[p];
      if ((l1.support() & l2.support()) == 0) {
        std::vector<Letter> g = f;
        std::swap(g[p - 1], g[p]);
        Step st;
        st.rule = Rule::Commute;
        st.pos = p;
        push(std::move(g), st);
      }
      if (l2 == l1.inverse()) {
        std::vector<Letter> g = f;
        g.erase(g.begin() + (p - 1), g.begin() + (p + 1));
        Step st;
        st.rule = Rule::Cancel;
        st.pos = p;
        push(std::move(g), st);
      }
      if (!l1.bar && !l2.bar && l2.b == l1.a && f.size() + 1 <= max_len) {
        std::vector<Letter> g = f;  // pentagon bwd
        Letter mid(false, l2.a, l1.b);
        g[p - 1] = l2;
        g[p] = mid;
        g.insert(g.begin() + (p + 1), l1);
        Step st;
        st.rule = Rule::Pentagon;
        st.forward = false;
        st.pos = p;
        push(std::move(g), st);
      }
    }
    if (p + 2 <= n) {
      const Letter &l1 = f[p - 1], &l2 = f[p], &l3 = f[p + 1];
      if (!l1.bar && !l2.bar && !l3.bar && l1.a == l2.a && l1.b == l3.a && l2.b == l3.b) {
        std::vector<Letter> g = f;  // pentagon fwd
        g[p - 1] = l3;
        g[p] = l1;
        g.erase(g.begin() + (p + 1));
        Step st;
        st.rule = Rule::Pentagon;
        st.pos = p;
        push(std::move(g), st);
      }
    }
  }
  if (f.size() + 2 <= max_len) {
    for (int p = 1; p <= n + 1; ++p) {
      for (const Letter& x : insert_pool) {
        std::vector<Letter> g = f;
        g.insert(g.begin() + (p - 1), {x, x.inverse()});
        Step st;
        st.rule = Rule::Cancel;
        st.forward = false;
        st.pos = p;
        st.bind_letter = x;
        push(std::move(g), st);
      }
    }
  }
  return out;
}

}  // namespace

std::optional<std::vector<Step>> derived_step_verify(const std::vector<Letter>& before,
                                                     const std::vector<Letter>& after, int depth) {
  if (before == after) return std::vector<Step>{};
  // Insertion pool: every letter occurring on either side, both presentations,
  // both bars.
  std::vector<Letter> pool;
  auto add_pool = [&](const Letter& l) {
    Letter base(false, l.a, l.b);
    for (Letter cand : {base, base.mirrored()}) {
      if (std::find(pool.begin(), pool.end(), cand) == pool.end()) pool.push_back(cand);
      Letter barred = cand.inverse();
      if (std::find(pool.begin(), pool.end(), barred) == pool.end()) pool.push_back(barred);
    }
  };
  for (const Letter& l : before) add_pool(l);
  for (const Letter& l : after) add_pool(l);
  std::sort(pool.begin(), pool.end());

  size_t max_len = std::max(before.size(), after.size()) + 2;
  const size_t node_cap = 400000;

  // Bidirectional BFS. Every base rule is invertible, so a backward edge
  // recorded on the `after` side replays as its inverted step.
  using Map = std::unordered_map<std::vector<Letter>, std::pair<std::vector<Letter>, Step>, FragHash>;
  Map from_before, from_after;
  std::deque<std::vector<Letter>> frontier_b{before}, frontier_a{after};
  from_before.emplace(before, std::make_pair(before, Step{}));
  from_after.emplace(after, std::make_pair(after, Step{}));

  auto invert_step = [](Step st) {
    if (st.rule != Rule::Symmetry && st.rule != Rule::Commute) st.forward = !st.forward;
    if (st.rule == Rule::Cancel && st.forward) st.bind_letter.reset();  // removal needs no binding
    return st;
  };
  auto assemble = [&](const std::vector<Letter>& meet) {
    std::vector<Step> head;
    for (std::vector<Letter> cur = meet; !(from_before.at(cur).first == cur);
         cur = from_before.at(cur).first)
      head.push_back(from_before.at(cur).second);
    std::reverse(head.begin(), head.end());
    for (std::vector<Letter> cur = meet; !(from_after.at(cur).first == cur);
         cur = from_after.at(cur).first)
      head.push_back(invert_step(from_after.at(cur).second));
    return head;
  };

  if (from_after.count(before)) return assemble(before);

  size_t expanded = 0;
  int depth_b = 0, depth_a = 0;
  while (depth_b + depth_a < depth && (!frontier_b.empty() || !frontier_a.empty())) {
    bool expand_before;
    if (frontier_b.empty()) expand_before = false;
    else if (frontier_a.empty()) expand_before = true;
    else expand_before = frontier_b.size() <= frontier_a.size();

    Map& mine = expand_before ? from_before : from_after;
    Map& theirs = expand_before ? from_after : from_before;
    std::deque<std::vector<Letter>>& frontier = expand_before ? frontier_b : frontier_a;
    (expand_before ? depth_b : depth_a)++;

    std::deque<std::vector<Letter>> next;
    std::optional<std::vector<Letter>> meet;
    while (!frontier.empty()) {
      std::vector<Letter> cur = std::move(frontier.front());
      frontier.pop_front();
      if (++expanded > node_cap) return std::nullopt;
      for (auto& [g, st] : fragment_neighbors(cur, pool, max_len)) {
        if (mine.count(g)) continue;
        mine.emplace(g, std::make_pair(cur, st));
        if (theirs.count(g) && !meet) meet = g;
        next.push_back(std::move(g));
      }
      if (meet) break;
    }
    if (meet) return assemble(*meet);
    frontier = std::move(next);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Script parsing

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

std::vector<Letter> parse_letter_list(int /*size*/, const std::string& text) {
  std::vector<Letter> out;
  size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    size_t close = text.find(']', i);
    if (text[i] != 'T' || close == std::string::npos)
      throw Error("ParseError", "expected letter list, got '" + text + "'");
    out.push_back(parse_letter(text.substr(i, close - i + 1)));
    i = close + 1;
  }
  return out;
}

// Parses a decorated index token like "3", "3^", "3v".
DecoratedIndex parse_index_token(const std::string& t) {
  if (t.empty() || !std::isdigit(static_cast<unsigned char>(t[0])))
    throw Error("ParseError", "expected index, got '" + t + "'");
  size_t i = 0;
  int label = 0;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i])))
    label = label * 10 + (t[i++] - '0');
  int deco = 0;
  if (i < t.size() && t[i] == '^') { deco = 1; ++i; }
  else if (i < t.size() && t[i] == 'v') { deco = 2; ++i; }
  if (i != t.size()) throw Error("ParseError", "trailing input in index '" + t + "'");
  return DecoratedIndex(label, deco);
}

}  // namespace

Step parse_step(int size, const std::string& line) {
  Step s;
  std::string head = line, tail;
  size_t colon = line.find(" : ");
  if (colon != std::string::npos) {
    head = line.substr(0, colon);
    tail = line.substr(colon + 3);
  }
  // Extract a P[...] binding before tokenizing: cycle notation has spaces.
  size_t popen = head.find("P[");
  if (popen != std::string::npos) {
    size_t pclose = head.find(']', popen);
    require(pclose != std::string::npos, "ParseError", "unterminated P[...] binding");
    s.bind_perm = DecoratedPermutation::parse_cycles(
        size, head.substr(popen + 2, pclose - popen - 2));
    head = head.substr(0, popen) + head.substr(pclose + 1);
  }
  auto toks = tokenize(head);
  require(!toks.empty(), "ParseError", "empty step");
  size_t k = 0;
  const std::string& rn = toks[k++];
  if (rn == "pentagon") s.rule = Rule::Pentagon;
  else if (rn == "inversion") s.rule = Rule::Inversion;
  else if (rn == "symmetry") s.rule = Rule::Symmetry;
  else if (rn == "commute") s.rule = Rule::Commute;
  else if (rn == "cancel") s.rule = Rule::Cancel;
  else if (rn == "permpush") s.rule = Rule::PermPush;
  else if (rn == "derived") s.rule = Rule::Derived;
  else throw Error("ParseError", "unknown rule '" + rn + "'");

  while (k < toks.size()) {
    const std::string& t = toks[k];
    if (t == "fwd") { s.forward = true; ++k; }
    else if (t == "bwd") { s.forward = false; ++k; }
    else if (t[0] == '@') { s.pos = std::stoi(t.substr(1)); ++k; }
    else if (t.rfind("a=", 0) == 0) { s.bind_a = parse_index_token(t.substr(2)); ++k; }
    else if (t.rfind("b=", 0) == 0) { s.bind_b = parse_index_token(t.substr(2)); ++k; }
    else if (t == "depth") {
      require(k + 1 < toks.size(), "ParseError", "depth needs a value");
      s.depth = std::stoi(toks[k + 1]);
      k += 2;
    }
    else if (t[0] == 'T') {
      s.bind_letter = parse_letter(t);
      ++k;
    }
    else throw Error("ParseError", "unexpected token '" + t + "' in step");
  }

  if (s.rule == Rule::Derived) {
    size_t arrow = tail.find("->");
    require(arrow != std::string::npos, "ParseError", "derived step needs 'before -> after'");
    s.fragment = parse_letter_list(size, tail.substr(0, arrow));
    s.replacement = parse_letter_list(size, tail.substr(arrow + 2));
  }
  return s;
}

Script Script::parse(int size, const std::string& text) {
  Script sc;
  sc.size = size;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    // trim
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    if (line.empty()) continue;

    if (line.rfind("size ", 0) == 0) {
      if (std::stoi(line.substr(5)) != size)
        throw Error("SizeMismatch", "script header size differs from the requested size");
      continue;
    }
    if (line.rfind("start ", 0) == 0) {
      sc.start = OperatorWord::parse(size, line.substr(6));
      continue;
    }
    if (line.rfind("expect ", 0) == 0) {
      sc.expected = OperatorWord::parse(size, line.substr(7));
      continue;
    }
    Item item;
    item.source = line;
    if (line.rfind("=>exp", 0) == 0) {
      item.assert_exp = std::stoll(line.substr(5));
    } else if (line.rfind("=>", 0) == 0) {
      item.assert_word = OperatorWord::parse(size, line.substr(2));
    } else {
      item.step = parse_step(size, line);
    }
    sc.items.push_back(std::move(item));
  }
  return sc;
}

Script Script::load(int size, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("FileError", "cannot open script file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(size, buf.str());
}

Script Script::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("FileError", "cannot open script file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  std::istringstream scan(text);
  std::string line;
  while (std::getline(scan, line)) {
    size_t pos = line.find("size ");
    if (pos == 0) return parse(std::stoi(line.substr(5)), text);
    size_t b = line.find_first_not_of(" \t\r");
    if (b != std::string::npos && line[b] != '#') break;
  }
  throw Error("ParseError", "script file " + path + " has no 'size <2N>' header");
}

std::string Script::str() const {
  std::ostringstream out;
  if (size > 0) out << "size " << size << "\n";
  if (start) out << "start " << start->str() << "\n";
  for (const Item& it : items) {
    if (it.step) out << it.step->str() << "\n";
    else if (it.assert_word) out << "=> " << it.assert_word->str() << "\n";
    else if (it.assert_exp) out << "=>exp " << *it.assert_exp << "\n";
  }
  if (expected) out << "expect " << expected->str() << "\n";
  return out.str();
}

ReplayReport check_script(const OperatorWord& start, const Script& script,
                          const std::optional<OperatorWord>& expected) {
  ReplayReport rep;
  OperatorWord cur = start;
  for (size_t i = 0; i < script.items.size(); ++i) {
    const auto& it = script.items[i];
    try {
      if (it.step) {
        cur = apply_step(cur, *it.step);
        ++rep.steps_applied;
      } else if (it.assert_word) {
        if (!(cur == *it.assert_word))
          throw Error("AssertFailed", "word is " + cur.str() + ", asserted " + it.assert_word->str());
      } else if (it.assert_exp) {
        if (cur.zeta_exp() != *it.assert_exp)
          throw Error("AssertFailed", "exponent is " + std::to_string(cur.zeta_exp()) +
                                          ", asserted " + std::to_string(*it.assert_exp));
      }
    } catch (const Error& e) {
      rep.ok = false;
      rep.failed_item = static_cast<int>(i);
      rep.message = std::string(e.what()) + " [line: " + it.source + "]";
      rep.final_word = cur;
      return rep;
    }
    rep.exponents.push_back(cur.zeta_exp());
  }
  std::optional<OperatorWord> exp = expected ? expected : script.expected;
  if (exp && !(cur == *exp)) {
    rep.ok = false;
    rep.failed_item = static_cast<int>(script.items.size());
    rep.message = "final word is " + cur.str() + ", expected " + exp->str();
    rep.final_word = cur;
    return rep;
  }
  rep.ok = true;
  rep.final_word = cur;
  return rep;
}

}  // namespace ptolemy
