#include "ptolemy/dperm.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ptolemy {

std::string show(const DecoratedIndex& ix) {
  std::string s = std::to_string(ix.label);
  if (ix.deco == 1) s += '^';
  if (ix.deco == 2) s += 'v';
  return s;
}

DecoratedPermutation::DecoratedPermutation(int size) : perm_(size), deco_(size, 0) {
  for (int i = 0; i < size; ++i) perm_[i] = i + 1;
}

DecoratedPermutation DecoratedPermutation::rotation(int size, int label, int amount) {
  DecoratedPermutation p(size);
  p.deco_.at(label - 1) = dec_norm(amount);
  return p;
}

DecoratedPermutation DecoratedPermutation::permutation(const std::vector<int>& image) {
  DecoratedPermutation p(static_cast<int>(image.size()));
  std::vector<bool> seen(image.size(), false);
  for (size_t i = 0; i < image.size(); ++i) {
    int v = image[i];
    if (v < 1 || v > static_cast<int>(image.size()) || seen[v - 1])
      throw Error("BadLabel", "not a bijection of 1..n at entry " + std::to_string(i + 1));
    seen[v - 1] = true;
    p.perm_[i] = v;
  }
  return p;
}

DecoratedPermutation DecoratedPermutation::inversion_cycle(int size, const DecoratedIndex& a,
                                                           const DecoratedIndex& b) {
  if (a.label == b.label) throw Error("BadLabel", "inversion cycle needs distinct labels");
  DecoratedPermutation p(size);
  p.perm_.at(a.label - 1) = b.label;
  p.perm_.at(b.label - 1) = a.label;
  // q(a) = b and q(b) = a-hat determine the two decoration increments.
  p.deco_.at(b.label - 1) = dec_norm(b.deco - a.deco);
  p.deco_.at(a.label - 1) = dec_norm(a.deco - b.deco + 1);
  return p;
}

bool DecoratedPermutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (perm_[i] != i + 1 || deco_[i] != 0) return false;
  return true;
}

DecoratedIndex DecoratedPermutation::apply(const DecoratedIndex& ix) const {
  if (ix.label < 1 || ix.label > size()) throw Error("BadLabel", "label out of range");
  int m = perm_[ix.label - 1];
  return DecoratedIndex(m, ix.deco + deco_[m - 1]);
}

DecoratedPermutation DecoratedPermutation::compose(const DecoratedPermutation& rhs) const {
  if (size() != rhs.size()) throw Error("SizeMismatch", "composing permutations of unequal size");
  DecoratedPermutation r(size());
  for (int l = 1; l <= size(); ++l) r.perm_[l - 1] = perm_[rhs.perm_[l - 1] - 1];
  // (R^d1 P_s1)(R^d2 P_s2) = R^(d1 + d2 o s1^-1) P_(s1 s2)
  std::vector<int> inv(size());
  for (int l = 1; l <= size(); ++l) inv[perm_[l - 1] - 1] = l;
  for (int m = 1; m <= size(); ++m)
    r.deco_[m - 1] = dec_norm(deco_[m - 1] + rhs.deco_[inv[m - 1] - 1]);
  return r;
}

DecoratedPermutation DecoratedPermutation::inverse() const {
  DecoratedPermutation r(size());
  for (int l = 1; l <= size(); ++l) r.perm_[perm_[l - 1] - 1] = l;
  for (int m = 1; m <= size(); ++m) {
    // increment of the inverse when mapping onto l = perm^-1(m)
    int l = r.perm_[m - 1];
    r.deco_[l - 1] = dec_norm(-deco_[m - 1]);
  }
  return r;
}

void DecoratedPermutation::pre_rotate(int label, int amount) {
  deco_.at(label - 1) = dec_norm(deco_[label - 1] + amount);
}

std::string DecoratedPermutation::cycles() const {
  std::ostringstream out;
  std::vector<bool> done(size(), false);
  bool any = false;
  for (int start = 1; start <= size(); ++start) {
    if (done[start - 1]) continue;
    // trivial entry: fixed label with no decoration
    if (perm_[start - 1] == start && deco_[start - 1] == 0) {
      done[start - 1] = true;
      continue;
    }
    any = true;
    out << '(';
    int l = start;
    int acc = 0;  // decoration accumulated into the first label on closing
    bool first = true;
    while (true) {
      done[l - 1] = true;
      if (!first) out << ' ';
      if (first) {
        out << start;  // opening entry always printed plain
      } else {
        out << show(DecoratedIndex(l, deco_[l - 1]));
      }
      first = false;
      int next = perm_[l - 1];
      if (next == start) {
        acc = deco_[start - 1];
        break;
      }
      l = next;
    }
    if (acc != 0) out << ' ' << show(DecoratedIndex(start, acc));
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

DecoratedPermutation DecoratedPermutation::parse_cycles(int size, const std::string& text) {
  DecoratedPermutation p(size);
  size_t i = 0;
  auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw Error("ParseError", "expected '(' in cycle notation");
    ++i;
    std::vector<DecoratedIndex> entries;
    skip();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw Error("ParseError", "expected label in cycle notation");
      int label = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        label = label * 10 + (text[i++] - '0');
      int deco = 0;
      if (i < text.size() && text[i] == '^') { deco = 1; ++i; }
      else if (i < text.size() && text[i] == 'v') { deco = 2; ++i; }
      if (label < 1 || label > size) throw Error("BadLabel", "cycle label out of range");
      entries.emplace_back(label, deco);
      skip();
    }
    if (i >= text.size()) throw Error("ParseError", "unterminated cycle");
    ++i;  // ')'
    skip();
    if (entries.empty()) continue;  // "()" = identity
    if (entries.size() == 1 && entries.front().deco != 0) {
      // "(k^)" shorthand for the rotation R_k = "(k k^)"
      p.perm_[entries.front().label - 1] = entries.front().label;
      p.deco_[entries.front().label - 1] = entries.front().deco;
      continue;
    }
    // Closing repeat of the first label carries the deco into it.
    bool closed = entries.size() >= 2 && entries.back().label == entries.front().label;
    int n = static_cast<int>(entries.size()) - (closed ? 1 : 0);
    if (n < 1) throw Error("ParseError", "empty cycle");
    for (int k = 0; k < n; ++k) {
      const DecoratedIndex& from = entries[k];
      const DecoratedIndex& to = (k + 1 < n) ? entries[k + 1]
                                             : (closed ? entries.back()
                                                       : DecoratedIndex(entries.front().label, 0));
      if (n == 1 && !closed) break;  // single plain entry: identity
      if (p.perm_[from.label - 1] != from.label && p.perm_[from.label - 1] != to.label)
        throw Error("ParseError", "label repeated across cycles");
      p.perm_[from.label - 1] = to.label;
      p.deco_[to.label - 1] = to.deco;
    }
  }
  // validate bijection
  std::vector<bool> seen(size, false);
  for (int l = 1; l <= size; ++l) {
    int v = p.perm_[l - 1];
    if (seen[v - 1]) throw Error("ParseError", "cycle notation is not a bijection");
    seen[v - 1] = true;
  }
  return p;
}

}  // namespace ptolemy
