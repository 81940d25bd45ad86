#include "ptolemy/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ptolemy {

std::string show(const Letter& l) {
  std::string s = l.bar ? "T'" : "T";
  s += '[';
  s += show(l.a);
  s += ',';
  s += show(l.b);
  s += ']';
  return s;
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
  }
  bool done() {
    skip();
    return i >= s.size();
  }
};

DecoratedIndex parse_index(Cursor& c) {
  c.skip();
  if (c.i >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.i])))
    throw Error("ParseError", "expected index in '" + c.s + "' at " + std::to_string(c.i));
  int label = 0;
  while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i])))
    label = label * 10 + (c.s[c.i++] - '0');
  int deco = 0;
  if (c.i < c.s.size() && c.s[c.i] == '^') { deco = 1; ++c.i; }
  else if (c.i < c.s.size() && c.s[c.i] == 'v') { deco = 2; ++c.i; }
  return DecoratedIndex(label, deco);
}

Letter parse_letter_at(Cursor& c) {
  c.skip();
  if (c.s[c.i] != 'T') throw Error("ParseError", "expected letter at " + std::to_string(c.i));
  ++c.i;
  bool bar = false;
  if (c.i < c.s.size() && c.s[c.i] == '\'') { bar = true; ++c.i; }
  if (c.i >= c.s.size() || c.s[c.i] != '[') throw Error("ParseError", "expected '['");
  ++c.i;
  DecoratedIndex a = parse_index(c);
  DecoratedIndex b = parse_index(c);
  c.skip();
  if (c.i >= c.s.size() || c.s[c.i] != ']') throw Error("ParseError", "expected ']'");
  ++c.i;
  return Letter(bar, a, b);
}

}  // namespace

Letter parse_letter(const std::string& text) {
  Cursor c{text};
  Letter l = parse_letter_at(c);
  if (!c.done()) throw Error("ParseError", "trailing input after letter");
  return l;
}

void OperatorWord::check_labels() const {
  for (const Letter& l : letters_)
    if (l.a.label < 1 || l.a.label > size_ || l.b.label < 1 || l.b.label > size_)
      throw Error("BadLabel", "letter index out of range in word of size " + std::to_string(size_));
  if (tail_.size() != size_) throw Error("SizeMismatch", "tail size differs from word size");
}

OperatorWord OperatorWord::multiply(const OperatorWord& rhs) const {
  if (size_ != rhs.size_) throw Error("SizeMismatch", "multiplying words of unequal size");
  OperatorWord r(size_);
  r.zeta_ = zeta_ + rhs.zeta_;
  r.letters_ = letters_;
  r.letters_.reserve(letters_.size() + rhs.letters_.size());
  for (const Letter& l : rhs.letters_)
    r.letters_.push_back(Letter(l.bar, tail_.apply(l.a), tail_.apply(l.b)));
  r.tail_ = tail_.compose(rhs.tail_);
  return r;
}

OperatorWord OperatorWord::inverse() const {
  OperatorWord r(size_);
  r.zeta_ = -zeta_;
  r.tail_ = tail_.inverse();
  r.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    r.letters_.push_back(Letter(!it->bar, r.tail_.apply(it->a), r.tail_.apply(it->b)));
  return r;
}

OperatorWord OperatorWord::conjugate_by(const OperatorWord& u) const {
  return u.multiply(*this).multiply(u.inverse());
}

OperatorWord OperatorWord::relabel(const DecoratedPermutation& p) const {
  if (p.size() != size_) throw Error("SizeMismatch", "relabeling with wrong-size permutation");
  OperatorWord r(size_);
  r.zeta_ = zeta_;
  r.letters_.reserve(letters_.size());
  for (const Letter& l : letters_)
    r.letters_.push_back(Letter(l.bar, p.apply(l.a), p.apply(l.b)));
  r.tail_ = p.compose(tail_).compose(p.inverse());
  return r;
}

OperatorWord OperatorWord::reduce_scalar(const ScalarGroup& g) const {
  OperatorWord r = *this;
  r.zeta_ = g.reduce(zeta_);
  return r;
}

std::vector<Letter> OperatorWord::canonical_letters() const {
  // Foata-style normal form: repeatedly extract the set of letters with no
  // earlier non-commuting letter, emitting each block sorted.
  std::vector<Letter> rest;
  rest.reserve(letters_.size());
  for (const Letter& l : letters_) rest.push_back(l.canonical());
  std::vector<Letter> out;
  out.reserve(rest.size());
  while (!rest.empty()) {
    std::vector<size_t> block;
    for (size_t i = 0; i < rest.size(); ++i) {
      bool free = true;
      for (size_t j = 0; j < i && free; ++j) {
        bool jtaken = std::find(block.begin(), block.end(), j) != block.end();
        if (!jtaken && (rest[i].support() & rest[j].support())) free = false;
      }
      // also must commute with earlier letters chosen into this block? No:
      // letters in one block pairwise commute only if supports are disjoint;
      // enforce that too so the block order is canonical.
      for (size_t j : block)
        if (rest[i].support() & rest[j].support()) { free = false; break; }
      if (free) block.push_back(i);
    }
    std::vector<Letter> blk;
    for (size_t i : block) blk.push_back(rest[i]);
    std::sort(blk.begin(), blk.end());
    out.insert(out.end(), blk.begin(), blk.end());
    std::vector<Letter> next;
    for (size_t i = 0; i < rest.size(); ++i)
      if (std::find(block.begin(), block.end(), i) == block.end()) next.push_back(rest[i]);
    rest.swap(next);
  }
  return out;
}

bool OperatorWord::equivalent(const OperatorWord& rhs) const {
  return size_ == rhs.size_ && zeta_ == rhs.zeta_ && tail_ == rhs.tail_ &&
         canonical_letters() == rhs.canonical_letters();
}

std::string OperatorWord::str() const {
  std::ostringstream out;
  bool any = false;
  if (zeta_ != 0) {
    out << "z^" << zeta_;
    any = true;
  }
  for (const Letter& l : letters_) {
    if (any) out << ' ';
    out << show(l);
    any = true;
  }
  if (!tail_.is_identity()) {
    if (any) out << ' ';
    out << "P[" << tail_.cycles() << "]";
    any = true;
  }
  if (!any) return "1";
  return out.str();
}

OperatorWord OperatorWord::parse(int size, const std::string& text) {
  OperatorWord w(size);
  Cursor c{text};
  bool seen_tail = false;
  while (!c.done()) {
    char ch = c.s[c.i];
    if (ch == '1') {
      ++c.i;
      continue;
    }
    if (ch == 'z') {
      ++c.i;
      if (c.i >= c.s.size() || c.s[c.i] != '^') throw Error("ParseError", "expected '^' after z");
      ++c.i;
      bool neg = false;
      if (c.i < c.s.size() && (c.s[c.i] == '-' || c.s[c.i] == '+')) neg = (c.s[c.i++] == '-');
      long long v = 0;
      if (c.i >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.i])))
        throw Error("ParseError", "expected exponent after z^");
      while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i])))
        v = v * 10 + (c.s[c.i++] - '0');
      w.zeta_ += neg ? -v : v;
      continue;
    }
    if (ch == 'T') {
      if (seen_tail) throw Error("ParseError", "letters after the permutation tail");
      w.letters_.push_back(parse_letter_at(c));
      continue;
    }
    if (ch == 'P') {
      seen_tail = true;
      ++c.i;
      if (c.i >= c.s.size() || c.s[c.i] != '[') throw Error("ParseError", "expected '[' after P");
      size_t close = c.s.find(']', c.i);
      if (close == std::string::npos) throw Error("ParseError", "unterminated P[...]");
      std::string body = c.s.substr(c.i + 1, close - c.i - 1);
      c.i = close + 1;
      w.tail_ = w.tail_.compose(DecoratedPermutation::parse_cycles(size, body));
      continue;
    }
    throw Error("ParseError", std::string("unexpected character '") + ch + "' in word literal");
  }
  w.check_labels();
  return w;
}

}  // namespace ptolemy
