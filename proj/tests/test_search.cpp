#include "doctest.h"
#include "ptolemy/quantize.hpp"
#include "ptolemy/search.hpp"

#include <random>

using namespace ptolemy;

namespace {

SearchLimits limits(size_t budget = 200000) {
  SearchLimits lim;
  lim.node_budget = budget;
  return lim;
}

OperatorWord random_letter_word(int n, int len, std::mt19937_64& rng) {
  OperatorWord w(n);
  auto& ls = w.mutable_letters();
  for (int k = 0; k < len; ++k) {
    int a = 1 + static_cast<int>(rng() % n);
    int b = 1 + static_cast<int>(rng() % (n - 1));
    if (b >= a) ++b;
    ls.emplace_back(rng() % 2 == 0, DecoratedIndex(a, static_cast<int>(rng() % 3)),
                    DecoratedIndex(b, static_cast<int>(rng() % 3)));
  }
  return w;
}

DecoratedPermutation random_dperm(int n, std::mt19937_64& rng) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i + 1;
  std::shuffle(img.begin(), img.end(), rng);
  auto p = DecoratedPermutation::permutation(img);
  for (int l = 1; l <= n; ++l) p.pre_rotate(l, static_cast<int>(rng() % 3));
  return p;
}

}  // namespace

TEST_CASE("normalize rediscovers the inversion lift") {
  auto w = OperatorWord::parse(2, "T[1,2] T[2,1^]");
  auto nf = normalize_bounded(w, limits());
  REQUIRE(nf.has_value());
  CHECK(nf->zeta_exp == 1);
  CHECK(nf->tail == DecoratedPermutation::parse_cycles(2, "(1 2 1^)"));
}

TEST_CASE("normalize reduces the pentagon word pair to the trivial scalar") {
  auto lhs = OperatorWord::parse(3, "T[1,2] T[1,3] T[2,3]");
  auto rhs = OperatorWord::parse(3, "T[2,3] T[1,2]");
  auto w = lhs.multiply(rhs.inverse());
  auto nf = normalize_bounded(w, limits());
  REQUIRE(nf.has_value());
  CHECK(nf->zeta_exp == 0);
  CHECK(nf->tail.is_identity());
}

TEST_CASE("normalize on the empty word") {
  auto nf = normalize_bounded(OperatorWord::identity(4), limits());
  REQUIRE(nf.has_value());
  CHECK(nf->zeta_exp == 0);
  CHECK(nf->tail.is_identity());
}

TEST_CASE("normalize emits a replayable kernel chain") {
  auto w = OperatorWord::parse(4, "T[3,1] T[1,3^] T[1,2] T[2,1^]");
  std::vector<Step> steps;
  auto nf = normalize_bounded(w, limits(), &steps);
  REQUIRE(nf.has_value());
  OperatorWord cur = w;
  for (const Step& st : steps) cur = apply_step(cur, st);
  CHECK(cur.length() == 0);
  CHECK(cur.zeta_exp() == nf->zeta_exp);
  CHECK(cur.tail() == nf->tail);
}

TEST_CASE("derive reaches a commuted and re-presented goal exactly") {
  auto start = OperatorWord::parse(4, "T[1,2] T[3,4]");
  auto goal = OperatorWord::parse(4, "T[4^,3v] T[1,2]");
  auto out = derive_steps(start, goal, limits());
  REQUIRE(out.found);
  CHECK(out.final_word == goal);
  OperatorWord cur = start;
  for (const Step& st : out.steps) cur = apply_step(cur, st);
  CHECK(cur == goal);
}

TEST_CASE("search is sound: every reported chain replays from the start") {
  std::mt19937_64 rng(77);
  int reduced = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int n = 3 + static_cast<int>(rng() % 3);
    auto w = random_letter_word(n, 4, rng);
    auto wfull = w.multiply(w.inverse());
    std::vector<Step> steps;
    auto nf = normalize_bounded(wfull, limits(50000), &steps);
    if (!nf) continue;
    ++reduced;
    OperatorWord cur = wfull;
    for (const Step& st : steps) cur = apply_step(cur, st);
    CHECK(cur.length() == 0);
    CHECK(cur.zeta_exp() == nf->zeta_exp);
    CHECK(nf->zeta_exp == 0);  // w w^-1 is the identity
    CHECK(nf->tail.is_identity());
  }
  CHECK(reduced == 60);
}

namespace {

// The inversion relation word: central of value zeta^1, so conjugates and
// relabels of it stay reducible to the letter-free form.
OperatorWord inversion_relation_word(int n, int a, int b) {
  OperatorWord pair(n);
  pair.mutable_letters().emplace_back(false, DecoratedIndex(a, 0), DecoratedIndex(b, 0));
  pair.mutable_letters().emplace_back(false, DecoratedIndex(b, 0), DecoratedIndex(a, 1));
  auto cyc = DecoratedPermutation::inversion_cycle(n, DecoratedIndex(a, 0), DecoratedIndex(b, 0));
  return pair.multiply(OperatorWord::perm(cyc.inverse()));
}

}  // namespace

TEST_CASE("normalization exponent is invariant under relabeling") {
  // Soundness against the permutation action: a relation word and its
  // relabel normalize to the same exponent.
  std::mt19937_64 rng(79);
  int done = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int n = 3 + static_cast<int>(rng() % 2);
    int a = 1 + static_cast<int>(rng() % n);
    int b = 1 + static_cast<int>(rng() % (n - 1));
    if (b >= a) ++b;
    auto w = inversion_relation_word(n, a, b);
    auto p = random_dperm(n, rng);
    auto nf1 = normalize_bounded(w, limits(100000));
    auto nf2 = normalize_bounded(w.relabel(p), limits(100000));
    REQUIRE(nf1.has_value());
    REQUIRE(nf2.has_value());
    ++done;
    CHECK(nf1->zeta_exp == 1);
    CHECK(nf1->zeta_exp == nf2->zeta_exp);
    CHECK(nf2->tail.is_identity());
  }
  CHECK(done == 40);
}

TEST_CASE("braid words from the chain twists reduce trivially by search") {
  auto Ga = OperatorWord::parse(6, "T[1,3^] T[1,2^]");
  auto Gb = OperatorWord::parse(6, "T[6,1] T[3,4] T[3,1] T[6,4]");
  auto Gc = OperatorWord::parse(6, "T[4,6^] T[4,5^]");
  auto braid0 = Ga.multiply(Gc).multiply(Ga.inverse()).multiply(Gc.inverse());
  auto nf0 = normalize_bounded(braid0, limits(1000000));
  REQUIRE(nf0.has_value());
  CHECK(nf0->zeta_exp == 0);
  CHECK(nf0->tail.is_identity());
  auto braid1 =
      Ga.multiply(Gb).multiply(Ga).multiply(Gb.multiply(Ga).multiply(Gb).inverse());
  auto nf1 = normalize_bounded(braid1, limits(1000000));
  REQUIRE(nf1.has_value());
  CHECK(nf1->zeta_exp == 0);
  CHECK(nf1->tail.is_identity());
}

TEST_CASE("search respects its node budget deterministically") {
  auto w = OperatorWord::parse(6, "T[1,2] T[3,4] T[5,6] T[1,3] T[2,4]");
  SearchLimits tiny;
  tiny.node_budget = 3;
  auto nf = normalize_bounded(w, tiny);
  CHECK(!nf.has_value());
  auto nf2 = normalize_bounded(w, tiny);
  CHECK(!nf2.has_value());
}

TEST_CASE("lift exponent is invariant under conjugation and relabeling") {
  auto base = inversion_relation_word(4, 1, 2);
  auto nf = normalize_bounded(base, limits());
  REQUIRE(nf.has_value());
  CHECK(nf->zeta_exp == 1);
  CHECK(nf->tail.is_identity());
  std::mt19937_64 rng(83);
  int conj_checked = 0;
  for (int trial = 0; trial < 25; ++trial) {
    auto u = random_letter_word(4, 2, rng);
    auto conj = base.conjugate_by(u);
    auto nfc = normalize_bounded(conj, limits(400000));
    if (nfc) {
      ++conj_checked;
      CHECK(nfc->zeta_exp == nf->zeta_exp);
      CHECK(nfc->tail.is_identity());
    }
    auto p = random_dperm(4, rng);
    auto nfr = normalize_bounded(base.relabel(p), limits(400000));
    REQUIRE(nfr.has_value());
    CHECK(nfr->zeta_exp == nf->zeta_exp);
  }
  CHECK(conj_checked > 10);
}
