#include "doctest.h"
#include "ptolemy/dperm.hpp"

#include <random>
#include <vector>

using namespace ptolemy;

namespace {

DecoratedPermutation random_dperm(int n, std::mt19937_64& rng) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i + 1;
  std::shuffle(img.begin(), img.end(), rng);
  DecoratedPermutation p = DecoratedPermutation::permutation(img);
  for (int l = 1; l <= n; ++l)
    p = p.compose(DecoratedPermutation::rotation(n, l, static_cast<int>(rng() % 3)));
  return p;
}

}  // namespace

TEST_CASE("rotation cubes to the identity") {
  auto r = DecoratedPermutation::rotation(4, 2);
  CHECK(r.compose(r).compose(r).is_identity());
}

TEST_CASE("decorated cycle P_(1 2 1^) squares to the double rotation") {
  // P_(121^) = R_1 P_(12); brute-force against the 2-label wreath group:
  // enumerate its action on all decorated indexes.
  int n = 2;
  auto p = DecoratedPermutation::parse_cycles(n, "(1 2 1^)");
  CHECK(p.apply(DecoratedIndex(1, 0)) == DecoratedIndex(2, 0));
  CHECK(p.apply(DecoratedIndex(2, 0)) == DecoratedIndex(1, 1));
  auto sq = p.compose(p);
  // squared: perm = identity, decorations +1 on both labels
  for (int l = 1; l <= 2; ++l) {
    CHECK(sq.image(l) == l);
    CHECK(sq.deco_at(l) == 1);
  }
  // and the brute-force composition on every decorated index agrees
  for (int l = 1; l <= 2; ++l)
    for (int d = 0; d < 3; ++d)
      CHECK(sq.apply(DecoratedIndex(l, d)) == p.apply(p.apply(DecoratedIndex(l, d))));
}

TEST_CASE("P_sigma compose P_tau = P_(sigma tau) with zero decorations") {
  auto s = DecoratedPermutation::permutation({2, 3, 1});
  auto t = DecoratedPermutation::permutation({1, 3, 2});
  auto st = s.compose(t);
  for (int l = 1; l <= 3; ++l) {
    CHECK(st.deco_at(l) == 0);
    CHECK(st.image(l) == s.image(t.image(l)));
  }
}

TEST_CASE("group laws hold (exhaustive-ish random)") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    auto a = random_dperm(n, rng);
    auto b = random_dperm(n, rng);
    auto c = random_dperm(n, rng);
    CHECK(a.compose(b).compose(c) == a.compose(b.compose(c)));
    CHECK(a.compose(a.inverse()).is_identity());
    CHECK(a.inverse().compose(a).is_identity());
    // action is a homomorphism
    DecoratedIndex ix(1 + static_cast<int>(rng() % n), static_cast<int>(rng() % 3));
    CHECK(a.compose(b).apply(ix) == a.apply(b.apply(ix)));
  }
}

TEST_CASE("cycle notation round-trips") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + static_cast<int>(rng() % 6);
    auto p = random_dperm(n, rng);
    auto q = DecoratedPermutation::parse_cycles(n, p.cycles());
    CHECK(p == q);
  }
  CHECK(DecoratedPermutation::parse_cycles(4, "()").is_identity());
}

TEST_CASE("inversion cycle maps a -> b -> a-hat") {
  DecoratedIndex a(3, 2), b(1, 1);
  auto p = DecoratedPermutation::inversion_cycle(4, a, b);
  CHECK(p.apply(a) == b);
  CHECK(p.apply(b) == DecoratedIndex(3, 0));  // a-hat: deco 2+1 = 0
}

TEST_CASE("rotation acts as hat") {
  auto r = DecoratedPermutation::rotation(3, 2);
  CHECK(r.apply(DecoratedIndex(2, 0)) == DecoratedIndex(2, 1));
  CHECK(r.apply(DecoratedIndex(1, 0)) == DecoratedIndex(1, 0));
  auto rr = r.compose(r);
  CHECK(rr.apply(DecoratedIndex(2, 1)) == DecoratedIndex(2, 0));  // 1+2 = 0 mod 3
}
