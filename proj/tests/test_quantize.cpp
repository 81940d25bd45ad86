#include "doctest.h"
#include "ptolemy/quantize.hpp"

#include <random>

using namespace ptolemy;

namespace {

const char* kChainScene = PTOLEMY_DATA_DIR "/scenes/chain_torus.tri";

DecoratedTriangulation chain_scene() { return DecoratedTriangulation::load(kChainScene); }

}  // namespace

TEST_CASE("functor on single moves") {
  CHECK(functor(6, Move::omega(1, 2)) == OperatorWord::parse(6, "T[1,2]"));
  CHECK(functor(6, Move::omega_inv(1, 2)) == OperatorWord::parse(6, "T'[1,2]"));
  CHECK(functor(6, GroupoidWord{Move::rho(1), Move::rho(1), Move::rho(1)}) ==
        OperatorWord::identity(6));
  CHECK(functor(6, GroupoidWord{Move::rho_inv(2), Move::omega(2, 3), Move::rho(2)}) ==
        OperatorWord::parse(6, "T[2v,3]"));
}

TEST_CASE("functor is multiplicative") {
  auto twists = chain_scene_twists();
  for (const auto& [name, w] : twists) {
    for (size_t cut = 0; cut <= w.size(); cut += 2) {
      GroupoidWord w1(w.begin(), w.begin() + cut), w2(w.begin() + cut, w.end());
      CHECK(functor(6, w) == functor(6, w1).multiply(functor(6, w2)));
    }
  }
}

TEST_CASE("omega and its inverse compose to the identity word after cancel") {
  auto w = functor(6, GroupoidWord{Move::omega(3, 4), Move::omega_inv(3, 4)});
  CHECK(w.length() == 2);
  Step s;
  s.rule = Rule::Cancel;
  s.pos = 1;
  CHECK(apply_step(w, s) == OperatorWord::identity(6));
}

TEST_CASE("chain twist words apply and return an isomorphic scene") {
  auto scene = chain_scene();
  auto twists = chain_scene_twists();
  REQUIRE(twists.size() == 5);
  for (const auto& [name, w] : twists) {
    CAPTURE(name);
    DecoratedTriangulation end = scene.apply_word(w);
    auto iso = end.isomorphism(scene);
    CHECK(iso.has_value());
  }
}

TEST_CASE("chain twist functor images match the ad-form words") {
  auto twists = chain_scene_twists();
  CHECK(functor(6, twists["a"]) == OperatorWord::parse(6, "T[2v,3] T[1,3^] T'[2v,3]"));
  CHECK(functor(6, twists["c"]) == OperatorWord::parse(6, "T[5v,6] T[4,6^] T'[5v,6]"));
  CHECK(functor(6, twists["b"]) ==
        OperatorWord::parse(6, "T'[6,4] T[4,1] T'[6,3] T[3,4] T[6,3] T'[4,1] T[6,4]"));
  CHECK(functor(6, twists["e"]) ==
        OperatorWord::parse(6,
                            "T[3,4] T[1,4] T'[6,3] T[4v,5] T[5v,6] T[2v,6^] "
                            "T'[5v,6] T'[4v,5] T[6,3] T'[1,4] T'[3,4]"));
}

TEST_CASE("two-crossing twist: the dressed flip realizing the a-twist") {
  auto scene = chain_scene();
  // After the T[2v,3] change of triangulation the annulus around the a-curve
  // is bounded by triangles 1 and 3.
  GroupoidWord u = {Move::rho_inv(2), Move::omega(2, 3), Move::rho(2)};
  auto mid = scene.apply_word(u);
  auto tw = two_crossing_twist(mid, SideRef{1, 0});
  CHECK(functor(6, tw) == OperatorWord::parse(6, "T[1,3^]"));
  // inapplicable edge
  CHECK_THROWS_WITH_AS(two_crossing_twist(scene, SideRef{1, 0}), doctest::Contains("NotTwoCrossing"),
                       Error);
}

namespace {

// Four-punctured sphere as the boundary of a tetrahedron: every puncture has
// a disk-like star of three distinct triangles and edges.
DecoratedTriangulation tetrahedron_scene() {
  std::vector<std::array<SideRef, 3>> table(4);
  table[0] = {SideRef{4, 1}, SideRef{2, 2}, SideRef{3, 1}};
  table[1] = {SideRef{4, 0}, SideRef{3, 2}, SideRef{1, 1}};
  table[2] = {SideRef{4, 2}, SideRef{1, 2}, SideRef{2, 1}};
  table[3] = {SideRef{2, 0}, SideRef{1, 0}, SideRef{3, 0}};
  return DecoratedTriangulation::build(table);
}

}  // namespace

TEST_CASE("conjugation produces the three-letter ad form") {
  // Ad(T[2v,3])(T[1,3^]) as a raw word: three letters before simplification.
  auto u = OperatorWord::parse(6, "T[2v,3]");
  auto w = OperatorWord::parse(6, "T[1,3^]").conjugate_by(u);
  CHECK(w.length() == 3);
  CHECK(w == OperatorWord::parse(6, "T[2v,3] T[1,3^] T'[2v,3]"));
  CHECK(w.conjugate_by(u.inverse()).zeta_exp() == 0);
}

TEST_CASE("relation instances load and verify") {
  const std::string data = PTOLEMY_DATA_DIR;
  auto lantern = RelationInstance::load(data + "/relations/lantern.rel", data);
  CHECK(lantern.kind == RelationKind::Lantern);
  CHECK(lantern.size == 8);
  CHECK(lantern.twists.count("a12") == 1);
  CHECK(lantern.twists.at("a12").length() == 11);  // 5 + 1 + 5 conjugated letters

  SearchLimits lim;
  lim.node_budget = 200000;
  auto out = lift_exponent(lantern, LiftMethod::Script, lim, data);
  CHECK(out.ok);
  CHECK(out.raw_exp == 6);
  CHECK(out.normalized_exp == 0);

  auto chain = RelationInstance::load(data + "/relations/chain.rel", data);
  auto cout_ = lift_exponent(chain, LiftMethod::Script, lim, data);
  CHECK(cout_.ok);
  CHECK(cout_.normalized_exp == -72);
  REQUIRE(cout_.z_exp.has_value());
  CHECK(*cout_.z_exp == 12);

  auto punct = RelationInstance::load(data + "/relations/puncture.rel", data);
  auto pout = lift_exponent(punct, LiftMethod::Script, lim, data);
  CHECK(pout.ok);
  CHECK(pout.raw_exp == 6);
  CHECK(pout.z_exp == 1);

  // trivial relation: x against itself commutes to nothing
  auto braid = RelationInstance::load(data + "/relations/braid0.rel", data);
  auto bout = lift_exponent(braid, LiftMethod::Search, lim, data);
  CHECK(bout.ok);
  CHECK(bout.raw_exp == 0);
}

TEST_CASE("puncture relabel symmetry reproduces the sibling twist words") {
  const std::string data = PTOLEMY_DATA_DIR;
  auto punct = RelationInstance::load(data + "/relations/puncture.rel", data);
  REQUIRE(punct.relabel_pi.has_value());
  auto w12 = OperatorWord::parse(7, "T[7v,4] T[7v,3^] T[7v,4^] T[7v,2^] T[7v,1^] T[7v,2v]");
  auto w23 = w12.relabel(*punct.relabel_pi);
  CHECK(w23 == OperatorWord::parse(7, "T[7^,2^] T[7^,1^] T[7^,2v] T[7^,5v] T[7^,6] T[7^,5]"));
  auto w31 = w23.relabel(*punct.relabel_pi);
  CHECK(w31 == OperatorWord::parse(7, "T[7,5v] T[7,6] T[7,5] T[7,4] T[7,3^] T[7,4^]"));
  CHECK(w31.relabel(*punct.relabel_pi) == w12);
}

TEST_CASE("size mismatches are rejected") {
  auto w6 = OperatorWord::parse(6, "T[1,2]");
  auto w4 = OperatorWord::parse(4, "T[1,2]");
  CHECK_THROWS_WITH_AS(w6.multiply(w4), doctest::Contains("SizeMismatch"), Error);
  CHECK_THROWS_WITH_AS(w6.relabel(DecoratedPermutation::identity(4)),
                       doctest::Contains("SizeMismatch"), Error);
}

TEST_CASE("puncture twist rejects interior punctures") {
  // An interior puncture is not the boundary of an annular fan: flipping its
  // star cannot land back in the mapping-class orbit.
  auto t = tetrahedron_scene();
  CHECK(t.genus() == 0);
  CHECK(t.puncture_count() == 4);
  CHECK_THROWS_WITH_AS(puncture_twist(t, 1, 0), doctest::Contains("DegeneratePuncture"), Error);
  // On the chain scene the single vertex meets every edge twice.
  auto scene = chain_scene();
  auto reps = scene.puncture_representatives();
  REQUIRE(reps.size() == 1);
  CHECK_THROWS_WITH_AS(puncture_twist(scene, reps[0].first, reps[0].second),
                       doctest::Contains("DegeneratePuncture"), Error);
}

TEST_CASE("puncture twist: endpoint isomorphic and fan length on boundary-like stars") {
  std::mt19937_64 rng(5);
  int attempted = 0;
  for (int trial = 0; trial < 4000 && attempted < 15; ++trial) {
    int n = 4 + 2 * static_cast<int>(rng() % 2);
    auto t = DecoratedTriangulation::random(n, rng);
    for (auto [tri, corner] : t.puncture_representatives()) {
      int valence = static_cast<int>(t.corner_cycle(tri, corner).size());
      if (valence < 2) continue;
      GroupoidWord w;
      try {
        w = puncture_twist(t, tri, corner);
      } catch (const Error&) {
        continue;  // not a boundary fan: out of scope for the recipe
      }
      ++attempted;
      auto end = t.apply_word(w);
      CHECK(end.isomorphism(t).has_value());
      // the word flips every fan edge once: s-1 flips for an s-edge star
      int omegas = 0;
      for (const Move& m : w)
        if (m.kind == Move::Kind::Omega) ++omegas;
      CHECK(omegas >= 1);
      CHECK(omegas < valence);
    }
  }
  CHECK(attempted > 0);
}
