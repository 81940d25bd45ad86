// Acceptance suite: one pass/fail line per criterion, exact integer checks,
// wall-clock limits enforced.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "ptolemy/cohomology.hpp"
#include "ptolemy/quantize.hpp"
#include "ptolemy/rewrite.hpp"
#include "ptolemy/search.hpp"
#include "ptolemy/surface.hpp"

using namespace ptolemy;

namespace {

const std::string kData = PTOLEMY_DATA_DIR;

int failures = 0;

void criterion(int number, const std::string& name, double time_limit_s,
               const std::function<std::string()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string problem;
  try {
    problem = body();
  } catch (const std::exception& e) {
    problem = e.what();
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (problem.empty() && dt > time_limit_s) {
    std::ostringstream os;
    os << "time limit exceeded: " << dt << "s > " << time_limit_s << "s";
    problem = os.str();
  }
  if (problem.empty()) {
    std::printf("[PASS] criterion %d: %s (%.3fs)\n", number, name.c_str(), dt);
  } else {
    std::printf("[FAIL] criterion %d: %s (%.3fs): %s\n", number, name.c_str(), dt,
                problem.c_str());
    ++failures;
  }
}

std::string check(bool ok, const std::string& msg) { return ok ? "" : msg; }

// ---------------------------------------------------------------------------

std::string groupoid_suite() {
  auto scene = DecoratedTriangulation::load(kData + "/scenes/chain_torus.tri");
  auto rep = relation_suite(scene, 4, 2026);
  if (!rep.ok()) return "chain scene: " + rep.failures.front();
  int total = rep.instances;
  std::mt19937_64 rng(2026);
  for (int k = 0; k < 100; ++k) {
    int n = (k % 2 == 0) ? 4 : 6;
    auto t = DecoratedTriangulation::random(n, rng);
    auto r = relation_suite(t, 2, 1000 + k);
    total += r.instances;
    if (!r.ok()) return "random scene " + std::to_string(k) + ": " + r.failures.front();
  }
  if (total < 1000) return "suspiciously few relation instances";
  return "";
}

std::string functor_consistency() {
  SearchLimits lim = default_limits();
  auto pent = OperatorWord::parse(3, "T[1,2] T[1,3] T[2,3]")
                  .multiply(OperatorWord::parse(3, "T[2,3] T[1,2]").inverse());
  auto nf = normalize_bounded(pent, lim);
  if (!nf || nf->zeta_exp != 0 || !nf->tail.is_identity())
    return "pentagon word pair did not reduce to the trivial scalar";
  auto inv = normalize_bounded(OperatorWord::parse(2, "T[1,2] T[2,1^]"), lim);
  if (!inv) return "inversion word did not reduce";
  if (inv->zeta_exp != 1) return "inversion exponent is not 1";
  if (!(inv->tail == DecoratedPermutation::parse_cycles(2, "(1 2 1^)")))
    return "inversion tail is not P[(1 2 1^)]";
  return "";
}

std::string lantern_lift() {
  auto rel = RelationInstance::load(kData + "/relations/lantern.rel", kData);
  auto out = lift_exponent(rel, LiftMethod::Script, default_limits(), kData);
  if (!out.ok) return out.detail;
  if (out.raw_exp != 6) return "lantern exponent is " + std::to_string(out.raw_exp) + ", not 6";
  if (out.normalized_exp != 0) return "normalized lantern lift is not trivial";
  return "";
}

std::string chain_lift() {
  auto rel = RelationInstance::load(kData + "/relations/chain.rel", kData);
  auto out = lift_exponent(rel, LiftMethod::Script, default_limits(), kData);
  if (!out.ok) return out.detail;
  if (out.raw_exp != 12) return "final checkpoint exponent is not 12";
  if (out.normalized_exp != -72)
    return "chain lift is zeta^" + std::to_string(out.normalized_exp) + ", not zeta^-72";
  if (!out.z_exp || *out.z_exp != 12) return "chain lift is not z^12";
  // the staged checkpoints 1 and 5 are asserted inside lift_exponent; make
  // sure the log shows all three stages ran
  int stages = 0;
  for (auto& l : out.log)
    if (l.find("chain") != std::string::npos) ++stages;
  if (stages != 3) return "expected the product/square/fourth staging";
  return "";
}

std::string puncture_lift() {
  auto rel = RelationInstance::load(kData + "/relations/puncture.rel", kData);
  auto out = lift_exponent(rel, LiftMethod::Script, default_limits(), kData);
  if (!out.ok) return out.detail;
  if (out.raw_exp != 6) return "puncture exponent is " + std::to_string(out.raw_exp) + ", not 6";
  if (!out.z_exp || *out.z_exp != 1) return "puncture lift is not z^1";
  // relabel-invariance: pi carries a12 to the other two twist words
  Script a12 = Script::load_file(kData + "/scripts/puncture_a12.script");
  auto w12 = check_script(*a12.start, a12, std::nullopt).final_word;
  auto pi = *rel.relabel_pi;
  auto w23 = w12.relabel(pi);
  auto w31 = w23.relabel(pi);
  auto expect23 =
      OperatorWord::parse(7, "T[7^,2^] T[7^,1^] T[7^,2v] T[7^,5v] T[7^,6] T[7^,5]");
  auto expect31 = OperatorWord::parse(7, "T[7,5v] T[7,6] T[7,5] T[7,4] T[7,3^] T[7,4^]");
  if (!(w23 == expect23)) return "pi(a12) is not the expected a23 word";
  if (!(w31 == expect31)) return "pi^2(a12) is not the expected a31 word";
  if (!(w31.relabel(pi) == w12)) return "pi^3 is not the identity on the twist word";
  return "";
}

std::string class_computation() {
  LiftData d;
  d.chain_exp = 12;
  d.puncture_exps = {1, 1, 1, 1};
  for (int g : {3, 4, 7}) {
    auto c = class_from_lifts(d, g, 4);
    if (c.chi != 12 || c.euler != std::vector<long long>{1, 1, 1, 1})
      return "class at genus " + std::to_string(g) + " is not 12*chi + sum e_i";
  }
  auto c2 = class_from_lifts(d, 2, 4);
  if (c2.chi != 2 || c2.chi_order != 10) return "genus-2 chi coefficient is not 2 mod 10";
  auto e2 = change_coefficients(c2, {CoefficientMap::Kind::EmbedDivisible, 0});
  if (e2.chi != 0) return "divisible coefficients did not kill the genus-2 chi part";
  if (e2.euler != c2.euler) return "divisible coefficients changed the euler part";
  return "";
}

// --- criterion 7 helpers

OperatorWord random_word(int n, int len, std::mt19937_64& rng, bool with_tail = true) {
  OperatorWord w(n);
  auto& ls = w.mutable_letters();
  for (int k = 0; k < len; ++k) {
    int a = 1 + static_cast<int>(rng() % n);
    int b = 1 + static_cast<int>(rng() % (n - 1));
    if (b >= a) ++b;
    ls.emplace_back(rng() % 2 == 0, DecoratedIndex(a, static_cast<int>(rng() % 3)),
                    DecoratedIndex(b, static_cast<int>(rng() % 3)));
  }
  if (with_tail) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i + 1;
    std::shuffle(img.begin(), img.end(), rng);
    w.mutable_tail() = DecoratedPermutation::permutation(img);
    for (int l = 1; l <= n; ++l) w.mutable_tail().pre_rotate(l, static_cast<int>(rng() % 3));
  }
  return w;
}

std::vector<Step> applicable_steps(const OperatorWord& w) {
  std::vector<Step> out;
  for (int p = 1; p <= w.length(); ++p) {
    for (Rule r : {Rule::Pentagon, Rule::Inversion, Rule::Symmetry, Rule::Commute, Rule::Cancel}) {
      for (bool fwd : {true, false}) {
        Step s;
        s.rule = r;
        s.forward = fwd;
        s.pos = p;
        if (r == Rule::Cancel && !fwd) continue;    // insertion needs a binding
        if (r == Rule::Inversion && !fwd) {
          // barred-pair removal only (insertion needs a binding)
        }
        try {
          apply_step(w, s);
          out.push_back(s);
        } catch (const Error&) {
        }
      }
    }
  }
  return out;
}

std::string property_suites() {
  std::mt19937_64 rng(424242);

  // decoration arithmetic: triple application of a rotation is the identity
  for (int k = 0; k < 1000; ++k) {
    int n = 2 + static_cast<int>(rng() % 6);
    int l = 1 + static_cast<int>(rng() % n);
    auto r = DecoratedPermutation::rotation(n, l, 1);
    auto idx = DecoratedIndex(1 + static_cast<int>(rng() % n), static_cast<int>(rng() % 3));
    if (!(r.apply(r.apply(r.apply(idx))) == idx)) return "rotation cubed moved an index";
    if (!r.compose(r).compose(r).is_identity()) return "rotation cubed is not the identity";
  }

  // step reversibility on random words
  int reversed = 0;
  for (int k = 0; k < 4000 && reversed < 1000; ++k) {
    auto w = random_word(4 + 2 * static_cast<int>(rng() % 2), 4, rng);
    auto steps = applicable_steps(w);
    if (steps.empty()) continue;
    const Step& s = steps[rng() % steps.size()];
    auto v = apply_step(w, s);
    Step back = s;
    back.forward = !s.forward;
    if (s.rule == Rule::Inversion && s.forward) {
      // removal: the inverse insertion needs the removed pair's indices
      back.bind_a = w.letters()[s.pos - 1].a;
      back.bind_b = w.letters()[s.pos - 1].b;
    }
    if (s.rule == Rule::Inversion && !s.forward) {
      back.bind_a = w.letters()[s.pos].a;
      back.bind_b = w.letters()[s.pos].b;
    }
    if (s.rule == Rule::Cancel && s.forward) {
      back.bind_letter = w.letters()[s.pos - 1];
    }
    auto u = apply_step(v, back);
    if (!(u == w)) return "step " + s.str() + " is not reversible";
    ++reversed;
  }
  if (reversed < 1000) return "not enough reversibility cases";

  // scalar ledger: random kernel walks change the exponent only via
  // inversions, by +-1 each
  int walks = 0;
  for (int k = 0; k < 1500 && walks < 1000; ++k) {
    auto w = random_word(4, 5, rng, false);
    long long exp = w.zeta_exp();
    int signed_inversions = 0;
    OperatorWord cur = w;
    for (int stepk = 0; stepk < 6; ++stepk) {
      auto steps = applicable_steps(cur);
      if (steps.empty()) break;
      const Step& s = steps[rng() % steps.size()];
      auto next = apply_step(cur, s);
      long long delta = next.zeta_exp() - cur.zeta_exp();
      if (s.rule == Rule::Inversion) {
        if (delta != (s.forward ? 1 : -1)) return "inversion changed the exponent by " +
                                                  std::to_string(delta);
        signed_inversions += static_cast<int>(delta);
      } else if (delta != 0) {
        return rule_name(s.rule) + " changed the exponent";
      }
      cur = next;
    }
    if (cur.zeta_exp() != exp + signed_inversions) return "scalar ledger mismatch";
    ++walks;
  }
  if (walks < 1000) return "not enough ledger cases";

  // normal-form canonicity across multiplication orders
  for (int k = 0; k < 1000; ++k) {
    int n = 3 + static_cast<int>(rng() % 4);
    auto a = random_word(n, 1 + static_cast<int>(rng() % 3), rng);
    auto b = random_word(n, 1 + static_cast<int>(rng() % 3), rng);
    auto c = random_word(n, 1 + static_cast<int>(rng() % 3), rng);
    if (!(a.multiply(b).multiply(c) == a.multiply(b.multiply(c))))
      return "normal form depends on the multiplication order";
  }

  // lift invariance under conjugation and relabeling of the inversion
  // relation word
  SearchLimits lim;
  lim.node_budget = 300000;
  OperatorWord base(4);
  base.mutable_letters().emplace_back(false, DecoratedIndex(1, 0), DecoratedIndex(2, 0));
  base.mutable_letters().emplace_back(false, DecoratedIndex(2, 0), DecoratedIndex(1, 1));
  base = base.multiply(OperatorWord::perm(
      DecoratedPermutation::inversion_cycle(4, DecoratedIndex(1, 0), DecoratedIndex(2, 0))
          .inverse()));
  int lifts = 0;
  for (int k = 0; k < 2500 && lifts < 1000; ++k) {
    OperatorWord w = base;
    if (rng() % 2 == 0) {
      auto u = random_word(4, 1, rng, false);
      w = w.conjugate_by(u);
    } else {
      std::vector<int> img = {1, 2, 3, 4};
      std::shuffle(img.begin(), img.end(), rng);
      auto p = DecoratedPermutation::permutation(img);
      for (int l = 1; l <= 4; ++l) p.pre_rotate(l, static_cast<int>(rng() % 3));
      w = w.relabel(p);
    }
    auto nf = normalize_bounded(w, lim);
    if (!nf) continue;
    if (nf->zeta_exp != 1 || !nf->tail.is_identity())
      return "conjugated/relabeled inversion relation lift changed";
    ++lifts;
  }
  if (lifts < 1000) return "not enough lift-invariance cases (" + std::to_string(lifts) + ")";
  return "";
}

std::string search_sanity() {
  SearchLimits lim = default_limits();
  auto inv = normalize_bounded(OperatorWord::parse(2, "T[1,2] T[2,1^]"), lim);
  if (!inv || inv->zeta_exp != 1) return "inversion lift not rediscovered";
  for (const char* relname : {"braid0", "braid1"}) {
    auto rel = RelationInstance::load(kData + "/relations/" + relname + ".rel", kData);
    auto out = lift_exponent(rel, LiftMethod::Search, lim, kData);
    if (!out.ok) return std::string(relname) + ": " + out.detail;
    if (out.raw_exp != 0) return std::string(relname) + " lift is not trivial";
  }
  return "";
}

}  // namespace

int main() {
  criterion(1, "groupoid presentation suite (chain scene + 100 random scenes)", 10.0,
            groupoid_suite);
  criterion(2, "pentagon pair and inversion word normalize exactly", 1.0, functor_consistency);
  criterion(3, "lantern lift replays to zeta^6", 1.0, lantern_lift);
  criterion(4, "chain lift end-to-end: zeta^-72 = z^12 with checkpoints 1, 5, 12", 5.0,
            chain_lift);
  criterion(5, "puncture lift replays to zeta^6 with pi-relabel invariance", 1.0, puncture_lift);
  criterion(6, "extension class arithmetic (Theorem, genus-2 torsion, divisible)", 1.0,
            class_computation);
  criterion(7, "property suites with >= 1000 randomized cases each", 60.0, property_suites);
  criterion(8, "search rediscovers the inversion and braid lifts unaided", 60.0, search_sanity);
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
