#include "ptolemy/quantize.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ptolemy {

OperatorWord functor(int size, const Move& m) {
  switch (m.kind) {
    case Move::Kind::Rho:
      return OperatorWord::perm(DecoratedPermutation::rotation(size, m.i, 1));
    case Move::Kind::RhoInv:
      return OperatorWord::perm(DecoratedPermutation::rotation(size, m.i, -1));
    case Move::Kind::Omega:
      return OperatorWord::letter(size, Letter(false, DecoratedIndex(m.i, 0), DecoratedIndex(m.j, 0)));
    case Move::Kind::OmegaInv:
      return OperatorWord::letter(size, Letter(true, DecoratedIndex(m.i, 0), DecoratedIndex(m.j, 0)));
    case Move::Kind::Perm:
      return OperatorWord::perm(DecoratedPermutation::permutation(m.sigma));
  }
  throw Error("BadLabel", "bad move");
}

OperatorWord functor(int size, const GroupoidWord& w) {
  OperatorWord r = OperatorWord::identity(size);
  for (const Move& m : w) r = r.multiply(functor(size, m));
  return r;
}

namespace {

void append_rho_power(GroupoidWord& w, int label, int amount) {
  switch (dec_norm(amount)) {
    case 0: break;
    case 1: w.push_back(Move::rho(label)); break;
    case 2: w.push_back(Move::rho_inv(label)); break;
  }
}

}  // namespace

GroupoidWord flip_word(const DecoratedTriangulation& tri, SideRef e) {
  SideRef far = tri.partner(e);
  if (far.tri == e.tri)
    throw Error("OmegaNotApplicable", "edge at (" + std::to_string(e.tri) + "," +
                                          std::to_string(e.side) + ") is glued to its own triangle");
  int ki = e.side;                 // rho_i^ki brings the edge to side 0 of i
  int kj = dec_norm(far.side - 1); // rho_j^kj brings it to side 1 of j
  GroupoidWord w;
  append_rho_power(w, e.tri, ki);
  append_rho_power(w, far.tri, kj);
  w.push_back(Move::omega(e.tri, far.tri));
  append_rho_power(w, far.tri, -kj);
  append_rho_power(w, e.tri, -ki);
  return w;
}

GroupoidWord two_crossing_twist(const DecoratedTriangulation& tri, SideRef e) {
  SideRef far = tri.partner(e);
  if (far.tri == e.tri)
    throw Error("NotTwoCrossing", "edge is glued to its own triangle");
  int shared = 0;
  for (int s = 0; s < 3; ++s)
    if (tri.partner({e.tri, s}).tri == far.tri) ++shared;
  if (shared != 2)
    throw Error("NotTwoCrossing", "triangles " + std::to_string(e.tri) + " and " +
                                      std::to_string(far.tri) + " share " +
                                      std::to_string(shared) + " edges, need exactly 2");
  return flip_word(tri, e);
}

GroupoidWord puncture_twist(const DecoratedTriangulation& tri, int tri_label, int corner) {
  auto cycle = tri.corner_cycle(tri_label, corner);
  int valence = static_cast<int>(cycle.size());
  if (valence < 2)
    throw Error("DegeneratePuncture", "puncture has valence " + std::to_string(valence));
  // Edges issued from the puncture, counterclockwise: side c+1 of each corner.
  std::vector<SideRef> edges;
  for (auto [t, c] : cycle) edges.push_back({t, (c + 1) % 3});
  auto canon = [&](SideRef e) { return std::min(e, tri.partner(e)); };

  // The recipe flips every edge of the fan except the one standing in for
  // the boundary of the annular neighborhood. With all edges distinct that
  // is the last edge; a blown-down boundary appears as one loop edge seen
  // twice, and the fan is the run strictly between its two visits.
  std::vector<SideRef> fan;
  std::map<SideRef, int> count;
  for (SideRef e : edges) ++count[canon(e)];
  int doubled = 0, extra = 0;
  SideRef loop{};
  for (auto& [k, v] : count) {
    if (v == 2) {
      ++doubled;
      loop = k;
    } else if (v > 2) {
      ++extra;
    }
  }
  if (doubled == 0 && extra == 0) {
    fan.assign(edges.begin(), edges.end() - 1);
  } else if (doubled == 1 && extra == 0) {
    int first = -1, second = -1;
    for (int k = 0; k < valence; ++k)
      if (canon(edges[k]) == loop) (first < 0 ? first : second) = k;
    for (int k = first + 1; k < second; ++k) fan.push_back(edges[k]);
    if (fan.empty())
      for (int k = (second + 1) % valence; k != first; k = (k + 1) % valence)
        fan.push_back(edges[k]);
  } else {
    throw Error("DegeneratePuncture", "edges repeat around the puncture beyond one boundary loop");
  }
  if (fan.empty()) throw Error("DegeneratePuncture", "empty boundary fan");

  GroupoidWord word;
  DecoratedTriangulation cur = tri;
  for (size_t m = 0; m < fan.size(); ++m) {
    GroupoidWord flip;
    try {
      flip = flip_word(cur, fan[m]);
    } catch (const Error& e) {
      throw Error("DegeneratePuncture", std::string("fan edge is not flippable: ") + e.what());
    }
    for (const Move& mv : flip) {
      Relocation reloc;
      cur = cur.apply(mv, &reloc);
      for (size_t t = m + 1; t < fan.size(); ++t) fan[t] = reloc(fan[t]);
      word.push_back(mv);
    }
  }
  // Marked corners drift under the bare flips; close with rho fixups so the
  // endpoint is decoration-preserving isomorphic to the start.
  auto fix = cur.isomorphism_up_to_rotation(tri);
  if (!fix)
    throw Error("DegeneratePuncture",
                "flip sequence left the mapping-class orbit; the star is not a boundary fan");
  for (int t = 1; t <= cur.triangle_count(); ++t) {
    switch (fix->rotations[t - 1]) {
      case 1: word.push_back(Move::rho(t)); break;
      case 2: word.push_back(Move::rho_inv(t)); break;
      default: break;
    }
  }
  return word;
}

std::map<std::string, GroupoidWord> chain_scene_twists() {
  auto conj = [](GroupoidWord u, GroupoidWord core) {
    GroupoidWord w = u;
    w.insert(w.end(), core.begin(), core.end());
    GroupoidWord ui = inverse(u);
    w.insert(w.end(), ui.begin(), ui.end());
    return w;
  };
  using M = Move;
  std::map<std::string, GroupoidWord> tw;
  // a: conjugate the decorated flip T[1,3^] by T[2v,3]
  tw["a"] = conj({M::rho_inv(2), M::omega(2, 3), M::rho(2)},
                 {M::rho(3), M::omega(1, 3), M::rho_inv(3)});
  // c: left-right mirror of a
  tw["c"] = conj({M::rho_inv(5), M::omega(5, 6), M::rho(5)},
                 {M::rho(6), M::omega(4, 6), M::rho_inv(6)});
  // b: conjugate T[3,4] by T'[6,4] T[4,1] T'[6,3]
  tw["b"] = conj({M::omega_inv(6, 4), M::omega(4, 1), M::omega_inv(6, 3)}, {M::omega(3, 4)});
  // e: conjugate T[2v,6^] by T[3,4] T[1,4] T'[6,3] T[4v,5] T[5v,6]
  tw["e"] = conj({M::omega(3, 4), M::omega(1, 4), M::omega_inv(6, 3), M::rho_inv(4),
                  M::omega(4, 5), M::rho(4), M::rho_inv(5), M::omega(5, 6), M::rho(5)},
                 {M::rho_inv(2), M::rho(6), M::omega(2, 6), M::rho_inv(6), M::rho(2)});
  // f: left-right mirror of e
  tw["f"] = conj({M::omega(6, 1), M::omega(4, 1), M::omega_inv(3, 6), M::rho_inv(1),
                  M::omega(1, 2), M::rho(1), M::rho_inv(2), M::omega(2, 3), M::rho(2)},
                 {M::rho_inv(5), M::rho(3), M::omega(5, 3), M::rho_inv(3), M::rho(5)});
  return tw;
}

std::string data_dir() {
  if (const char* env = std::getenv("PTOLEMY_DATA")) return env;
  return "data";
}

RelationInstance RelationInstance::load(const std::string& path, const std::string& dir) {
  std::ifstream in(path);
  if (!in) throw Error("FileError", "cannot open relation file " + path);
  RelationInstance rel;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "relation") {
      std::string kind;
      ls >> kind;
      if (kind == "lantern") rel.kind = RelationKind::Lantern;
      else if (kind == "chain") rel.kind = RelationKind::Chain;
      else if (kind == "puncture") rel.kind = RelationKind::Puncture;
      else if (kind == "braid0") rel.kind = RelationKind::Braid0;
      else if (kind == "braid1") rel.kind = RelationKind::Braid1;
      else throw Error("ParseError", "unknown relation kind '" + kind + "'");
    } else if (key == "size") {
      ls >> rel.size;
    } else if (key == "scene") {
      std::string f;
      ls >> f;
      rel.scene = dir + "/" + f;
    } else if (key == "pi") {
      std::string rest;
      std::getline(ls, rest);
      rel.relabel_pi = DecoratedPermutation::parse_cycles(rel.size, rest);
    } else if (key == "twist") {
      std::string name, mode;
      ls >> name >> mode;
      std::string rest;
      std::getline(ls, rest);
      if (mode == "word") {
        rel.twists.emplace(name, OperatorWord::parse(rel.size, rest));
      } else if (mode == "ad") {
        size_t sep = rest.find(';');
        if (sep == std::string::npos) throw Error("ParseError", "ad twist needs 'U ; core'");
        OperatorWord u = OperatorWord::parse(rel.size, rest.substr(0, sep));
        OperatorWord core = OperatorWord::parse(rel.size, rest.substr(sep + 1));
        rel.twists.emplace(name, core.conjugate_by(u));
      } else {
        throw Error("ParseError", "unknown twist mode '" + mode + "'");
      }
    } else if (key == "script") {
      std::string role, f;
      ls >> role >> f;
      rel.scripts.emplace(role, dir + "/" + f);
    } else {
      throw Error("ParseError", "unknown relation-file key '" + key + "'");
    }
  }
  if (rel.size <= 0) throw Error("ParseError", "relation file missing size");
  return rel;
}

namespace {

// Replays a script file and returns its final word; start must match the
// computed word exactly when the script embeds one.
OperatorWord replay_stage(const std::string& path, int size, const OperatorWord& start,
                          const std::optional<OperatorWord>& expected, std::vector<std::string>& log,
                          const std::string& stage) {
  Script sc = Script::load(size, path);
  if (sc.start && !(*sc.start == start))
    throw Error("NotEstablished", stage + ": script start differs from the computed word;\n  computed " +
                                      start.str() + "\n  script   " + sc.start->str());
  ReplayReport rep = check_script(start, sc, expected);
  if (!rep.ok)
    throw Error("NotEstablished", stage + " failed at item " + std::to_string(rep.failed_item + 1) +
                                      ": " + rep.message);
  log.push_back(stage + ": " + std::to_string(rep.steps_applied) + " steps, final exponent " +
                std::to_string(rep.final_word.zeta_exp()));
  return rep.final_word;
}

const OperatorWord& named(const RelationInstance& rel, const std::string& name) {
  auto it = rel.twists.find(name);
  if (it == rel.twists.end()) throw Error("NotEstablished", "missing twist '" + name + "'");
  return it->second;
}

const std::string& script_path(const RelationInstance& rel, const std::string& role) {
  auto it = rel.scripts.find(role);
  if (it == rel.scripts.end()) throw Error("NotEstablished", "missing script '" + role + "'");
  return it->second;
}

}  // namespace

LiftOutcome lift_exponent(const RelationInstance& rel, LiftMethod method,
                          const SearchLimits& limits, const std::string& dir) {
  LiftOutcome out;
  try {
    switch (rel.kind) {
      case RelationKind::Chain: {
        if (method == LiftMethod::Search)
          throw Error("NotEstablished", "chain relation exceeds the search budget; use scripts");
        // End-to-end: scene -> groupoid twist words -> functor -> scripts.
        DecoratedTriangulation scene = DecoratedTriangulation::load(
            rel.scene ? *rel.scene : dir + "/scenes/chain_torus.tri");
        auto words = chain_scene_twists();
        std::map<std::string, OperatorWord> normalized;
        for (const auto& [curve, gw] : words) {
          DecoratedTriangulation end = scene.apply_word(gw);
          if (!end.isomorphism(scene))
            throw Error("NotEstablished", "twist " + curve + " endpoint is not isomorphic to the scene");
          OperatorWord raw = functor(rel.size, gw);
          normalized.emplace(curve, replay_stage(script_path(rel, "twist_" + curve), rel.size, raw,
                                                 std::nullopt, out.log, "twist_" + curve));
        }
        const OperatorWord &Ga = normalized.at("a"), &Gb = normalized.at("b"),
                           &Gc = normalized.at("c"), &Ge = normalized.at("e"),
                           &Gf = normalized.at("f");
        OperatorWord p1 = Gc.multiply(Gb).multiply(Ga);
        OperatorWord w1 = replay_stage(script_path(rel, "product"), rel.size, p1, std::nullopt,
                                       out.log, "chain product");
        if (w1.zeta_exp() != 1) throw Error("NotEstablished", "product checkpoint exponent != 1");
        OperatorWord w2 = replay_stage(script_path(rel, "square"), rel.size, w1.multiply(w1),
                                       std::nullopt, out.log, "chain square");
        if (w2.zeta_exp() != 5) throw Error("NotEstablished", "square checkpoint exponent != 5");
        OperatorWord expected = OperatorWord::scalar(rel.size, 12).multiply(Gf).multiply(Ge);
        OperatorWord w4 = replay_stage(script_path(rel, "fourth"), rel.size, w2.multiply(w2),
                                       expected, out.log, "chain fourth power");
        if (w4.zeta_exp() != 12) throw Error("NotEstablished", "final checkpoint exponent != 12");
        // (G_c G_b G_a)^4 = zeta^12 G_f G_e with the normalized twists
        // D~_x = (zeta^6 G_x)^-1 gives (D~_a D~_b D~_c)^4 = zeta^(-60-12) D~_e D~_f.
        out.raw_exp = w4.zeta_exp();
        out.normalized_exp = -60 - w4.zeta_exp();
        out.z_exp = -out.normalized_exp / 6;
        out.ok = true;
        out.detail = "chain lift zeta^" + std::to_string(out.normalized_exp) + " = z^" +
                     std::to_string(*out.z_exp);
        return out;
      }
      case RelationKind::Lantern: {
        if (method == LiftMethod::Search)
          throw Error("NotEstablished", "lantern relation exceeds the search budget; use scripts");
        OperatorWord w12 = replay_stage(script_path(rel, "a12"), rel.size, named(rel, "a12"),
                                        std::nullopt, out.log, "lantern a12");
        OperatorWord w23 = replay_stage(script_path(rel, "a23"), rel.size, named(rel, "a23"),
                                        std::nullopt, out.log, "lantern a23");
        OperatorWord w13 = replay_stage(script_path(rel, "a13"), rel.size, named(rel, "a13"),
                                        std::nullopt, out.log, "lantern a13");
        OperatorWord start = w12.multiply(w23).multiply(w13);
        OperatorWord rhs = named(rel, "a2").multiply(named(rel, "a1")).multiply(named(rel, "a0"))
                               .multiply(named(rel, "a3"));
        long long y = 6;
        OperatorWord expected = OperatorWord::scalar(rel.size, y).multiply(rhs);
        OperatorWord fin = replay_stage(script_path(rel, "product"), rel.size, start, expected,
                                        out.log, "lantern product");
        // W12 W23 W13 = zeta^Y W2 W1 W0 W3; with D~ = zeta^-6 W^-1 the
        // normalized lantern lift is zeta^(6-Y): trivial exactly at Y = 6.
        LiftOutcome o;
        o.raw_exp = fin.zeta_exp();
        o.normalized_exp = 6 - fin.zeta_exp();
        o.z_exp = (o.normalized_exp % 6 == 0) ? std::optional<long long>(-o.normalized_exp / 6)
                                              : std::nullopt;
        o.log = out.log;
        o.ok = true;
        o.detail = "lantern lift zeta^" + std::to_string(o.raw_exp) +
                   ", normalized zeta^" + std::to_string(o.normalized_exp);
        return o;
      }
      case RelationKind::Puncture: {
        if (method == LiftMethod::Search)
          throw Error("NotEstablished", "puncture relation exceeds the search budget; use scripts");
        if (!rel.relabel_pi) throw Error("NotEstablished", "puncture relation needs pi");
        OperatorWord w12 = replay_stage(script_path(rel, "a12"), rel.size, named(rel, "a12"),
                                        std::nullopt, out.log, "puncture a12");
        OperatorWord w23 = w12.relabel(*rel.relabel_pi);
        OperatorWord w31 = w23.relabel(*rel.relabel_pi);
        if (!(w31.relabel(*rel.relabel_pi) == w12))
          throw Error("NotEstablished", "pi^3 does not return a12");
        OperatorWord start = w12.multiply(w23).multiply(w31);
        OperatorWord rhs = named(rel, "a2").multiply(named(rel, "a3")).multiply(named(rel, "a1"));
        OperatorWord expected = OperatorWord::scalar(rel.size, 6).multiply(rhs);
        OperatorWord fin = replay_stage(script_path(rel, "product"), rel.size, start, expected,
                                        out.log, "puncture product");
        // W12 W23 W31 = zeta^Y W2 W3 W1 gives D~31 D~23 D~12 = zeta^-Y (...),
        // i.e. the puncture relation lifts to z^(Y/6).
        LiftOutcome o;
        o.raw_exp = fin.zeta_exp();
        o.normalized_exp = -fin.zeta_exp();
        o.z_exp = (o.normalized_exp % -6 == 0) ? std::optional<long long>(o.normalized_exp / -6)
                                               : std::nullopt;
        o.log = out.log;
        o.ok = true;
        o.detail = "puncture lift zeta^" + std::to_string(o.raw_exp) + " = z^" +
                   std::to_string(o.z_exp.value_or(0)) + " per puncture";
        return o;
      }
      case RelationKind::Braid0:
      case RelationKind::Braid1: {
        const OperatorWord &x = named(rel, "x"), &y = named(rel, "y");
        OperatorWord w = (rel.kind == RelationKind::Braid0)
                             ? x.multiply(y).multiply(x.inverse()).multiply(y.inverse())
                             : x.multiply(y).multiply(x).multiply(
                                   y.multiply(x).multiply(y).inverse());
        if (method == LiftMethod::Script) {
          auto it = rel.scripts.find("product");
          if (it == rel.scripts.end())
            throw Error("NotEstablished", "braid relation has no script; use search");
          OperatorWord fin = replay_stage(it->second, rel.size, w,
                                          OperatorWord::identity(rel.size), out.log, "braid");
          out.raw_exp = fin.zeta_exp();
        } else {
          auto nf = normalize_bounded(w, limits);
          if (!nf) throw Error("NotEstablished", "search budget exhausted on the braid word");
          if (!nf->tail.is_identity())
            throw Error("NotEstablished", "braid word reduced to a nontrivial permutation");
          out.raw_exp = nf->zeta_exp;
          out.log.push_back("braid word normalized by search");
        }
        out.normalized_exp = -out.raw_exp;
        out.z_exp = 0;
        out.ok = (out.raw_exp == 0);
        out.detail = out.ok ? "braid relation lifts trivially"
                            : "braid lift zeta^" + std::to_string(out.raw_exp);
        if (!out.ok) out.detail = "NotEstablished: " + out.detail;
        return out;
      }
    }
  } catch (const Error& e) {
    out.ok = false;
    out.detail = e.what();
    return out;
  }
  out.detail = "NotEstablished: unknown relation";
  return out;
}

}  // namespace ptolemy
