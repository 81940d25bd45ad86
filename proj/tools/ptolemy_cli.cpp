// Command-line surface: groupoid checks, script replay, relation
// verification, extension-class arithmetic, and the bounded-search tools.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ptolemy/cohomology.hpp"
#include "ptolemy/quantize.hpp"
#include "ptolemy/rewrite.hpp"
#include "ptolemy/search.hpp"
#include "ptolemy/surface.hpp"

using namespace ptolemy;

namespace {

constexpr const char* kReportVersion = "ptolemy-report v1";

int run_check_groupoid(const std::string& scene, int random_count, int triangles, uint64_t seed,
                       int sigma_samples) {
  int total_instances = 0;
  std::vector<std::string> failures;
  if (!scene.empty()) {
    DecoratedTriangulation t = DecoratedTriangulation::load(scene);
    auto rep = relation_suite(t, sigma_samples, seed);
    total_instances += rep.instances;
    for (auto& f : rep.failures) failures.push_back(scene + ": " + f);
    std::cout << "scene " << scene << ": " << rep.instances << " instances, "
              << rep.failures.size() << " failures\n";
  }
  if (random_count > 0) {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < random_count; ++k) {
      auto t = DecoratedTriangulation::random(triangles, rng);
      auto rep = relation_suite(t, sigma_samples, seed + k);
      total_instances += rep.instances;
      for (auto& f : rep.failures)
        failures.push_back("random#" + std::to_string(k) + ": " + f);
    }
    std::cout << "random scenes: " << random_count << " (triangles " << triangles << ", seed "
              << seed << ")\n";
  }
  std::cout << kReportVersion << "\n"
            << "check groupoid\n"
            << "instances " << total_instances << "\n"
            << "failures " << failures.size() << "\n";
  for (auto& f : failures) std::cout << "failure " << f << "\n";
  return failures.empty() ? 0 : 1;
}

int run_replay(const std::string& path, const std::string& start_literal,
               const std::string& expect_literal) {
  Script sc = Script::load_file(path);
  std::optional<OperatorWord> start = sc.start;
  if (!start_literal.empty()) start = OperatorWord::parse(sc.size, start_literal);
  if (!start) throw Error("ParseError", "script has no start word; pass --start");
  std::optional<OperatorWord> expect;
  if (!expect_literal.empty()) expect = OperatorWord::parse(sc.size, expect_literal);
  ReplayReport rep = check_script(*start, sc, expect);
  std::cout << "script " << path << "\n";
  std::cout << "steps applied " << rep.steps_applied << "\n";
  if (!rep.ok) {
    std::cout << "FAILED at item " << (rep.failed_item + 1) << ": " << rep.message << "\n";
    return 1;
  }
  std::cout << "final " << rep.final_word.str() << "\n";
  std::cout << kReportVersion << "\n"
            << "replay ok\n"
            << "final-exponent " << rep.final_word.zeta_exp() << "\n";
  return 0;
}

int run_class(long long chain, const std::string& punctures_csv, int g, unsigned long long zeta,
              unsigned long long reduce_mod, bool embed) {
  LiftData d;
  d.chain_exp = chain;
  if (!punctures_csv.empty()) {
    std::istringstream in(punctures_csv);
    std::string tok;
    while (std::getline(in, tok, ',')) d.puncture_exps.push_back(std::stoll(tok));
  }
  ExtensionClass c = class_from_lifts(d, g, static_cast<int>(d.puncture_exps.size()), zeta);
  if (reduce_mod > 0)
    c = change_coefficients(c, {CoefficientMap::Kind::ReduceMod, reduce_mod});
  if (embed) c = change_coefficients(c, {CoefficientMap::Kind::EmbedDivisible, 0});
  std::cout << c.str() << "\n";
  std::cout << kReportVersion << "\n"
            << "class g " << g << " s " << c.punctures << "\n"
            << "chi " << c.chi << "\n"
            << "A " << c.coeffs.str() << "\n";
  return 0;
}

int run_verify(const std::string& rel_path, const std::string& method, const std::string& dir,
               size_t budget) {
  RelationInstance rel = RelationInstance::load(rel_path, dir);
  SearchLimits lim = default_limits();
  if (budget > 0) lim.node_budget = budget;
  LiftMethod m = (method == "search") ? LiftMethod::Search : LiftMethod::Script;
  auto t0 = std::chrono::steady_clock::now();
  LiftOutcome out = lift_exponent(rel, m, lim, dir);
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (auto& l : out.log) std::cout << l << "\n";
  std::cout << (out.ok ? "OK: " : "FAILED: ") << out.detail << "\n";
  std::cout << kReportVersion << "\n"
            << "relation " << rel_path << "\n"
            << "method " << method << "\n"
            << "status " << (out.ok ? "ok" : "failed") << "\n"
            << "identity-exponent " << out.raw_exp << "\n"
            << "relation-exponent " << out.normalized_exp << "\n";
  if (out.z_exp) std::cout << "z-exponent " << *out.z_exp << "\n";
  std::cout << "seconds " << dt << "\n";
  return out.ok ? 0 : 1;
}

int run_normalize(int size, const std::string& word, size_t budget) {
  OperatorWord w = OperatorWord::parse(size, word);
  SearchLimits lim = default_limits();
  if (budget > 0) lim.node_budget = budget;
  auto nf = normalize_bounded(w, lim);
  if (!nf) {
    std::cout << "no letter-free form found within the budget\n";
    return 1;
  }
  OperatorWord r = OperatorWord::scalar(size, nf->zeta_exp).multiply(OperatorWord::perm(nf->tail));
  std::cout << r.str() << "\n";
  return 0;
}

int run_derive(int size, const std::string& start_l, const std::string& goal_l, size_t budget,
               const std::string& emit) {
  OperatorWord start = OperatorWord::parse(size, start_l);
  OperatorWord goal = OperatorWord::parse(size, goal_l);
  SearchLimits lim = default_limits();
  if (budget > 0) lim.node_budget = budget;
  SearchOutcome out = derive_steps(start, goal, lim);
  if (!out.found) {
    std::cout << "no derivation found within the budget (" << out.nodes << " nodes)\n";
    return 1;
  }
  Script sc;
  sc.size = size;
  sc.start = start;
  sc.expected = out.final_word;
  for (const Step& st : out.steps) sc.items.push_back({st, std::nullopt, std::nullopt, st.str()});
  if (emit.empty()) {
    std::cout << sc.str();
  } else {
    std::ofstream f(emit);
    f << sc.str();
    std::cout << "wrote " << emit << " (" << out.steps.size() << " steps)\n";
  }
  return 0;
}

int run_scene_info(const std::string& path) {
  DecoratedTriangulation t = DecoratedTriangulation::load(path);
  std::cout << "triangles " << t.triangle_count() << "\n"
            << "punctures " << t.puncture_count() << "\n"
            << "genus " << t.genus() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// Script generation: re-derives the bundled rewrite scripts from the twist
// definitions with the bounded search and writes them with assertions.

void write_script(const std::string& path, int size, const OperatorWord& start,
                  const std::vector<Step>& steps, const OperatorWord& final_word,
                  const std::string& banner) {
  Script sc;
  sc.size = size;
  sc.start = start;
  sc.expected = final_word;
  OperatorWord cur = start;
  for (const Step& st : steps) {
    OperatorWord next = apply_step(cur, st);
    sc.items.push_back({st, std::nullopt, std::nullopt, st.str()});
    if (next.zeta_exp() != cur.zeta_exp())
      sc.items.push_back({std::nullopt, std::nullopt, next.zeta_exp(), "=>exp"});
    cur = next;
  }
  if (!(cur == final_word))
    throw Error("NotEstablished", "generated script does not reach its target for " + path);
  std::ofstream f(path);
  if (!f) throw Error("FileError", "cannot write " + path);
  f << "# " << banner << "\n";
  f << sc.str();
  std::cout << "wrote " << path << " (" << steps.size() << " steps)\n";
}

OperatorWord must_derive(const std::string& what, const OperatorWord& start,
                         const OperatorWord& goal, const SearchLimits& lim,
                         std::vector<Step>& steps_out) {
  SearchOutcome out = derive_steps(start, goal, lim);
  if (!out.found)
    throw Error("NotEstablished",
                what + ": derivation search exhausted (" + std::to_string(out.nodes) + " nodes)");
  steps_out = out.steps;
  return out.final_word;
}

int run_gen_scripts(const std::string& dir, size_t budget) {
  SearchLimits lim = default_limits();
  if (budget > 0) lim.node_budget = budget;
  std::string scripts = dir + "/scripts";
  std::filesystem::create_directories(scripts);

  // --- chain scene twists -> normalized forms
  const int n6 = 6;
  auto scene = DecoratedTriangulation::load(dir + "/scenes/chain_torus.tri");
  auto words = chain_scene_twists();
  std::map<std::string, OperatorWord> G = {
      {"a", OperatorWord::parse(n6, "T[1,3^] T[1,2^]")},
      {"b", OperatorWord::parse(n6, "T[6,1] T[3,4] T[3,1] T[6,4]")},
      {"c", OperatorWord::parse(n6, "T[4,6^] T[4,5^]")},
      {"e", OperatorWord::parse(
                n6, "T[2v,3] T[2v,4] T[2v,6^] T[2v,5^] T[2v,4^] T[2v,3v] T[2v,1v]")},
      {"f", OperatorWord::parse(
                n6, "T[5v,6] T[5v,1] T[5v,3^] T[5v,2^] T[5v,1^] T[5v,6v] T[5v,4v]")},
  };
  for (auto& [curve, gw] : words) {
    if (!scene.apply_word(gw).isomorphism(scene))
      throw Error("NotEstablished", "twist " + curve + " does not realize a mapping class");
    OperatorWord start = functor(n6, gw);
    std::vector<Step> steps;
    OperatorWord fin = must_derive("twist_" + curve, start, G.at(curve), lim, steps);
    write_script(scripts + "/twist_" + curve + ".script", n6, start, steps, fin,
                 "normalization of the " + curve + "-curve twist word");
  }

  // --- chain product, square, fourth power
  OperatorWord p1 = G.at("c").multiply(G.at("b")).multiply(G.at("a"));
  OperatorWord w1 = OperatorWord::parse(
      n6, "z^1 T[4,6^] T[4,5^] T[6,1] T[3,4] T[6,4] T[3^,2^] P[(1 3^)]");
  {
    std::vector<Step> steps;
    OperatorWord fin = must_derive("chain product", p1, w1, lim, steps);
    write_script(scripts + "/chain_product.script", n6, p1, steps, fin,
                 "product of the three chain twists");
  }
  OperatorWord w2 = OperatorWord::parse(
      n6, "z^5 T[6^,5^] T[4,6^] T[5v,1] T[2v,3] T[2v,4] T[3^,1^] T[6v,2^] P[(1 6v 3^ 4^ 1^)]");
  {
    std::vector<Step> steps;
    OperatorWord fin = must_derive("chain square", w1.multiply(w1), w2, lim, steps);
    write_script(scripts + "/chain_square.script", n6, w1.multiply(w1), steps, fin,
                 "square of the chain twist product");
  }
  {
    OperatorWord goal = OperatorWord::scalar(n6, 12).multiply(G.at("f")).multiply(G.at("e"));
    std::vector<Step> steps;
    OperatorWord fin = must_derive("chain fourth power", w2.multiply(w2), goal, lim, steps);
    write_script(scripts + "/chain_fourth.script", n6, w2.multiply(w2), steps, fin,
                 "fourth power of the chain twist product");
  }

  // --- lantern: simplify the conjugated twists, then the product
  auto lantern = RelationInstance::load(dir + "/relations/lantern.rel", dir);
  const int n8 = 8;
  std::map<std::string, OperatorWord> L = {
      {"a12",
       OperatorWord::parse(n8, "T[1,4^] T[6v,7] T[4,5] T[3,4v] T[6v,5] T[3,6^] T[4,7] T'[1,4^]")},
      {"a13", OperatorWord::parse(n8,
                                  "z^1 T[8^,7^] T[5v,8^] T[2,4] T[4^,6v] T[2,8^] T[8v,6v] "
                                  "T'[5,4^] T'[8^,7^] P[(4 5 4^)]")},
      {"a23", OperatorWord::parse(n8,
                                  "T[2,4] T[3v,6] T[5v,8^] T[1v,7v] T[4v,1v] T[3,5v] T[3,4^] "
                                  "T[5,1v] T'[1v,7v] T'[5v,8^] T'[3v,6] T'[2,4]")},
  };
  for (auto& [name, goal] : L) {
    OperatorWord start = lantern.twists.at(name);
    std::vector<Step> steps;
    OperatorWord fin = must_derive("lantern " + name, start, goal, lim, steps);
    write_script(scripts + "/lantern_" + name + ".script", n8, start, steps, fin,
                 "simplification of the lantern " + name + " twist word");
  }
  {
    OperatorWord start = L.at("a12").multiply(L.at("a23")).multiply(L.at("a13"));
    OperatorWord goal = OperatorWord::scalar(n8, 6)
                            .multiply(lantern.twists.at("a2"))
                            .multiply(lantern.twists.at("a1"))
                            .multiply(lantern.twists.at("a0"))
                            .multiply(lantern.twists.at("a3"));
    std::vector<Step> steps;
    OperatorWord fin = must_derive("lantern product", start, goal, lim, steps);
    write_script(scripts + "/lantern.script", n8, start, steps, fin,
                 "the lantern relation word reduced to its central factor");
  }

  // --- puncture: simplify a12, then the product of the three relabels
  auto punct = RelationInstance::load(dir + "/relations/puncture.rel", dir);
  const int n7 = 7;
  OperatorWord p12goal =
      OperatorWord::parse(n7, "T[7v,4] T[7v,3^] T[7v,4^] T[7v,2^] T[7v,1^] T[7v,2v]");
  {
    OperatorWord start = punct.twists.at("a12");
    std::vector<Step> steps;
    OperatorWord fin = must_derive("puncture a12", start, p12goal, lim, steps);
    write_script(scripts + "/puncture_a12.script", n7, start, steps, fin,
                 "simplification of the puncture a12 twist word");
  }
  {
    auto pi = *punct.relabel_pi;
    OperatorWord w23 = p12goal.relabel(pi);
    OperatorWord w31 = w23.relabel(pi);
    OperatorWord start = p12goal.multiply(w23).multiply(w31);
    OperatorWord goal = OperatorWord::scalar(n7, 6)
                            .multiply(punct.twists.at("a2"))
                            .multiply(punct.twists.at("a3"))
                            .multiply(punct.twists.at("a1"));
    std::vector<Step> steps;
    OperatorWord fin = must_derive("puncture product", start, goal, lim, steps);
    write_script(scripts + "/puncture.script", n7, start, steps, fin,
                 "the puncture relation word reduced to its central factor");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification tools for the quantized decorated Ptolemy groupoid"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string dir = data_dir();
  app.add_option("--data", dir, "data directory (scenes/, scripts/, relations/)");

  // check-groupoid
  auto* cg = app.add_subcommand("check-groupoid", "run the presentation relation suite");
  std::string cg_scene;
  int cg_random = 0, cg_triangles = 4, cg_sigma = 4;
  uint64_t cg_seed = 1;
  cg->add_option("--scene", cg_scene, "scene file");
  cg->add_option("--random", cg_random, "number of random scenes");
  cg->add_option("--triangles", cg_triangles, "triangles per random scene (even)");
  cg->add_option("--seed", cg_seed, "random seed");
  cg->add_option("--sigma-samples", cg_sigma, "extra random permutations per suite");

  // replay
  auto* rp = app.add_subcommand("replay", "replay a rewrite script");
  std::string rp_script, rp_start, rp_expect;
  rp->add_option("script", rp_script, "script file")->required();
  rp->add_option("--start", rp_start, "start word literal (overrides the embedded one)");
  rp->add_option("--expect", rp_expect, "expected final word literal");

  // class
  auto* cl = app.add_subcommand("class", "extension class from lift data");
  long long cl_chain = 0;
  std::string cl_punctures;
  int cl_g = 2;
  unsigned long long cl_zeta = 0, cl_mod = 0;
  bool cl_embed = false;
  cl->add_option("--chain", cl_chain, "z-exponent of the chain relation lift")->required();
  cl->add_option("--punctures", cl_punctures, "comma-separated puncture z-exponents");
  cl->add_option("--g", cl_g, "genus (>= 2)")->required();
  cl->add_option("--zeta-order", cl_zeta, "order of zeta (0 = infinite)");
  cl->add_option("--reduce-mod", cl_mod, "reduce coefficients mod N");
  cl->add_flag("--embed-divisible", cl_embed, "push into a divisible coefficient group");

  // verify-relation
  auto* vr = app.add_subcommand("verify-relation", "establish a relation's central lift");
  std::string vr_file, vr_method = "script";
  size_t vr_budget = 0;
  vr->add_option("relation", vr_file, "relation file")->required();
  vr->add_option("--method", vr_method, "script | search")
      ->check(CLI::IsMember({"script", "search"}));
  vr->add_option("--budget", vr_budget, "search node budget");

  // normalize
  auto* nm = app.add_subcommand("normalize", "bounded search for the scalar-and-permutation form");
  int nm_size = 0;
  std::string nm_word;
  size_t nm_budget = 0;
  nm->add_option("--size", nm_size, "number of tensor slots (2N)")->required();
  nm->add_option("word", nm_word, "word literal")->required();
  nm->add_option("--budget", nm_budget, "search node budget");

  // derive
  auto* dv = app.add_subcommand("derive", "search for a kernel-step derivation");
  int dv_size = 0;
  std::string dv_start, dv_goal, dv_emit;
  size_t dv_budget = 0;
  dv->add_option("--size", dv_size, "number of tensor slots (2N)")->required();
  dv->add_option("--start", dv_start, "start word literal")->required();
  dv->add_option("--goal", dv_goal, "goal word literal")->required();
  dv->add_option("--budget", dv_budget, "search node budget");
  dv->add_option("--emit", dv_emit, "write the script to this file");

  // scene-info
  auto* si = app.add_subcommand("scene-info", "triangulation summary");
  std::string si_file;
  si->add_option("scene", si_file, "scene file")->required();

  // gen-scripts
  auto* gs = app.add_subcommand("gen-scripts", "re-derive the bundled rewrite scripts");
  size_t gs_budget = 0;
  gs->add_option("--budget", gs_budget, "search node budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cg->parsed())
      return run_check_groupoid(cg_scene, cg_random, cg_triangles, cg_seed, cg_sigma);
    if (rp->parsed()) return run_replay(rp_script, rp_start, rp_expect);
    if (cl->parsed()) return run_class(cl_chain, cl_punctures, cl_g, cl_zeta, cl_mod, cl_embed);
    if (vr->parsed()) return run_verify(vr_file, vr_method, dir, vr_budget);
    if (nm->parsed()) return run_normalize(nm_size, nm_word, nm_budget);
    if (dv->parsed()) return run_derive(dv_size, dv_start, dv_goal, dv_budget, dv_emit);
    if (si->parsed()) return run_scene_info(si_file);
    if (gs->parsed()) return run_gen_scripts(dir, gs_budget);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
