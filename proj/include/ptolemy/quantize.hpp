#ifndef PTOLEMY_QUANTIZE_HPP
#define PTOLEMY_QUANTIZE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptolemy/rewrite.hpp"
#include "ptolemy/search.hpp"
#include "ptolemy/surface.hpp"
#include "ptolemy/word.hpp"

namespace ptolemy {

// The quantum functor on one move / a move sequence:
//   rho_i -> R_i,  omega_ij -> T_ij,  sigma -> P_sigma, inverses accordingly.
OperatorWord functor(int size, const Move& m);
OperatorWord functor(int size, const GroupoidWord& w);

// The rho-dressed single flip of the edge holding slot `e`: a groupoid word
// whose functor image is the decorated letter T_{(i,s_i)(j,s_j-1)}.
GroupoidWord flip_word(const DecoratedTriangulation& tri, SideRef e);

// Dehn twist along a curve crossing exactly two edges: triangles of `e` must
// form the two-triangle annulus (they share exactly two edges).
GroupoidWord two_crossing_twist(const DecoratedTriangulation& tri, SideRef e);

// Dehn twist along the loop around a puncture (corner cycle of the given
// corner): composes the flips of the first s-1 edges around the puncture.
GroupoidWord puncture_twist(const DecoratedTriangulation& tri, int tri_label, int corner);

struct TwistWord {
  std::string curve;
  GroupoidWord groupoid_word;
  OperatorWord operator_word;  // functor image (raw)
  int normalization = -6;     // zeta power defining the normalized lift
};

// The five chain-scene twists (curves a,b,c,e,f) on the Figure F:1 scene.
std::map<std::string, GroupoidWord> chain_scene_twists();

enum class RelationKind { Lantern, Chain, Puncture, Braid0, Braid1 };

struct RelationInstance {
  RelationKind kind = RelationKind::Lantern;
  int size = 0;  // 2N
  std::map<std::string, OperatorWord> twists;      // raw operator words
  std::map<std::string, std::string> scripts;      // role -> script path
  std::optional<std::string> scene;                // scene file (chain)
  std::optional<DecoratedPermutation> relabel_pi;  // puncture symmetry

  static RelationInstance load(const std::string& path, const std::string& data_dir);
};

struct LiftOutcome {
  bool ok = false;
  std::string detail;
  long long raw_exp = 0;        // zeta power in the verified word identity
  long long normalized_exp = 0; // zeta power of the relation on normalized lifts
  std::optional<long long> z_exp;  // normalized_exp as a power of z = zeta^-6
  std::vector<std::string> log;
};

enum class LiftMethod { Script, Search };

// Establishes the central lift of the relation; never guesses: failure of a
// script replay or search exhaustion reports NotEstablished in `detail`.
LiftOutcome lift_exponent(const RelationInstance& rel, LiftMethod method,
                          const SearchLimits& limits, const std::string& data_dir);

// Directory containing scenes/, scripts/, relations/ (PTOLEMY_DATA overrides).
std::string data_dir();

}  // namespace ptolemy

#endif
