#ifndef PTOLEMY_SURFACE_HPP
#define PTOLEMY_SURFACE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ptolemy/dperm.hpp"

namespace ptolemy {

// A slot of the gluing: side `side` (0..2) of triangle `tri` (1-based).
// Side k is opposite corner k; corner 0 is the marked corner; corners are
// counterclockwise.
struct SideRef {
  int tri = 0;
  int side = 0;
  friend bool operator==(const SideRef&, const SideRef&) = default;
  friend auto operator<=>(const SideRef&, const SideRef&) = default;
};

struct Move {
  enum class Kind { Perm, Rho, RhoInv, Omega, OmegaInv };
  Kind kind = Kind::Rho;
  int i = 0, j = 0;
  std::vector<int> sigma;  // Perm: 1-based image table

  static Move rho(int i);
  static Move rho_inv(int i);
  static Move omega(int i, int j);
  static Move omega_inv(int i, int j);
  static Move perm(std::vector<int> image);
  Move inverse() const;
  std::string str() const;
};

using GroupoidWord = std::vector<Move>;
GroupoidWord inverse(const GroupoidWord& w);

// Relocation of side slots induced by a move (identity off the touched part).
using Relocation = std::function<SideRef(SideRef)>;

class DecoratedTriangulation {
public:
  DecoratedTriangulation() = default;

  // Validates and builds from a gluing table: for each triangle (1-based) the
  // partner of sides 0,1,2.
  static DecoratedTriangulation build(const std::vector<std::array<SideRef, 3>>& table);

  int triangle_count() const { return static_cast<int>(glue_.size()); }
  SideRef partner(SideRef s) const;

  int puncture_count() const;  // corner-cycle count
  int genus() const;

  bool applicable(const Move& m) const;
  DecoratedTriangulation apply(const Move& m, Relocation* reloc = nullptr) const;
  DecoratedTriangulation apply_word(const GroupoidWord& w) const;  // reports failing index

  // Corner cycle of the vertex at corner c of triangle t, in counterclockwise
  // order starting from that corner.
  std::vector<std::pair<int, int>> corner_cycle(int tri, int corner) const;
  // One canonical corner per puncture, ordered by smallest corner.
  std::vector<std::pair<int, int>> puncture_representatives() const;

  // Decoration- and gluing-preserving label bijection, if one exists.
  std::optional<std::vector<int>> isomorphism(const DecoratedTriangulation& other) const;

  // Gluing-preserving bijection allowing per-triangle marked-corner rotation:
  // applying rho_t^(rot[t-1]) to *this and then relabeling by the bijection
  // gives `other`. Used to complete twist words with decoration fixups.
  struct RotatedIso {
    std::vector<int> labels;
    std::vector<int> rotations;
  };
  std::optional<RotatedIso> isomorphism_up_to_rotation(const DecoratedTriangulation& other) const;

  friend bool operator==(const DecoratedTriangulation&, const DecoratedTriangulation&) = default;

  std::string str() const;
  static DecoratedTriangulation parse(const std::string& text);
  static DecoratedTriangulation load(const std::string& path);

  // Uniform random fixed-point-free involution on sides, retried until the
  // complex is connected.
  static DecoratedTriangulation random(int triangle_count, std::mt19937_64& rng);

private:
  std::vector<std::array<SideRef, 3>> glue_;
};

struct SuiteReport {
  int instances = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Checks every applicable instance of the presentation relations at tri:
// rho^3, pentagon, inversion, permutation composition and the five
// commutation relations. Permutation-quantified relations use all
// transpositions plus `sigma_samples` seeded random permutations.
SuiteReport relation_suite(const DecoratedTriangulation& tri, int sigma_samples = 4,
                           uint64_t seed = 1);

}  // namespace ptolemy

#endif
