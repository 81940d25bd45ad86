#ifndef PTOLEMY_COHOMOLOGY_HPP
#define PTOLEMY_COHOMOLOGY_HPP

#include <optional>
#include <string>
#include <vector>

#include "ptolemy/dperm.hpp"

namespace ptolemy {

// Cyclic coefficient group: order 0 means Z.
struct CoeffGroup {
  unsigned long long order = 0;
  long long reduce(long long v) const {
    if (order == 0) return v;
    long long m = static_cast<long long>(order);
    return ((v % m) + m) % m;
  }
  std::string str() const { return order == 0 ? "Z" : "Z/" + std::to_string(order); }
};

// Order of A = <zeta^-6> given the order of zeta (0 = infinite).
CoeffGroup scalar_group_order(unsigned long long zeta_order);

// Central-extension class 12*chi-style data: a chi coefficient plus Euler
// coefficients, over the coefficient group A. For g = 2 the chi part lives in
// A/10A (the torsion found in H^2), for g >= 3 in A itself.
struct ExtensionClass {
  int genus = 2;
  int punctures = 0;
  CoeffGroup coeffs;            // A
  unsigned long long chi_order = 0;  // modulus of the chi coefficient (0 = none)
  long long chi = 0;
  std::vector<long long> euler;

  std::string str() const;
};

struct LiftData {
  long long chain_exp = 0;              // z-exponent of the chain relation lift
  std::vector<long long> puncture_exps; // z-exponents a_i, one per puncture
  long long lantern_exp = 0;            // must be 0 for normalized lifts
  long long braid_exp = 0;              // must be 0
};

// chi = chain_exp (z^12 -> 12 chi), euler_i = puncture_exps[i].
ExtensionClass class_from_lifts(const LiftData& d, int genus, int punctures,
                                unsigned long long zeta_order = 0);

// Linear combination sum a_i e_i of the per-puncture Euler classes.
std::vector<long long> pushforward(const std::vector<std::vector<long long>>& classes,
                                   const std::vector<long long>& a);

struct CoefficientMap {
  enum class Kind { ReduceMod, EmbedDivisible } kind = Kind::EmbedDivisible;
  unsigned long long modulus = 0;  // for ReduceMod
};

ExtensionClass change_coefficients(const ExtensionClass& c, const CoefficientMap& map);

}  // namespace ptolemy

#endif
