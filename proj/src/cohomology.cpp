#include "ptolemy/cohomology.hpp"

#include <numeric>
#include <sstream>

namespace ptolemy {

CoeffGroup scalar_group_order(unsigned long long zeta_order) {
  CoeffGroup g;
  if (zeta_order == 0) {
    g.order = 0;
  } else {
    g.order = zeta_order / std::gcd(zeta_order, 6ull);
  }
  return g;
}

std::string ExtensionClass::str() const {
  std::ostringstream out;
  out << chi << "*chi";
  for (size_t i = 0; i < euler.size(); ++i) {
    if (euler[i] >= 0) out << " + ";
    else out << " - ";
    long long v = euler[i] < 0 ? -euler[i] : euler[i];
    if (v != 1) out << v << "*";
    out << "e" << (i + 1);
  }
  out << "  (A = " << coeffs.str();
  if (chi_order != 0) out << ", chi order " << chi_order;
  out << ")";
  return out.str();
}

ExtensionClass class_from_lifts(const LiftData& d, int genus, int punctures,
                                unsigned long long zeta_order) {
  if (genus < 2) throw Error("NotNormalized", "genus must be at least 2");
  if (d.lantern_exp != 0 || d.braid_exp != 0)
    throw Error("NotNormalized", "braid and lantern lifts must be trivial for normalized twists");
  if (static_cast<int>(d.puncture_exps.size()) != punctures)
    throw Error("LengthMismatch", "puncture exponent vector length differs from s");
  ExtensionClass c;
  c.genus = genus;
  c.punctures = punctures;
  c.coeffs = scalar_group_order(zeta_order);
  // chi spans A for g >= 3; for g = 2 it generates A/10A (order 10 over Z).
  if (genus == 2) {
    c.chi_order = c.coeffs.order == 0 ? 10 : std::gcd(c.coeffs.order, 10ull);
  } else {
    c.chi_order = c.coeffs.order;
  }
  c.chi = d.chain_exp;
  if (c.chi_order != 0) {
    long long m = static_cast<long long>(c.chi_order);
    c.chi = ((c.chi % m) + m) % m;
  }
  c.euler.reserve(d.puncture_exps.size());
  for (long long e : d.puncture_exps) c.euler.push_back(c.coeffs.reduce(e));
  return c;
}

std::vector<long long> pushforward(const std::vector<std::vector<long long>>& classes,
                                   const std::vector<long long>& a) {
  if (classes.size() != a.size())
    throw Error("LengthMismatch", "coefficient vector length differs from the class count");
  size_t dim = classes.empty() ? 0 : classes.front().size();
  std::vector<long long> out(dim, 0);
  for (size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].size() != dim) throw Error("LengthMismatch", "ragged class vectors");
    for (size_t k = 0; k < dim; ++k) out[k] += a[i] * classes[i][k];
  }
  return out;
}

ExtensionClass change_coefficients(const ExtensionClass& c, const CoefficientMap& map) {
  ExtensionClass r = c;
  switch (map.kind) {
    case CoefficientMap::Kind::ReduceMod: {
      if (map.modulus == 0) throw Error("UnsupportedMap", "reduction needs a positive modulus");
      r.coeffs.order = map.modulus;
      r.chi_order = (c.genus == 2) ? std::gcd(map.modulus, 10ull) : map.modulus;
      long long m = static_cast<long long>(r.chi_order);
      r.chi = m == 0 ? c.chi : ((c.chi % m) + m) % m;
      for (auto& e : r.euler) e = r.coeffs.reduce(e);
      return r;
    }
    case CoefficientMap::Kind::EmbedDivisible: {
      // Into a divisible group (C^*): injective on the A-span for g >= 3; for
      // g = 2 the torsion class chi dies.
      if (c.genus == 2) {
        r.chi = 0;
        r.chi_order = 1;
      }
      return r;
    }
  }
  throw Error("UnsupportedMap", "unknown coefficient map");
}

}  // namespace ptolemy
