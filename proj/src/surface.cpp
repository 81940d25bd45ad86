#include "ptolemy/surface.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace ptolemy {

Move Move::rho(int i) { return Move{Kind::Rho, i, 0, {}}; }
Move Move::rho_inv(int i) { return Move{Kind::RhoInv, i, 0, {}}; }
Move Move::omega(int i, int j) { return Move{Kind::Omega, i, j, {}}; }
Move Move::omega_inv(int i, int j) { return Move{Kind::OmegaInv, i, j, {}}; }
Move Move::perm(std::vector<int> image) { return Move{Kind::Perm, 0, 0, std::move(image)}; }

Move Move::inverse() const {
  switch (kind) {
    case Kind::Rho: return rho_inv(i);
    case Kind::RhoInv: return rho(i);
    case Kind::Omega: return omega_inv(i, j);
    case Kind::OmegaInv: return omega(i, j);
    case Kind::Perm: {
      std::vector<int> inv(sigma.size());
      for (size_t k = 0; k < sigma.size(); ++k) inv[sigma[k] - 1] = static_cast<int>(k + 1);
      return perm(std::move(inv));
    }
  }
  throw Error("BadLabel", "bad move");
}

std::string Move::str() const {
  switch (kind) {
    case Kind::Rho: return "rho(" + std::to_string(i) + ")";
    case Kind::RhoInv: return "rho'(" + std::to_string(i) + ")";
    case Kind::Omega: return "omega(" + std::to_string(i) + "," + std::to_string(j) + ")";
    case Kind::OmegaInv: return "omega'(" + std::to_string(i) + "," + std::to_string(j) + ")";
    case Kind::Perm: {
      std::string s = "perm(";
      for (size_t k = 0; k < sigma.size(); ++k) {
        if (k) s += ' ';
        s += std::to_string(sigma[k]);
      }
      return s + ")";
    }
  }
  return "?";
}

GroupoidWord inverse(const GroupoidWord& w) {
  GroupoidWord r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->inverse());
  return r;
}

DecoratedTriangulation DecoratedTriangulation::build(
    const std::vector<std::array<SideRef, 3>>& table) {
  DecoratedTriangulation t;
  t.glue_ = table;
  const int n = t.triangle_count();
  if (n <= 0 || n % 2 != 0) throw Error("NonSurface", "triangle count must be a positive even number");
  for (int tri = 1; tri <= n; ++tri) {
    for (int s = 0; s < 3; ++s) {
      SideRef p = table[tri - 1][s];
      if (p.tri < 1 || p.tri > n || p.side < 0 || p.side > 2)
        throw Error("LabelGap", "side (" + std::to_string(tri) + "," + std::to_string(s) +
                                    ") glued outside the label range");
      if (p.tri == tri && p.side == s)
        throw Error("FixedSide", "side (" + std::to_string(tri) + "," + std::to_string(s) +
                                     ") is glued to itself");
      SideRef back = table[p.tri - 1][p.side];
      if (!(back == SideRef{tri, s}))
        throw Error("NotInvolution", "gluing of side (" + std::to_string(tri) + "," +
                                         std::to_string(s) + ") is not symmetric");
    }
  }
  // connectivity
  std::vector<bool> seen(n, false);
  std::vector<int> stack{1};
  seen[0] = true;
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (int s = 0; s < 3; ++s) {
      int nb = t.glue_[cur - 1][s].tri;
      if (!seen[nb - 1]) {
        seen[nb - 1] = true;
        stack.push_back(nb);
      }
    }
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    throw Error("NonSurface", "gluing is not connected");
  // Euler characteristic consistency: chi = v - 3N + 2N must be even with
  // non-negative genus. For oriented gluings this holds automatically; keep
  // the check as a guard.
  int chi = t.puncture_count() - n / 2;
  if ((2 - chi) % 2 != 0 || (2 - chi) / 2 < 0)
    throw Error("NonSurface", "Euler characteristic " + std::to_string(chi) + " is inconsistent");
  return t;
}

SideRef DecoratedTriangulation::partner(SideRef s) const {
  if (s.tri < 1 || s.tri > triangle_count() || s.side < 0 || s.side > 2)
    throw Error("BadLabel", "side reference out of range");
  return glue_[s.tri - 1][s.side];
}

std::vector<std::pair<int, int>> DecoratedTriangulation::corner_cycle(int tri, int corner) const {
  // Rotating counterclockwise around the vertex at corner c of triangle t
  // crosses side c+1; the matching corner on the far side of (t', s') is
  // s' + 1.
  std::vector<std::pair<int, int>> cyc;
  int t = tri, c = corner;
  do {
    cyc.emplace_back(t, c);
    SideRef far = partner({t, (c + 1) % 3});
    t = far.tri;
    c = (far.side + 1) % 3;
  } while (!(t == tri && c == corner));
  return cyc;
}

std::vector<std::pair<int, int>> DecoratedTriangulation::puncture_representatives() const {
  std::vector<std::pair<int, int>> reps;
  std::vector<std::array<bool, 3>> seen(triangle_count(), {false, false, false});
  for (int t = 1; t <= triangle_count(); ++t) {
    for (int c = 0; c < 3; ++c) {
      if (seen[t - 1][c]) continue;
      reps.emplace_back(t, c);
      for (auto [tt, cc] : corner_cycle(t, c)) seen[tt - 1][cc] = true;
    }
  }
  return reps;
}

int DecoratedTriangulation::puncture_count() const {
  return static_cast<int>(puncture_representatives().size());
}

int DecoratedTriangulation::genus() const {
  int chi = puncture_count() - triangle_count() / 2;
  return (2 - chi) / 2;
}

bool DecoratedTriangulation::applicable(const Move& m) const {
  const int n = triangle_count();
  switch (m.kind) {
    case Move::Kind::Rho:
    case Move::Kind::RhoInv:
      return m.i >= 1 && m.i <= n;
    case Move::Kind::Omega:
      if (m.i < 1 || m.i > n || m.j < 1 || m.j > n || m.i == m.j) return false;
      return partner({m.i, 0}) == SideRef{m.j, 1};
    case Move::Kind::OmegaInv:
      if (m.i < 1 || m.i > n || m.j < 1 || m.j > n || m.i == m.j) return false;
      return partner({m.i, 2}) == SideRef{m.j, 0};
    case Move::Kind::Perm: {
      if (static_cast<int>(m.sigma.size()) != n) return false;
      std::vector<bool> seen(n, false);
      for (int v : m.sigma) {
        if (v < 1 || v > n || seen[v - 1]) return false;
        seen[v - 1] = true;
      }
      return true;
    }
  }
  return false;
}

DecoratedTriangulation DecoratedTriangulation::apply(const Move& m, Relocation* reloc) const {
  const int n = triangle_count();
  auto relocated = [&](const std::function<SideRef(SideRef)>& f) {
    DecoratedTriangulation r;
    r.glue_.assign(n, {});
    for (int t = 1; t <= n; ++t)
      for (int s = 0; s < 3; ++s) {
        SideRef from = f({t, s});
        SideRef to = f(glue_[t - 1][s]);
        r.glue_[from.tri - 1][from.side] = to;
      }
    if (reloc) *reloc = f;
    return r;
  };

  switch (m.kind) {
    case Move::Kind::Rho:
    case Move::Kind::RhoInv: {
      if (m.i < 1 || m.i > n) throw Error("BadLabel", "rho label out of range");
      int shift = (m.kind == Move::Kind::Rho) ? 2 : 1;  // new slot of old side s
      int i = m.i;
      return relocated([i, shift](SideRef s) {
        if (s.tri != i) return s;
        return SideRef{i, (s.side + shift) % 3};
      });
    }
    case Move::Kind::Perm: {
      if (!applicable(m)) throw Error("BadLabel", "perm move is not a bijection");
      // new label k hosts old triangle sigma(k), i.e. old label l moves to
      // sigma^-1(l).
      std::vector<int> inv(n);
      for (int k = 1; k <= n; ++k) inv[m.sigma[k - 1] - 1] = k;
      return relocated([inv](SideRef s) { return SideRef{inv[s.tri - 1], s.side}; });
    }
    case Move::Kind::Omega: {
      if (!applicable(m))
        throw Error("OmegaNotApplicable",
                    "omega(" + std::to_string(m.i) + "," + std::to_string(m.j) +
                        ") needs side 0 of " + std::to_string(m.i) + " glued to side 1 of " +
                        std::to_string(m.j));
      int i = m.i, j = m.j;
      return relocated([i, j](SideRef s) {
        if (s.tri == i && s.side == 0) return SideRef{i, 2};
        if (s.tri == i && s.side == 2) return SideRef{j, 1};
        if (s.tri == j && s.side == 1) return SideRef{j, 0};
        if (s.tri == j && s.side == 0) return SideRef{i, 0};
        return s;
      });
    }
    case Move::Kind::OmegaInv: {
      if (!applicable(m))
        throw Error("OmegaNotApplicable",
                    "omega'(" + std::to_string(m.i) + "," + std::to_string(m.j) +
                        ") needs side 2 of " + std::to_string(m.i) + " glued to side 0 of " +
                        std::to_string(m.j));
      int i = m.i, j = m.j;
      return relocated([i, j](SideRef s) {
        if (s.tri == i && s.side == 2) return SideRef{i, 0};
        if (s.tri == i && s.side == 0) return SideRef{j, 0};
        if (s.tri == j && s.side == 1) return SideRef{i, 2};
        if (s.tri == j && s.side == 0) return SideRef{j, 1};
        return s;
      });
    }
  }
  throw Error("BadLabel", "bad move");
}

DecoratedTriangulation DecoratedTriangulation::apply_word(const GroupoidWord& w) const {
  DecoratedTriangulation cur = *this;
  for (size_t k = 0; k < w.size(); ++k) {
    try {
      cur = cur.apply(w[k]);
    } catch (const Error& e) {
      throw Error(e.code(), "move " + std::to_string(k + 1) + " (" + w[k].str() +
                                ") not applicable: " + e.what());
    }
  }
  return cur;
}

std::optional<std::vector<int>> DecoratedTriangulation::isomorphism(
    const DecoratedTriangulation& other) const {
  const int n = triangle_count();
  if (other.triangle_count() != n) return std::nullopt;
  for (int seed = 1; seed <= n; ++seed) {
    std::vector<int> f(n, 0);
    f[0] = seed;
    std::vector<int> stack{1};
    std::vector<bool> used(n, false);
    used[seed - 1] = true;
    bool ok = true;
    while (ok && !stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (int s = 0; s < 3 && ok; ++s) {
        SideRef p = glue_[t - 1][s];
        SideRef q = other.glue_[f[t - 1] - 1][s];
        if (q.side != p.side) {
          ok = false;
          break;
        }
        if (f[p.tri - 1] == 0) {
          if (used[q.tri - 1]) {
            ok = false;
            break;
          }
          f[p.tri - 1] = q.tri;
          used[q.tri - 1] = true;
          stack.push_back(p.tri);
        } else if (f[p.tri - 1] != q.tri) {
          ok = false;
        }
      }
    }
    if (ok && std::all_of(f.begin(), f.end(), [](int v) { return v != 0; })) return f;
  }
  return std::nullopt;
}

std::optional<DecoratedTriangulation::RotatedIso> DecoratedTriangulation::isomorphism_up_to_rotation(
    const DecoratedTriangulation& other) const {
  const int n = triangle_count();
  if (other.triangle_count() != n) return std::nullopt;
  for (int seed = 1; seed <= n; ++seed) {
    for (int rot0 = 0; rot0 < 3; ++rot0) {
      std::vector<int> f(n, 0), rot(n, -1);
      std::vector<bool> used(n, false);
      f[0] = seed;
      rot[0] = rot0;
      used[seed - 1] = true;
      std::vector<int> stack{1};
      bool ok = true;
      while (ok && !stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int s = 0; s < 3 && ok; ++s) {
          SideRef p = glue_[t - 1][s];
          SideRef q = other.glue_[f[t - 1] - 1][((s - rot[t - 1]) % 3 + 3) % 3];
          int want_rot = ((p.side - q.side) % 3 + 3) % 3;
          if (f[p.tri - 1] == 0) {
            if (used[q.tri - 1]) {
              ok = false;
              break;
            }
            f[p.tri - 1] = q.tri;
            rot[p.tri - 1] = want_rot;
            used[q.tri - 1] = true;
            stack.push_back(p.tri);
          } else if (f[p.tri - 1] != q.tri || rot[p.tri - 1] != want_rot) {
            ok = false;
          }
        }
      }
      if (ok && std::all_of(f.begin(), f.end(), [](int v) { return v != 0; }))
        return RotatedIso{f, rot};
    }
  }
  return std::nullopt;
}

std::string DecoratedTriangulation::str() const {
  std::ostringstream out;
  out << "triangles " << triangle_count() << "\n";
  for (int t = 1; t <= triangle_count(); ++t) {
    out << t << " :";
    for (int s = 0; s < 3; ++s)
      out << " (" << glue_[t - 1][s].tri << "," << glue_[t - 1][s].side << ")";
    out << "\n";
  }
  return out.str();
}

DecoratedTriangulation DecoratedTriangulation::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int count = -1;
  std::vector<std::array<SideRef, 3>> table;
  std::vector<bool> filled;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "placeholder")
      throw Error("PlaceholderScene",
                  "this scene file is a placeholder without a gluing table");
    if (tok == "triangles") {
      if (!(ls >> count) || count <= 0) throw Error("ParseError", "bad triangle count");
      table.assign(count, {});
      filled.assign(count, false);
      continue;
    }
    if (count < 0) throw Error("ParseError", "scene must start with 'triangles <2N>'");
    int label = std::stoi(tok);
    if (label < 1 || label > count) throw Error("LabelGap", "triangle label out of range");
    if (filled[label - 1]) throw Error("ParseError", "duplicate triangle " + tok);
    filled[label - 1] = true;
    std::string colon;
    ls >> colon;
    if (colon != ":") throw Error("ParseError", "expected ':' after label");
    for (int s = 0; s < 3; ++s) {
      std::string pair;
      if (!(ls >> pair)) throw Error("ParseError", "triangle " + tok + " needs 3 glued sides");
      int a, b;
      if (sscanf(pair.c_str(), "(%d,%d)", &a, &b) != 2)
        throw Error("ParseError", "bad side pair '" + pair + "'");
      table[label - 1][s] = SideRef{a, b};
    }
  }
  if (count < 0) throw Error("ParseError", "empty scene file");
  for (int t = 1; t <= count; ++t)
    if (!filled[t - 1]) throw Error("LabelGap", "triangle " + std::to_string(t) + " missing");
  return build(table);
}

DecoratedTriangulation DecoratedTriangulation::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("FileError", "cannot open scene file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

DecoratedTriangulation DecoratedTriangulation::random(int triangle_count, std::mt19937_64& rng) {
  if (triangle_count <= 0 || triangle_count % 2 != 0)
    throw Error("NonSurface", "triangle count must be positive and even");
  const int slots = 3 * triangle_count;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<int> ids(slots);
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    std::vector<std::array<SideRef, 3>> table(triangle_count);
    for (int k = 0; k < slots; k += 2) {
      SideRef a{ids[k] / 3 + 1, ids[k] % 3};
      SideRef b{ids[k + 1] / 3 + 1, ids[k + 1] % 3};
      table[a.tri - 1][a.side] = b;
      table[b.tri - 1][b.side] = a;
    }
    try {
      return build(table);
    } catch (const Error&) {
      continue;  // fixed side or disconnected; resample
    }
  }
  throw Error("NonSurface", "failed to sample a connected gluing");
}

namespace {

std::vector<int> identity_perm(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return v;
}

std::vector<std::vector<int>> sigma_pool(int n, int samples, uint64_t seed) {
  std::vector<std::vector<int>> out;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      auto v = identity_perm(n);
      std::swap(v[a - 1], v[b - 1]);
      out.push_back(std::move(v));
    }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < samples; ++k) {
    auto v = identity_perm(n);
    std::shuffle(v.begin(), v.end(), rng);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

SuiteReport relation_suite(const DecoratedTriangulation& tri, int sigma_samples, uint64_t seed) {
  SuiteReport rep;
  const int n = tri.triangle_count();
  auto check = [&](const std::string& name, const DecoratedTriangulation& lhs,
                   const DecoratedTriangulation& rhs) {
    ++rep.instances;
    if (!(lhs == rhs)) rep.failures.push_back(name);
  };
  auto sigmas = sigma_pool(n, sigma_samples, seed);

  // rho^3 = id
  for (int i = 1; i <= n; ++i) {
    auto m = Move::rho(i);
    check("rho^3(" + std::to_string(i) + ")", tri.apply(m).apply(m).apply(m), tri);
  }

  // permutation composition: (tau^a)^b = tau^(ab)
  for (size_t x = 0; x < sigmas.size(); ++x)
    for (size_t y = 0; y < sigmas.size(); y += std::max<size_t>(1, sigmas.size() / 4 + 1)) {
      const auto &a = sigmas[x], &b = sigmas[y];
      std::vector<int> ab(n);
      for (int k = 1; k <= n; ++k) ab[k - 1] = a[b[k - 1] - 1];
      check("perm-compose", tri.apply(Move::perm(a)).apply(Move::perm(b)),
            tri.apply(Move::perm(ab)));
    }

  // pentagon: w_jk w_ik w_ij = w_ij w_jk  (when both sides applicable)
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        if (i == j || j == k || i == k) continue;
        GroupoidWord lhs = {Move::omega(i, j), Move::omega(i, k), Move::omega(j, k)};
        GroupoidWord rhs = {Move::omega(j, k), Move::omega(i, j)};
        DecoratedTriangulation l = tri, r = tri;
        bool lok = true, rok = true;
        for (const Move& m : lhs) {
          if (!l.applicable(m)) {
            lok = false;
            break;
          }
          l = l.apply(m);
        }
        for (const Move& m : rhs) {
          if (!r.applicable(m)) {
            rok = false;
            break;
          }
          r = r.apply(m);
        }
        if (lok && rok)
          check("pentagon(" + std::to_string(i) + "," + std::to_string(j) + "," +
                    std::to_string(k) + ")",
                l, r);
      }

  // inversion: w_ji rho_i w_ij = rho_i rho_j tau^(ij)
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      if (!tri.applicable(Move::omega(i, j))) continue;
      DecoratedTriangulation l = tri.apply(Move::omega(i, j)).apply(Move::rho(i));
      if (!l.applicable(Move::omega(j, i))) {
        rep.failures.push_back("inversion-midstep(" + std::to_string(i) + "," +
                               std::to_string(j) + ")");
        ++rep.instances;
        continue;
      }
      l = l.apply(Move::omega(j, i));
      auto swap_ij = identity_perm(n);
      std::swap(swap_ij[i - 1], swap_ij[j - 1]);
      DecoratedTriangulation r =
          tri.apply(Move::perm(swap_ij)).apply(Move::rho(j)).apply(Move::rho(i));
      check("inversion(" + std::to_string(i) + "," + std::to_string(j) + ")", l, r);
    }

  // commutation with relabeling: rho and omega
  for (const auto& s : sigmas) {
    std::vector<int> inv(n);
    for (int k = 1; k <= n; ++k) inv[s[k - 1] - 1] = k;
    for (int i = 1; i <= n; ++i)
      check("rho-perm", tri.apply(Move::rho(i)).apply(Move::perm(s)),
            tri.apply(Move::perm(s)).apply(Move::rho(inv[i - 1])));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j || !tri.applicable(Move::omega(i, j))) continue;
        check("omega-perm", tri.apply(Move::omega(i, j)).apply(Move::perm(s)),
              tri.apply(Move::perm(s)).apply(Move::omega(inv[i - 1], inv[j - 1])));
      }
  }

  // rho_i rho_j = rho_j rho_i
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      check("rho-rho", tri.apply(Move::rho(i)).apply(Move::rho(j)),
            tri.apply(Move::rho(j)).apply(Move::rho(i)));

  // rho_i omega_jk = omega_jk rho_i, i not in {j,k}
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        if (j == k || i == j || i == k) continue;
        if (!tri.applicable(Move::omega(j, k))) continue;
        check("rho-omega", tri.apply(Move::rho(i)).apply(Move::omega(j, k)),
              tri.apply(Move::omega(j, k)).apply(Move::rho(i)));
      }

  // omega_ij omega_kl = omega_kl omega_ij on disjoint supports
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          if (i == j || k == l) continue;
          if (i == k || i == l || j == k || j == l) continue;
          if (!tri.applicable(Move::omega(i, j)) || !tri.applicable(Move::omega(k, l))) continue;
          check("omega-omega", tri.apply(Move::omega(i, j)).apply(Move::omega(k, l)),
                tri.apply(Move::omega(k, l)).apply(Move::omega(i, j)));
        }

  return rep;
}

}  // namespace ptolemy
