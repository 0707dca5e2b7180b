#pragma once

#include "preper.hpp"

namespace unidyn {

// ---- portraits --------------------------------------------------------------

struct Portrait {
  std::vector<FieldElement> vertices;           // sorted canonical order
  std::vector<std::pair<int, int>> edges;       // (from, to), one per vertex

  bool empty() const { return vertices.empty(); }
};

inline Portrait build_portrait(const UnicriticalMap& phi, const PreperSet& pts) {
  Portrait P;
  P.vertices = pts.points;
  sort_points(P.vertices);
  auto index_of = [&](const FieldElement& x) -> int {
    for (std::size_t i = 0; i < P.vertices.size(); ++i)
      if (P.vertices[i] == x) return static_cast<int>(i);
    return -1;
  };
  for (std::size_t i = 0; i < P.vertices.size(); ++i) {
    FieldElement img = evaluate(phi, P.vertices[i]);
    int j = index_of(img);
    if (j < 0) throw NotClosed();
    P.edges.emplace_back(static_cast<int>(i), j);
  }
  return P;
}

// ---- skeleta ----------------------------------------------------------------

enum class VertexTag { Zero, Rou, Other, Any };  // Any appears only in reference graphs

enum class SkeletonLabel {
  Empty, L1a, L1b, L1c, L1d, L1e, L11, L2a, L2b, L2c, L211, L22, L3, Unknown
};

inline std::string skeleton_label_name(SkeletonLabel l) {
  switch (l) {
    case SkeletonLabel::Empty: return "Empty";
    case SkeletonLabel::L1a: return "(1)a";
    case SkeletonLabel::L1b: return "(1)b";
    case SkeletonLabel::L1c: return "(1)c";
    case SkeletonLabel::L1d: return "(1)d";
    case SkeletonLabel::L1e: return "(1)e";
    case SkeletonLabel::L11: return "(1,1)";
    case SkeletonLabel::L2a: return "(2)a";
    case SkeletonLabel::L2b: return "(2)b";
    case SkeletonLabel::L2c: return "(2)c";
    case SkeletonLabel::L211: return "(2,1,1)";
    case SkeletonLabel::L22: return "(2,2)";
    case SkeletonLabel::L3: return "(3)";
    case SkeletonLabel::Unknown: return "Unknown";
  }
  return "?";
}

struct SkeletonVertex {
  VertexTag tag;
  std::optional<FieldElement> element;  // absent for merged-fiber vertices
};

struct Skeleton {
  std::vector<SkeletonVertex> vertices;
  std::vector<std::pair<int, int>> edges;
  SkeletonLabel label = SkeletonLabel::Unknown;

  bool empty() const { return vertices.empty(); }
};

inline VertexTag tag_of(const FieldElement& x) {
  if (x.is_zero()) return VertexTag::Zero;
  if (is_root_of_unity(x)) return VertexTag::Rou;
  return VertexTag::Other;
}

// Keep the vertices with a K-rational preimage; for each kept vertex whose
// preimages all got dropped, one merged-fiber vertex stands in for the fiber.
inline Skeleton skeletonize(const Portrait& P, const UnicriticalMap& phi) {
  (void)phi;  // edges already encode the map
  std::size_t n = P.vertices.size();
  std::vector<std::vector<int>> preimages(n);
  for (auto [from, to] : P.edges) preimages[to].push_back(from);

  std::vector<bool> kept(n, false);
  for (std::size_t i = 0; i < n; ++i) kept[i] = !preimages[i].empty();

  Skeleton S;
  std::vector<int> new_index(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!kept[i]) continue;
    new_index[i] = static_cast<int>(S.vertices.size());
    S.vertices.push_back({tag_of(P.vertices[i]), P.vertices[i]});
  }
  // inherited edges among kept vertices
  for (auto [from, to] : P.edges) {
    if (new_index[from] >= 0 && new_index[to] >= 0)
      S.edges.emplace_back(new_index[from], new_index[to]);
  }
  // merged-fiber vertices
  for (std::size_t i = 0; i < n; ++i) {
    if (!kept[i]) continue;
    bool any_kept_preimage = false;
    for (int p : preimages[i]) {
      if (kept[p]) {
        any_kept_preimage = true;
        break;
      }
    }
    if (any_kept_preimage) continue;
    // tag from fiber content
    bool has_zero = false, all_rou = true;
    for (int p : preimages[i]) {
      VertexTag t = tag_of(P.vertices[p]);
      if (t == VertexTag::Zero) has_zero = true;
      if (t != VertexTag::Rou) all_rou = false;
    }
    VertexTag t = has_zero ? VertexTag::Zero : (all_rou ? VertexTag::Rou : VertexTag::Other);
    int v = static_cast<int>(S.vertices.size());
    S.vertices.push_back({t, std::nullopt});
    S.edges.emplace_back(v, new_index[i]);
  }
  return S;
}

// ---- reference graphs and classification ------------------------------------

namespace detail_graphs {

struct RefGraph {
  SkeletonLabel label;
  std::vector<VertexTag> tags;
  std::vector<std::pair<int, int>> edges;
};

inline const std::vector<RefGraph>& reference_graphs() {
  using T = VertexTag;
  using L = SkeletonLabel;
  static const std::vector<RefGraph> refs = {
      {L::L1a, {T::Any}, {{0, 0}}},
      // omega3 -> omega2 -> omega1 (loop)
      {L::L1b, {T::Rou, T::Rou, T::Rou}, {{0, 1}, {1, 2}, {2, 2}}},
      // 0 -> omega3 -> omega1 (loop)
      {L::L1c, {T::Zero, T::Rou, T::Rou}, {{0, 1}, {1, 2}, {2, 2}}},
      // omega1 loop; omega3, omega2 -> omega1; 0 -> omega3; omega4 -> omega2
      {L::L1d,
       {T::Rou, T::Rou, T::Rou, T::Zero, T::Rou},
       {{0, 0}, {1, 0}, {2, 0}, {3, 1}, {4, 2}}},
      // (1)d plus omega5 -> 0
      {L::L1e,
       {T::Rou, T::Rou, T::Rou, T::Zero, T::Rou, T::Rou},
       {{0, 0}, {1, 0}, {2, 0}, {3, 1}, {4, 2}, {5, 3}}},
      {L::L11, {T::Rou, T::Rou}, {{0, 0}, {1, 1}}},
      {L::L2a, {T::Rou, T::Rou}, {{0, 1}, {1, 0}}},
      {L::L2b, {T::Zero, T::Rou}, {{0, 1}, {1, 0}}},
      // 0 <-> omega3; omega1, omega2 -> 0; omega4 -> omega1; omega5 -> omega2
      {L::L2c,
       {T::Zero, T::Rou, T::Rou, T::Rou, T::Rou, T::Rou},
       {{0, 1}, {1, 0}, {2, 0}, {3, 0}, {4, 2}, {5, 3}}},
      // 0 <-> omega3 plus loops at omega1, omega2
      {L::L211, {T::Zero, T::Rou, T::Rou, T::Rou}, {{0, 1}, {1, 0}, {2, 2}, {3, 3}}},
      // two 2-cycles
      {L::L22, {T::Zero, T::Rou, T::Rou, T::Rou}, {{0, 1}, {1, 0}, {2, 3}, {3, 2}}},
      // 0 -> omega3 -> omega1 -> 0
      {L::L3, {T::Zero, T::Rou, T::Rou}, {{0, 1}, {1, 2}, {2, 0}}},
  };
  return refs;
}

inline bool tag_compatible(VertexTag ref, VertexTag actual) {
  return ref == VertexTag::Any || ref == actual;
}

// exhaustive isomorphism test (graphs here have at most 6 vertices)
inline bool isomorphic(const RefGraph& ref, const Skeleton& S) {
  std::size_t n = ref.tags.size();
  if (S.vertices.size() != n || S.edges.size() != ref.edges.size()) return false;
  std::vector<int> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  auto edge_set = [](const std::vector<std::pair<int, int>>& es) {
    std::set<std::pair<int, int>> out(es.begin(), es.end());
    return out;
  };
  std::set<std::pair<int, int>> sk_edges = edge_set(S.edges);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      ok = tag_compatible(ref.tags[i], S.vertices[perm[i]].tag);
    if (!ok) continue;
    std::set<std::pair<int, int>> mapped;
    for (auto [a, b] : ref.edges) mapped.insert({perm[a], perm[b]});
    if (mapped == sk_edges) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace detail_graphs

inline SkeletonLabel classify_skeleton(const Skeleton& S) {
  if (S.empty()) return SkeletonLabel::Empty;
  for (const auto& ref : detail_graphs::reference_graphs()) {
    if (detail_graphs::isomorphic(ref, S)) return ref.label;
  }
  return SkeletonLabel::Unknown;
}

// ---- predicted classification -----------------------------------------------

struct SkeletonPrediction {
  SkeletonLabel label = SkeletonLabel::Empty;
  std::vector<std::string> conditions;  // which hypotheses fired
};

namespace detail_predict {

// is some primitive k-th root of unity a d-th power inside mu_K?
inline bool primitive_rou_is_dth_power(const FieldContext& ctx, unsigned long k, unsigned long d) {
  for (const auto& target : all_roots_of_unity(ctx)) {
    auto ord = is_root_of_unity(target);
    if (!ord || *ord != k) continue;
    for (const auto& x : all_roots_of_unity(ctx)) {
      if (x.pow(d) == target) return true;
    }
    return false;  // solvability does not depend on the choice of primitive root
  }
  return false;
}

inline std::vector<FieldElement> primitive_sixth_roots(const FieldContext& ctx) {
  std::vector<FieldElement> out;
  for (const auto& z : all_roots_of_unity(ctx)) {
    auto ord = is_root_of_unity(z);
    if (ord && *ord == 6) out.push_back(z);
  }
  return out;
}

}  // namespace detail_predict

// Executable decision tree over the classification results: given (d, c, K)
// with c != 0, predict the skeleton label together with the conditions that
// fired. K is Q or a cyclotomic field.
inline SkeletonPrediction predicted_skeleton(unsigned d, const FieldElement& c,
                                             const FieldContext& ctx,
                                             const std::vector<Rat>& fixed_source_hints = {},
                                             const FactorEffort& effort = {}) {
  if (ctx.kind == FieldKind::FunctionField) throw UnsupportedField();
  if (c.is_zero()) throw Error("c must be nonzero");
  SkeletonPrediction out;
  auto mu = all_roots_of_unity(ctx);
  const FieldElement one = FieldElement::one(ctx);
  const FieldElement minus_one = -one;

  // positive-height fixed source: c = y - y^d with h(y) > 0 gives the single
  // loop whose fiber carries all of PrePer
  {
    FixedSource fs = solve_fixed_source(d, c, ctx, fixed_source_hints, effort);
    for (const auto& y : fs.all) {
      if (y.is_zero() || is_root_of_unity(y)) continue;
      out.label = SkeletonLabel::L1a;
      out.conditions = {"c = y - y^d with h(y) > 0, y = " + y.str()};
      return out;
    }
  }

  auto crou = is_root_of_unity(c);

  // 3-cycle: c = omega_3 in mu_K, d = 1 mod 6, omega_3^(d-1) a primitive cube root
  if (crou && d % 6 == 1) {
    auto ord = is_root_of_unity(c.pow(d - 1));
    if (ord && *ord == 3) {
      out.label = SkeletonLabel::L3;
      out.conditions = {"d = 1 mod 6", "c = omega_3 in mu_K", "omega_3^(d-1) = zeta_3"};
      return out;
    }
  }

  // 2-cycle through 0: c = omega_3, omega_3^(d-1) = -1
  if (crou && c.pow(d - 1) == minus_one) {
    out.conditions = {"c = omega_3 in mu_K", "omega_3^(d-1) = -1 (2-cycle 0 <-> omega_3)"};
    auto sixths = detail_predict::primitive_sixth_roots(ctx);
    if (!sixths.empty() && d % 6 == 1) {
      out.label = SkeletonLabel::L22;
      out.conditions.push_back("d = 1 mod 6 and zeta_6 in K");
      return out;
    }
    if (!sixths.empty() && d % 6 == 5) {
      out.label = SkeletonLabel::L211;
      out.conditions.push_back("d = 5 mod 6 and zeta_6 in K");
      return out;
    }
    if (!sixths.empty() && d % 6 == 0) {
      // need omega_4, omega_5 with omega_4^d = zeta_3 omega_3, omega_5^d = zeta_3^{-1} omega_3
      const FieldElement zeta3 = sixths.front().pow(2);
      bool w4 = false, w5 = false;
      for (const auto& w : mu) {
        if (w.pow(d) == zeta3 * c) w4 = true;
        if ((w.pow(d) * zeta3) == c) w5 = true;
      }
      if (w4 && w5) {
        out.label = SkeletonLabel::L2c;
        out.conditions.push_back("d = 0 mod 6, zeta_6 in K, omega_4^d = zeta_3*omega_3 and "
                                 "omega_5^d = zeta_3^{-1}*omega_3 solvable in mu_K");
        return out;
      }
    }
    out.label = SkeletonLabel::L2b;
    out.conditions.push_back("no further conditions fire");
    return out;
  }

  // 2-cycle avoiding 0: c = omega_1 + omega_2, omega_i^(d-1) = -1, distinct
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = i + 1; j < mu.size(); ++j) {
      const FieldElement &w1 = mu[i], &w2 = mu[j];
      if (w1 + w2 != c) continue;
      if (w1.pow(d - 1) != minus_one || w2.pow(d - 1) != minus_one) continue;
      out.conditions = {"c = omega_1 + omega_2 with omega_i^(d-1) = -1 (2-cycle)"};
      if (d % 6 == 1 && crou) {
        out.label = SkeletonLabel::L22;
        out.conditions.push_back("d = 1 mod 6 and c in mu_K");
      } else {
        out.label = SkeletonLabel::L2a;
        out.conditions.push_back("d != 1 mod 6 or c not in mu_K");
      }
      return out;
    }
  }

  // two distinct fixed points in mu_K: c = omega_1 + omega_2, omega_1^d = -omega_2,
  // omega_2^d = -omega_1
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = i + 1; j < mu.size(); ++j) {
      const FieldElement &w1 = mu[i], &w2 = mu[j];
      if (w1 + w2 != c) continue;
      if (w1.pow(d) != -w2 || w2.pow(d) != -w1) continue;
      out.conditions = {"two fixed points omega_1, omega_2 in mu_K with c = omega_1 + omega_2"};
      if (d % 6 == 5 && crou) {
        out.label = SkeletonLabel::L211;
        out.conditions.push_back("d = 5 mod 6 and c in mu_K");
      } else {
        out.label = SkeletonLabel::L11;
        out.conditions.push_back("d != 5 mod 6 or c not in mu_K");
      }
      return out;
    }
  }

  // single fixed point omega_1 in mu_K: c = omega_1 - omega_1^d
  for (const auto& w1 : mu) {
    if (w1 - w1.pow(d) != c) continue;
    out.conditions = {"fixed point omega_1 in mu_K with c = omega_1 - omega_1^d"};
    // containment of the chain 0 -> omega_3 -> omega_1: 6 | d, c in mu_K,
    // omega_1 = zeta_6 c
    bool contains_1c = false;
    if (d % 6 == 0 && crou) {
      for (const auto& z6 : detail_predict::primitive_sixth_roots(ctx)) {
        if (w1 == z6 * c) {
          contains_1c = true;
          break;
        }
      }
    }
    if (contains_1c) {
      out.conditions.push_back("6 | d, c = omega_3 in mu_K, omega_1 = zeta_6*omega_3");
      bool z3_power = detail_predict::primitive_rou_is_dth_power(ctx, 3, d);
      bool z6_power = detail_predict::primitive_rou_is_dth_power(ctx, 6, d);
      if (z6_power) {
        out.label = SkeletonLabel::L1e;
        out.conditions.push_back("zeta_6 is a d-th power in K");
      } else if (z3_power) {
        out.label = SkeletonLabel::L1d;
        out.conditions.push_back("zeta_3 is a d-th power in K, zeta_6 is not");
      } else {
        out.label = SkeletonLabel::L1c;
        out.conditions.push_back("zeta_3 is not a d-th power in K");
      }
      return out;
    }
    // (1)b needs omega_2, omega_3 with omega_2^(d-1) = -1, omega_1^d = -omega_2,
    // omega_3^d = -omega_1, all distinct
    FieldElement w2 = -w1.pow(d);
    if (w2.pow(d - 1) == minus_one && w2 != w1) {
      for (const auto& w3 : mu) {
        if (w3 == w1 || w3 == w2) continue;
        if (w3.pow(d) == -w1) {
          out.label = SkeletonLabel::L1b;
          out.conditions.push_back(
              "omega_2 = -omega_1^d with omega_2^(d-1) = -1 and omega_3^d = -omega_1 solvable");
          return out;
        }
      }
    }
    out.label = SkeletonLabel::L1a;
    out.conditions.push_back("no chain extension in mu_K");
    return out;
  }

  out.label = SkeletonLabel::Empty;
  out.conditions = {"no height-zero cycle conditions fire and no rational fixed source"};
  return out;
}

// ---- Exact unit-circle checks -----------------------------------------------

// phi(mu_K) intersect mu_K, with the size <= 2 assertion and the c = w1 + w2
// consistency check in the size-2 case
inline std::vector<FieldElement> two_images_check(const UnicriticalMap& phi,
                                                  const FieldContext& ctx) {
  std::vector<FieldElement> images;
  for (const auto& w : all_roots_of_unity(ctx)) {
    FieldElement img = evaluate(phi, w);
    if (!is_root_of_unity(img)) continue;
    bool seen = false;
    for (const auto& x : images) seen = seen || x == img;
    if (!seen) images.push_back(img);
  }
  // c = 0 is degenerate: phi(mu_K) is the whole subgroup mu_K^d, so the
  // two-image bound (which rests on intersecting two distinct circles
  // |x| = |c - x| = 1) does not apply; return the exact image set as-is.
  if (!phi.c.is_zero()) {
    if (images.size() > 2)
      throw ViolationDetected("more than two roots of unity in phi(mu_K) intersect mu_K");
    if (images.size() == 2 && images[0] + images[1] != phi.c)
      throw ViolationDetected("size-2 image set with c != omega_1 + omega_2");
  }
  sort_points(images);
  return images;
}

// all unordered pairs {x, y} in mu_K with x + y = c (tangent case x = y allowed)
inline std::vector<std::pair<FieldElement, FieldElement>> unit_circle_sum(const FieldElement& c,
                                                                          const FieldContext& ctx) {
  if (c.is_zero()) throw Error("c must be nonzero");
  std::vector<std::pair<FieldElement, FieldElement>> pairs;
  auto mu = all_roots_of_unity(ctx);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = i; j < mu.size(); ++j) {
      if (mu[i] + mu[j] == c) pairs.emplace_back(mu[i], mu[j]);
    }
  }
  if (pairs.size() > 1)
    throw ViolationDetected("more than one unordered root-of-unity pair sums to c");
  return pairs;
}

// DOT export for figures
inline std::string portrait_to_dot(const Portrait& P) {
  std::ostringstream os;
  os << "digraph portrait {\n";
  for (std::size_t i = 0; i < P.vertices.size(); ++i)
    os << "  v" << i << " [label=\"" << P.vertices[i].str() << "\"];\n";
  for (auto [a, b] : P.edges) os << "  v" << a << " -> v" << b << ";\n";
  os << "}\n";
  return os.str();
}

inline std::string skeleton_to_dot(const Skeleton& S) {
  std::ostringstream os;
  os << "digraph skeleton {\n";
  for (std::size_t i = 0; i < S.vertices.size(); ++i) {
    std::string label = S.vertices[i].element ? S.vertices[i].element->str() : "fiber";
    os << "  v" << i << " [label=\"" << label << "\"];\n";
  }
  for (auto [a, b] : S.edges) os << "  v" << a << " -> v" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace unidyn
