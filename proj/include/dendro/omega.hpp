#pragma once

#include <string>
#include <vector>

#include "dendro/tree.hpp"

namespace dendro {

enum class FaceKindTag { inner, outer_vertex, outer_edge_of_corolla, degeneracy, iso, other };

struct FaceKind {
  FaceKindTag tag = FaceKindTag::other;
  Edge at;  // the contracted edge, removed vertex (by output) or named edge
};

// An arrow of Omega, stored by its edge map. map[i] is the index in the
// target of the image of source edge i.
struct OmegaArrow {
  Tree source;
  Tree target;
  std::vector<int> map;
  FaceKind kind;

  Edge image(const Edge& e) const { return target.edge(map[source.index(e)]); }
  bool same_map(const OmegaArrow& o) const {
    return source == o.source && target == o.target && map == o.map;
  }
  bool operator==(const OmegaArrow& o) const { return same_map(o); }
};

// Operad-map condition on a raw edge map.
bool is_valid_arrow(const Tree& s, const Tree& t, const std::vector<int>& map);
bool is_valid(const OmegaArrow& a);
bool is_injective(const OmegaArrow& a);
bool is_surjective(const OmegaArrow& a);
bool is_iso(const OmegaArrow& a);

OmegaArrow identity(const Tree& t);
// Arrow given by edge names; throws Error("not-an-arrow") if invalid.
OmegaArrow arrow_from_names(const Tree& s, const Tree& t, const std::map<Edge, Edge>& m);
// Inclusion of a tree whose edges are a subset of t's edge names.
OmegaArrow inclusion(const Tree& f, const Tree& t);

OmegaArrow degeneracy(const Tree& t, const Edge& v);   // v named by its output edge
OmegaArrow outer_face(const Tree& t, const Edge& v);   // v named by its output edge
OmegaArrow edge_face(const Tree& t, const Edge& e);    // eta -> t at e
OmegaArrow inner_face(const Tree& t, const Edge& e);
OmegaArrow iso_from_names(const Tree& s, const Tree& t, const std::map<Edge, Edge>& m);
OmegaArrow compose(const OmegaArrow& g, const OmegaArrow& f);  // g after f

// Elementary faces: the maximal faces of the boundary of t. For a
// corolla these are its edges; otherwise admissible outer faces followed
// by inner faces.
std::vector<OmegaArrow> faces(const Tree& t);
std::vector<Edge> outer_admissible(const Tree& t);

struct Factorization {
  OmegaArrow sigma;  // composite of degeneracies
  OmegaArrow phi;    // isomorphism
  OmegaArrow delta;  // composite of faces
  std::vector<OmegaArrow> degeneracies;  // in order of application
  std::vector<OmegaArrow> face_chain;    // in order of application
};

Factorization factorize(const OmegaArrow& f);
// Source of the face part of f, labelled by the target's edges.
Tree image_face(const OmegaArrow& f);
OmegaArrow recompose(const Factorization& fz);

// Planar leaf tuples of the subtrees of t (with at least one vertex)
// rooted at each edge, grouped by leaf count.
struct SubtreeIndex {
  explicit SubtreeIndex(const Tree& t);
  const std::vector<std::vector<int>>* get(int o, size_t n) const;  // null if none

  std::vector<std::vector<std::vector<std::vector<int>>>> by_size;
};

std::vector<OmegaArrow> arrows_between(const Tree& s, const Tree& t);
std::vector<OmegaArrow> automorphisms(const Tree& t);

// Sub-faces of t (all composites of elementary faces) as trees whose
// edge names are t's; each appears once. Includes t itself.
std::vector<Tree> all_faces(const Tree& t);
// The faces of t whose edges all lie in `allowed`.
std::vector<Tree> all_faces_within(const Tree& t, const std::set<Edge>& allowed);

nlohmann::json arrow_to_json(const OmegaArrow& a);
OmegaArrow arrow_from_json(const nlohmann::json& j);

}  // namespace dendro
