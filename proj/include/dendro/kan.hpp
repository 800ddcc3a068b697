#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dendro/dset.hpp"

namespace dendro {

struct HornFailure {
  Tree tree;
  Edge edge;
  std::vector<Dendrex> family;  // one dendrex per maximal face of the horn
  size_t fillers = 0;
};

struct KanReport {
  size_t checked_horns = 0;  // horn maps examined
  size_t skipped = 0;        // (tree, edge) pairs outside the presheaf's range
  std::vector<HornFailure> failures;
  std::vector<HornFailure> strictness_failures;

  bool inner_kan() const { return failures.empty(); }
  bool strict() const { return failures.empty() && strictness_failures.empty(); }
};

// Every inner horn Lambda^e[T] -> x for trees T up to the given bounds
// (defaults: the presheaf's own). Trees beyond the presheaf's bound, or
// whose horn faces it does not cover, are skipped and counted.
KanReport check_inner_kan(const DendroidalSet& x, bool strict, int bound = -1, int valence = -1);
nlohmann::json kan_report_to_json(const KanReport& r);

// Dendrices of X_T restricting to the family on the horn's maximal faces.
std::vector<Dendrex> fill_horn(const DendroidalSet& x, const Sieve& horn, const std::vector<Dendrex>& family);

// Corolla dendrices live on Tree::corolla(n): root "0", leaves "1".."n".
// Colours (X_eta dendrices) of the edges of f, root first.
std::vector<Dendrex> corolla_boundary(const DendroidalSet& x, int n, const Dendrex& f);
// The degenerate unary dendrex on a colour.
Dendrex identity_dendrex(const DendroidalSet& x, const Dendrex& colour);

// Two-vertex shape carrying homotopies along edge i, with the arrows
// picking out the faces f, g and the identity.
struct HomotopyShape {
  Tree tree;
  OmegaArrow f_face, g_face, id_face;
  int n, i;
};
HomotopyShape homotopy_shape(int n, int i);

// A homotopy H: f ~_i g, if any. Throws "not-parallel" on a boundary mismatch.
std::optional<Dendrex> homotopic(const DendroidalSet& x, const Dendrex& f, const Dendrex& g, int n, int i);
// All pairs (f, g) with f ~_i g in X_{C_n}.
std::set<std::pair<Dendrex, Dendrex>> homotopy_relation(const DendroidalSet& x, int n, int i);

// The shape C_m grafted on leaf i of C_n, with the face arrows for f,
// g (outer) and h (inner).
struct CompositionShape {
  Tree tree;
  OmegaArrow f_face, g_face, h_face;
  Sieve horn;
  int n, m, i;
};
CompositionShape composition_shape(int n, int m, int i);

struct CompositionWitness {
  Dendrex h;
  Dendrex gamma;
};
// Some h ~ f o_i g with its witness (i is 1-based as an edge of C_n);
// nullopt when the horn has no filler. Throws "not-composable".
std::optional<CompositionWitness> composition_witness(const DendroidalSet& x, const Dendrex& f, int n,
                                                      const Dendrex& g, int m, int i);
// Every (f, g) -> list of witnesses, for one shape.
std::map<std::pair<Dendrex, Dendrex>, std::vector<CompositionWitness>> composition_table(const DendroidalSet& x,
                                                                                          int n, int m, int i);

struct HoOperad {
  std::shared_ptr<TableOperad> op;
  std::vector<Dendrex> colours;                  // X_eta, by colour id
  std::map<std::pair<int, Dendrex>, OpId> class_map;  // (arity, C_n dendrex) -> op
  std::map<OpId, Dendrex> representative;        // least dendrex of each class
};

// Ho(X) on arities up to max_arity (default: the presheaf's valence).
// Throws "not-inner-kan" when a needed composite has no witness and
// "arity-bound" when a composite would exceed max_arity.
HoOperad ho_operad(const DendroidalSet& x, int max_arity = -1);

inline std::shared_ptr<Nerve> nerve_of(std::shared_ptr<const ColoredOperad> p, int bound, int valence) {
  return std::make_shared<Nerve>(std::move(p), bound, valence);
}

// A map of dendroidal sets on canonical shapes: code -> (dendrex -> image).
using DendrexMap = std::map<std::string, std::map<Dendrex, Dendrex>>;

// Image of y (any labelling of a canonical shape in the map's domain).
Dendrex apply_map(const DendroidalSet& y, const DendroidalSet& x, const DendrexMap& m, const Tree& shape,
                  const Dendrex& d);
// Naturality along every arrow between canonical shapes of degree <=
// max_degree; returns a description of the first failure.
std::optional<std::string> morphism_audit(const DendroidalSet& y, const DendroidalSet& x, const DendrexMap& m,
                                          int max_degree);
// Bijective on every canonical shape of degree <= max_degree.
bool is_bijective(const DendroidalSet& y, const DendroidalSet& x, const DendrexMap& m, int max_degree);

// N_d(psi) on canonical shapes of degree <= max_degree and valence <=
// max_valence (default: the nerve's own cap).
DendrexMap nerve_map(const Nerve& y, const OperadMap& psi, int max_degree, int max_valence = -1);
// The comparison X -> N_d(Ho(X)).
DendrexMap unit_map(const DendroidalSet& x, const HoOperad& ho, int max_degree);

// Extend a map given on shapes of degree <= 2 to all shapes of y by unique
// inner horn filling, filling every inner horn of each tree and requiring
// agreement. Throws "requires-strict" when a horn does not have exactly one
// filler, "extension-not-unique" when two horns disagree.
DendrexMap coskeletal_extend(const DendroidalSet& y, const DendroidalSet& x, const DendrexMap& sk2);

}  // namespace dendro
