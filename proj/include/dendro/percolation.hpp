#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dendro/dset.hpp"

namespace dendro {

enum class VertexColour { white, black };

// A tree whose edges are named "(a,x)" for an S-edge a and a T-edge x.
// White vertices are copies of S-vertices at a fixed T-colour, black ones
// copies of T-vertices at a fixed S-colour.
struct PercolationScheme {
  Tree shape;
  std::vector<VertexColour> vertex_colour;       // by vertex index of shape
  std::vector<std::pair<Edge, Edge>> edge_label;  // by edge index of shape

  std::string key() const;  // canonical labelled form
};

std::string pair_name(const Edge& a, const Edge& x);

// Build from vertices named by pair edges; colours keyed by output edge.
PercolationScheme make_scheme(const std::pair<Edge, Edge>& root,
                              const std::vector<std::pair<std::vector<std::pair<Edge, Edge>>, std::pair<Edge, Edge>>>& vs,
                              const std::vector<VertexColour>& colours);

// T stacked on each leaf of S.
PercolationScheme minimal_scheme(const Tree& s, const Tree& t);
// S stacked on each leaf of T.
PercolationScheme maximal_scheme(const Tree& s, const Tree& t);

// One successor per white vertex whose inputs all come from copies of the
// same black vertex (a white stump qualifies when its T-colour is not a
// leaf of T).
std::vector<PercolationScheme> percolation_step(const PercolationScheme& p, const Tree& s, const Tree& t);

struct SchemePoset {
  Tree s, t;
  std::vector<PercolationScheme> schemes;  // schemes[0] is the minimum
  std::set<std::pair<int, int>> covering;  // one-step pairs (i, j): j is a successor of i
};

SchemePoset enumerate_schemes(const Tree& s, const Tree& t);

// Linear extension of the covering relation, ties broken by canonical
// key. Throws "not-a-poset" on a cycle.
std::vector<int> linearize(const std::vector<PercolationScheme>& schemes, const std::set<std::pair<int, int>>& covering);

// Transitive reduction of a DAG given by edges.
std::set<std::pair<int, int>> hasse(int n, const std::set<std::pair<int, int>>& edges);

// Edges of m(T_i): colour (a,x) by edge of the scheme, as indices into
// the product E(S) x E(T) (a * |E(T)| + x).
std::vector<int> scheme_mono(const PercolationScheme& p, const Tree& s, const Tree& t);

// Key of a labelled tree up to planar isomorphism fixing names.
std::string face_key(const Tree& f);

// Omega[S] (x) Omega[T] as the union of the images m(T_i). A dendrex of
// shape R is a colour per edge of R; it is present when the colouring
// factors through some scheme.
class TensorSet : public DendroidalSet {
 public:
  TensorSet(Tree s, Tree t, int bound, int valence);
  std::string kind() const override { return "tensor"; }
  Dendrex act(const OmegaArrow& a, const Dendrex& x) const override;
  std::string show(const Dendrex& x) const override;
  const SchemePoset& poset() const { return poset_; }
  int colour(const Edge& a, const Edge& x) const;

 protected:
  std::vector<Dendrex> compute(const Tree& shape) const override;

 private:
  Tree s_, t_;
  SchemePoset poset_;
};

std::set<Dendrex> tensor_dendrices(const Tree& s, const Tree& t, const Tree& shape);

nlohmann::json scheme_to_json(const PercolationScheme& p);
nlohmann::json poset_to_json(const SchemePoset& p);
// Hasse diagram of the covering relation, nodes named T1..TN in linear order.
std::string poset_to_dot(const SchemePoset& p);

}  // namespace dendro
