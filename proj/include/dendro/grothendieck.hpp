#pragma once

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dendro/dset.hpp"
#include "dendro/kan.hpp"

namespace dendro {

// A finite Cartesian category that is a poset: products are meets, the
// terminal object is the top, and every hom-set has at most one arrow.
struct CartesianData {
  std::vector<std::string> objects;
  std::vector<std::vector<bool>> leq;  // leq[a][b]: an arrow a -> b
  std::vector<std::vector<int>> meet;  // chosen product a x b
  int top = 0;                         // terminal object

  int size() const { return static_cast<int>(objects.size()); }
  int product(const std::vector<int>& xs) const;  // top for the empty product
};

// Order and meet-semilattice axioms; empty when they hold.
std::vector<std::string> validate_cartesian(const CartesianData& s);

CartesianData terminal_category();
CartesianData two_object_category();  // 0 -> 1, with 0 x 1 = 0 and 1 terminal

// The category as an operad via its products: one operation
// (c_1..c_n; c) exactly when c_1 x ... x c_n -> c exists. Operations are
// interned on first use; all_ops lists arities up to max_arity.
class CartesianOperad : public ColoredOperad {
 public:
  CartesianOperad(CartesianData s, int max_arity);
  const CartesianData& data() const { return s_; }

  int colour_count() const override { return s_.size(); }
  const std::string& colour_name(ColourId c) const override { return s_.objects[c]; }
  bool symmetric() const override { return true; }
  OpId unit(ColourId c) const override;
  const std::vector<ColourId>& inputs(OpId p) const override;
  ColourId output(OpId p) const override;
  std::string op_name(OpId p) const override;
  std::vector<OpId> ops_with(ColourId out, int arity) const override;
  OpId compose(OpId p, int i, OpId q) const override;
  OpId act(OpId p, const Perm& s) const override;
  std::vector<OpId> all_ops() const override;
  OpId op_for(const std::vector<ColourId>& in, ColourId out) const;  // -1 if none

 private:
  OpId intern(const std::vector<ColourId>& in, ColourId out) const;

  CartesianData s_;
  int max_arity_;
  mutable std::mutex mu_;
  mutable std::deque<std::vector<ColourId>> in_;
  mutable std::vector<ColourId> out_;
  mutable std::map<std::vector<int>, OpId> ids_;
};

// X: S^op -> dSet. restrict(a, b, shape, y) applies X(a -> b): X(b) -> X(a).
struct DendroidalDiagram {
  std::vector<std::shared_ptr<const DendroidalSet>> component;
  std::function<Dendrex(int a, int b, const Tree& shape, const Dendrex& y)> restrict;
};

// Constant diagram: every component is x, every restriction the identity.
DendroidalDiagram constant_diagram(const CartesianData& s, std::shared_ptr<const DendroidalSet> x);
// Components N_d(P_a) with restrictions N_d(psi_{a,b}) for operad maps
// psi_{a,b}: P_b -> P_a given for every a <= b.
DendroidalDiagram nerve_diagram(const CartesianData& s, const std::vector<std::shared_ptr<const Nerve>>& nerves,
                                const std::map<std::pair<int, int>, OperadMap>& maps);

// A diagram of nerves given by operads and operad maps: maps[{a, b}] is
// psi_{a,b}: P_b -> P_a for a < b.
struct NerveDiagramSpec {
  CartesianData category;
  std::vector<std::shared_ptr<const ColoredOperad>> operads;
  std::map<std::pair<int, int>, OperadMap> maps;
};
DendroidalDiagram realize(const NerveDiagramSpec& spec, int bound, int valence);
// Every a < b has a map, every map is an operad map; problems as text.
std::vector<std::string> validate_spec(const NerveDiagramSpec& spec);

nlohmann::json cartesian_to_json(const CartesianData& s);
CartesianData cartesian_from_json(const nlohmann::json& j);
// Maps are stored by op names, so operads must have distinct op names.
nlohmann::json diagram_spec_to_json(const NerveDiagramSpec& spec);
NerveDiagramSpec diagram_spec_from_json(const nlohmann::json& j);

// Identity, composition and naturality of the restrictions on canonical
// shapes up to max_degree; a description of the first failure.
std::optional<std::string> diagram_audit(const CartesianData& s, const DendroidalDiagram& d, int max_degree);

// The Grothendieck construction. A dendrex of shape T is a pair (t, x):
// t in N_d(S)_T and, for each face F of T, x_F in X(in(F*t))_F, where in
// is the product of the leaf colours, subject to
// (G -> F)* x_F = X(in(F*t) -> in(G*t)) x_G for faces G of F. Values on
// other arrows into T follow through the face/degeneracy factorization.
// Encoding: [|t|, t..., then per face of T in all_faces order: |x_F|, x_F...].
class IntegralSet : public DendroidalSet {
 public:
  IntegralSet(CartesianData s, DendroidalDiagram d, int bound, int valence);
  std::string kind() const override { return "integral"; }
  Dendrex act(const OmegaArrow& a, const Dendrex& y) const override;

  const Nerve& base() const { return *base_; }
  const DendroidalDiagram& diagram() const { return d_; }
  const CartesianData& category() const { return s_; }

  // in(t) for a nerve dendrex of S on shape.
  int in_object(const Tree& shape, const Dendrex& t) const;
  // Projection to N_d(S).
  Dendrex project(const Dendrex& y) const;
  // x_F for a face F of the dendrex's shape.
  Dendrex value_at(const Tree& shape, const Dendrex& y, const Tree& face) const;
  Dendrex encode(const Tree& shape, const Dendrex& t, const std::map<std::string, Dendrex>& x) const;
  // Faces of a shape in encoding order.
  const std::vector<Tree>& faces_of(const Tree& shape) const;
  // Every component passes check_inner_kan up to this set's bounds (cached).
  bool components_kan() const;

 protected:
  std::vector<Dendrex> compute(const Tree& shape) const override;

 private:
  CartesianData s_;
  DendroidalDiagram d_;
  std::shared_ptr<const Nerve> base_;
  mutable std::mutex mu_;
  struct FaceIndex {
    std::vector<Tree> faces;
    std::map<std::string, int> position;  // face_key -> index
  };
  const FaceIndex& face_index(const Tree& shape) const;
  mutable std::map<std::string, FaceIndex> faces_;
  mutable std::optional<bool> components_kan_;
};

std::shared_ptr<IntegralSet> integrate(const DendroidalDiagram& d, const CartesianData& s, int bound, int valence);

// Filler for an inner horn into the integral, built as in the Kan
// argument: fill the projection in N_d(S), pull the family back to
// X(in(t)), fill there, and extend. Throws "component-not-kan" when some
// component fails check_inner_kan up to the integral's bounds.
Dendrex integrate_fill_horn(const IntegralSet& x, const Sieve& horn, const std::vector<Dendrex>& family);

}  // namespace dendro
