#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dendro/omega.hpp"
#include "dendro/operad.hpp"

namespace dendro {

using Dendrex = std::vector<int>;

// A presheaf on Omega restricted to trees of degree <= bound and valence
// <= valence. Shapes may carry arbitrary edge names; backends either work
// with labelled shapes directly or route through canonical forms.
class DendroidalSet {
 public:
  DendroidalSet(int bound, int valence) : bound_(bound), valence_(valence) {}
  virtual ~DendroidalSet() = default;

  virtual std::string kind() const = 0;
  int bound() const { return bound_; }
  int valence() const { return valence_; }

  // Memoized per shape.
  const std::vector<Dendrex>& dendrices(const Tree& shape) const;
  // a* x for x in X(a.target).
  virtual Dendrex act(const OmegaArrow& a, const Dendrex& x) const = 0;
  virtual std::string show(const Dendrex& x) const;

  // Canonical shapes within the bounds.
  std::vector<Tree> shapes() const;
  // False for shapes the backend has no data for (tables outside their range).
  virtual bool covers(const Tree&) const { return true; }

 protected:
  virtual std::vector<Dendrex> compute(const Tree& shape) const = 0;

 private:
  int bound_, valence_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::vector<Dendrex>> cache_;
};

// Omega[T]: dendrices of shape S are arrows S -> T, stored as edge maps.
class Representable : public DendroidalSet {
 public:
  Representable(Tree t, int bound, int valence);
  std::string kind() const override { return "representable"; }
  const Tree& tree() const { return t_; }
  Dendrex act(const OmegaArrow& a, const Dendrex& x) const override;
  std::string show(const Dendrex& x) const override;

 protected:
  std::vector<Dendrex> compute(const Tree& shape) const override;

 private:
  Tree t_;
};

// N_d(P): a dendrex of shape S is a colour per edge followed by an op per
// vertex (edge and vertex order of S).
class Nerve : public DendroidalSet {
 public:
  Nerve(std::shared_ptr<const ColoredOperad> p, int bound, int valence);
  std::string kind() const override { return "nerve"; }
  const ColoredOperad& operad() const { return *p_; }
  std::shared_ptr<const ColoredOperad> operad_ptr() const { return p_; }
  Dendrex act(const OmegaArrow& a, const Dendrex& x) const override;
  std::string show(const Dendrex& x) const override;
  // The op labelling vertex v (index into the shape's vertices).
  static OpId vertex_op(const Tree& shape, const Dendrex& x, int v) { return x[shape.edge_count() + v]; }
  // Composite op of the subtree of `shape` at edge o cut at the given
  // leaves, inputs in the order given.
  OpId composite(const Tree& shape, const Dendrex& x, int o, const std::vector<int>& leaves) const;

 protected:
  std::vector<Dendrex> compute(const Tree& shape) const override;

 private:
  std::shared_ptr<const ColoredOperad> p_;
};

// Explicit tables on canonical shapes. Dendrices are {id}; actions along
// arrows between canonical shapes are stored, other arrows are routed
// through the canonical isomorphisms.
class TableSet : public DendroidalSet {
 public:
  TableSet(int bound, int valence) : DendroidalSet(bound, valence) {}
  std::string kind() const override { return "table"; }
  Dendrex act(const OmegaArrow& a, const Dendrex& x) const override;

  void set_count(const Tree& canonical_shape, int n);
  void set_action(const OmegaArrow& canonical_arrow, std::vector<int> table);
  int count(const std::string& code) const;
  bool covers(const Tree& shape) const override { return counts_.count(canonical_code(shape)) != 0; }
  const std::map<std::string, int>& counts() const { return counts_; }
  const std::map<std::string, std::vector<int>>& actions() const { return actions_; }
  static std::string arrow_key(const OmegaArrow& a);

 protected:
  std::vector<Dendrex> compute(const Tree& shape) const override;

 private:
  std::map<std::string, int> counts_;                 // canonical code -> count
  std::map<std::string, std::vector<int>> actions_;  // arrow key -> table
};

struct Sieve;

// The sub-presheaf of Omega[T] given by a sieve.
class SieveSet : public Representable {
 public:
  SieveSet(const struct Sieve& s, int bound, int valence);
  std::string kind() const override { return "sieve"; }

 protected:
  std::vector<Dendrex> compute(const Tree& shape) const override;

 private:
  std::shared_ptr<const struct Sieve> sieve_;
};

// Copy x into tables (every arrow between canonical shapes).
std::shared_ptr<TableSet> tabulate(const DendroidalSet& x);

// Sub-presheaf of base omitting a dendrex and everything that has it as
// a face.
class WithoutDendrex : public DendroidalSet {
 public:
  WithoutDendrex(std::shared_ptr<const DendroidalSet> base, Tree shape, Dendrex removed);
  std::string kind() const override { return base_->kind() + "-minus"; }
  Dendrex act(const OmegaArrow& a, const Dendrex& x) const override { return base_->act(a, x); }
  std::string show(const Dendrex& x) const override { return base_->show(x); }
  bool covers(const Tree& s) const override { return base_->covers(s); }
  bool removed(const Tree& shape, const Dendrex& y) const;

 protected:
  std::vector<Dendrex> compute(const Tree& shape) const override;

 private:
  std::shared_ptr<const DendroidalSet> base_;
  Tree shape_;
  Dendrex removed_;
};

// Face-membership for labelled trees: f is a face of g when its edge
// names are among g's and the inclusion is an arrow of Omega.
bool is_subface(const Tree& f, const Tree& g);
// Maximal common faces of two labelled trees.
std::vector<Tree> common_faces(const Tree& a, const Tree& b);

// A subobject of Omega[T] given by maximal faces (labelled by T's edges).
struct Sieve {
  Tree tree;
  std::vector<Tree> maximal;
  bool contains(const OmegaArrow& f) const;  // f: S -> tree
};

Sieve boundary(const Tree& t);                       // error "eta-has-no-boundary"
Sieve horn(const Tree& t, const std::set<Edge>& a);  // error "bad-horn-spec"
Sieve representable_sieve(const Tree& t);

// Compatible families {x_G in X_G} over the generators. Families agree on
// every common face of two generators.
std::vector<std::vector<Dendrex>> hom_into(const std::vector<Tree>& generators, const DendroidalSet& x,
                                           size_t limit = 0);
inline std::vector<std::vector<Dendrex>> hom_into(const Sieve& s, const DendroidalSet& x, size_t limit = 0) {
  return hom_into(s.maximal, x, limit);
}

// Restriction of y in X_t to a labelled face f of t.
Dendrex restrict_to(const DendroidalSet& x, const Tree& t, const Dendrex& y, const Tree& f);

// Degeneracy composite collapsing the given unary vertices (by output
// edge), and the section picking the lowest edge of each fibre.
OmegaArrow collapse(const Tree& t, const std::set<Edge>& unary);
OmegaArrow lowest_section(const OmegaArrow& sigma);

struct DegeneracyWitness {
  OmegaArrow sigma;  // t -> t'
  Dendrex base;      // in X_{t'}
};
std::optional<DegeneracyWitness> is_degenerate(const DendroidalSet& x, const Tree& t, const Dendrex& y);
std::vector<Dendrex> nondegenerate(const DendroidalSet& x, const Tree& t);

// Membership of y in Sk_n(X).
bool in_skeleton(const DendroidalSet& x, int n, const Tree& t, const Dendrex& y);
std::vector<Dendrex> skeleton_dendrices(const DendroidalSet& x, int n, const Tree& t);

struct NormalityReport {
  bool normal = true;
  std::optional<Tree> shape;
  std::optional<Dendrex> dendrex;
  std::optional<OmegaArrow> automorphism;
};
NormalityReport is_normal(const DendroidalSet& x);
bool skeletal_pushout_check(const DendroidalSet& x, int n);

// (ba)* = a* b* and id* = id on shapes up to the given degree; returns a
// description of the first failure.
std::optional<std::string> functoriality_audit(const DendroidalSet& x, int max_degree);

nlohmann::json dset_to_json(const DendroidalSet& x);
std::shared_ptr<DendroidalSet> dset_from_json(const nlohmann::json& j);

}  // namespace dendro
