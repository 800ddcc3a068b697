#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace dendro {

using Edge = std::string;

// Thrown for precondition violations; what() is a short machine tag
// such as "not-a-leaf".
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& tag) : std::runtime_error(tag) {}
};

struct Vertex {
  std::vector<Edge> inputs;
  Edge output;

  bool operator==(const Vertex&) const = default;
};

struct Signature {
  std::vector<Edge> inputs;
  Edge output;

  bool operator==(const Signature&) const = default;
  auto operator<=>(const Signature&) const = default;
};

struct EdgeClasses {
  Edge root;
  std::vector<Edge> leaves;
  std::vector<Edge> inner;
};

// A finite rooted planar tree. Edges are indexed in preorder from the
// root (index 0), reading inputs left to right. Vertices are indexed by
// the preorder position of their output edge, so a vertex can also be
// named by its output edge.
class Tree {
 public:
  Tree();  // eta with edge "0"
  Tree(Edge root, std::vector<Vertex> vertices);

  static Tree eta(const Edge& e = "0");
  static Tree corolla(int n);  // root "0", leaves "1".."n"
  static Tree linear(int n);   // i[n]: edges "0".."n", "0" the leaf, "n" the root

  const Edge& root() const { return edges_[0]; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int degree() const { return static_cast<int>(vertices_.size()); }
  bool is_eta() const { return vertices_.empty(); }

  bool has_edge(const Edge& e) const { return index_.count(e) != 0; }
  int index(const Edge& e) const;  // throws Error("unknown-edge")
  const Edge& edge(int i) const { return edges_[i]; }

  // Vertex producing edge i (-1 if none) and vertex consuming it (-1 for root).
  int producer(int i) const { return producer_[i]; }
  int consumer(int i) const { return consumer_[i]; }
  // Edge indices of a vertex.
  const std::vector<int>& in(int v) const { return in_[v]; }
  int out(int v) const { return out_[v]; }
  int vertex_of(const Edge& output) const;  // throws Error("unknown-vertex")

  bool is_leaf(int i) const;
  bool is_inner(int i) const { return producer_[i] >= 0 && consumer_[i] >= 0; }
  std::vector<int> leaf_indices() const;
  std::vector<int> inner_indices() const;
  std::vector<Edge> leaves() const;
  std::vector<Edge> inner_edges() const;

  bool operator==(const Tree& o) const {
    return edges_ == o.edges_ && vertices_ == o.vertices_;
  }
  bool operator!=(const Tree& o) const { return !(*this == o); }

  // Rename edges through f (must be injective on this tree's edges).
  Tree renamed(const std::map<Edge, Edge>& f) const;

  std::string str() const;

 private:
  void build(Edge root, std::vector<Vertex> vertices);

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<Edge, int> index_;
  std::vector<int> producer_, consumer_, out_;
  std::vector<std::vector<int>> in_;
};

int degree(const Tree& t);
EdgeClasses classify_edges(const Tree& t);

// Graft s onto the leaf l of t. Edges of s get a common run of primes
// appended until they are disjoint from t; the root of s becomes l.
Tree graft(const Tree& t, const Edge& l, const Tree& s);

struct SignatureSubtree {
  Tree subtree;
  std::set<Edge> inner;
};

std::optional<SignatureSubtree> subtree_of_signature(const Tree& t, const Signature& sig);
bool realizable(const Tree& t, const Signature& sig);

// sigma o_i rho, with i a 0-based input position of sigma.
Signature signature_compose(const Tree& t, const Signature& sigma, const Signature& rho, int i);

struct Canonical {
  Tree tree;
  std::map<Edge, Edge> iso;  // original edge -> canonical edge
};

// Non-planar canonical representative; edges renamed "0","1",... in preorder.
Canonical canonical_form(const Tree& t);
std::string canonical_code(const Tree& t);
bool isomorphic(const Tree& a, const Tree& b);
Tree tree_from_canonical_code(const std::string& code);

// Canonical representatives of all trees up to isomorphism, ordered by
// degree, then edge count, then canonical code.
std::vector<Tree> enumerate_trees(int max_vertices, int max_valence);

int max_valence(const Tree& t);

// Subtree of t at edge e together with the vertices above it, cut at
// the edges in `cut` (which become leaves).
Tree subtree_above(const Tree& t, int e, const std::set<int>& cut = {});

// Tree obtained by contracting the inner edges in `es` (names kept).
Tree contract(const Tree& t, const std::set<Edge>& es);

Tree tree_from_json(const nlohmann::json& j);
nlohmann::json tree_to_json(const Tree& t);
std::string tree_to_dot(const Tree& t, const std::string& name = "T");

// The six-edge, three-vertex example tree: root a, r:(b,c,d)->a,
// v:(e,f)->b, w:()->d.
Tree example_tree();

}  // namespace dendro
