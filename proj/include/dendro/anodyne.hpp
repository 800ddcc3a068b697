#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dendro/percolation.hpp"

namespace dendro {

// A dendroidal subset of a normal ambient (a representable or a tensor
// union), stored by its nondegenerate dendrices: labelled faces, keyed by
// face_key. Always closed under faces.
class Subobject {
 public:
  Subobject() = default;
  void add(const Tree& generator);  // with all its faces
  void insert_key(const std::string& k) { keys_.insert(k); }
  bool contains(const Tree& f) const { return keys_.count(face_key(f)) != 0; }
  bool contains_key(const std::string& k) const { return keys_.count(k) != 0; }
  const std::set<std::string>& keys() const { return keys_; }
  bool operator==(const Subobject& o) const { return keys_ == o.keys_; }

 private:
  std::set<std::string> keys_;
};

Subobject closure(const std::vector<Tree>& generators);

// One pushout along Lambda^xi[shape] -> Omega[shape]. The attaching map is
// the family of labelled maximal faces of the horn; the filler is the
// key of shape.
struct AnodyneStep {
  Tree shape;
  Edge xi;
  std::vector<Tree> family;
  std::string filler;
};

struct AnodyneCertificate {
  std::string kind;
  std::vector<Tree> start;  // generators
  std::vector<AnodyneStep> steps;
  std::vector<Tree> end;
  std::vector<int> skipped;  // tensor: schemes (in linear order) already contained
};

struct VerifyResult {
  bool ok = true;
  int step = -1;  // first failing step; steps.size() for the final comparison
  std::string reason;
  std::string detail;
};

// All labelled faces the certificate may use.
Subobject representable_ambient(const Tree& t);
Subobject tensor_ambient(const SchemePoset& p);

VerifyResult verify_certificate(const AnodyneCertificate& c, const Subobject& ambient);

// Lambda^A[t] -> Omega[t]. Throws "bad-horn-spec".
AnodyneCertificate certify_multi_horn(const Tree& t, const std::set<Edge>& a);
// Omega[t] u_l Omega[s] -> Omega[t o_l s]; empty when either is eta.
AnodyneCertificate certify_grafting(const Tree& t, const Edge& l, const Tree& s);

// Whether xi is characteristic for r with respect to the current subobject:
// every top face of r is contained, and contracting xi never brings an
// uncontained inner face into it.
bool characteristic_edge_check(const Tree& r, const Edge& xi, const Subobject& current);
// Adjoin r to current through pushouts along Lambda^xi of the faces
// r / (complement of a subset of the other qualifying edges), smallest
// subsets first. Throws "not-characteristic", "too-many-edges" (more than
// 12 qualifying edges) and "certificate-invalid".
void characteristic_expand(const Tree& r, const Edge& xi, Subobject& current, std::vector<AnodyneStep>& out);

// Lowest occurrences (e, x_i) of the S-colour e in a scheme, each with the
// branch below it and the vertex above it.
struct SpineData {
  int top_edge;              // e_i, as an edge index of the scheme
  std::set<int> vertices;    // vertex indices of the spine
};
std::vector<SpineData> spines(const PercolationScheme& p, const Edge& e);

struct TensorContext {
  Tree s, t;
  Edge e;
  SchemePoset poset;
  std::vector<int> order;     // linear extension
  std::vector<Tree> a0_generators;
  Subobject a0;
};
// A_0 = Lambda^e[S] (x) Omega[T] u Omega[S] (x) dOmega[T] inside the union
// model. Throws "not-inner".
TensorContext tensor_context(const Tree& s, const Edge& e, const Tree& t);

// A_0 -> Omega[S] (x) Omega[T] through A_k -> A_{k+1} = A_k u m(T_{k+1}).
// Throws "not-inner" and "certificate-invalid".
AnodyneCertificate certify_tensor_extension(const Tree& s, const Edge& e, const Tree& t);

nlohmann::json certificate_to_json(const AnodyneCertificate& c);
AnodyneCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace dendro
