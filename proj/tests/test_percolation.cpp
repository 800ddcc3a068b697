#include <doctest.h>

#include <chrono>
#include <functional>

#include "dendro/corpus.hpp"
#include "dendro/percolation.hpp"
#include "oracles.hpp"
#include "percolation_oracle.hpp"

using namespace dendro;
using namespace percolation_oracle;

namespace {

// Swap the roles of S and T in a scheme.
std::string swapped_key(const PercolationScheme& p) {
  std::vector<std::pair<std::vector<P>, P>> vs;
  std::vector<VertexColour> cs;
  for (int v = 0; v < p.shape.degree(); ++v) {
    std::vector<P> in;
    for (int e : p.shape.in(v)) in.push_back({p.edge_label[e].second, p.edge_label[e].first});
    auto o = p.edge_label[p.shape.out(v)];
    vs.push_back({in, {o.second, o.first}});
    cs.push_back(p.vertex_colour[v] == VertexColour::white ? VertexColour::black : VertexColour::white);
  }
  auto r = p.edge_label[0];
  return make_scheme({r.second, r.first}, vs, cs).key();
}

std::vector<Tree> small_trees(int max_vertices) { return enumerate_trees(max_vertices, 3); }

}  // namespace

TEST_CASE("unit and corolla scheme counts") {
  for (const auto& t : small_trees(3)) {
    CHECK(enumerate_schemes(Tree::eta("s"), t).schemes.size() == 1);
    CHECK(enumerate_schemes(t, Tree::eta("t")).schemes.size() == 1);
  }
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      auto p = enumerate_schemes(Tree::corolla(m), Tree::corolla(n));
      CHECK(p.schemes.size() == 2);
      REQUIRE(linearize(p.schemes, p.covering) == std::vector<int>{0, 1});
      CHECK(p.schemes[1].key() == maximal_scheme(Tree::corolla(m), Tree::corolla(n)).key());
    }
}

TEST_CASE("single steps") {
  Tree c1 = Tree::corolla(1);
  auto t1 = minimal_scheme(c1, c1);
  auto next = percolation_step(t1, c1, c1);
  REQUIRE(next.size() == 1);
  CHECK(next[0].key() == maximal_scheme(c1, c1).key());
  CHECK(percolation_step(next[0], c1, c1).empty());
  // a white stump with nothing left to move
  Tree c0 = Tree::corolla(0);
  CHECK(percolation_step(minimal_scheme(c0, Tree::eta("t")), c0, Tree::eta("t")).empty());
}

TEST_CASE("fourteen schemes and the reference Hasse diagram") {
  Tree s = tensor_example_s(), t = tensor_example_t();
  auto start = std::chrono::steady_clock::now();
  auto p = enumerate_schemes(s, t);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(secs < 1.0);
  const int n = static_cast<int>(p.schemes.size());
  REQUIRE(n == 14);
  CHECK(sources(n, p.covering) == 1);
  CHECK(sinks(n, p.covering) == 1);
  CHECK(hasse(n, p.covering) == p.covering);
  CHECK(p.covering.size() == 21);

  auto order = linearize(p.schemes, p.covering);
  CHECK(order.front() == 0);
  CHECK(p.schemes[order.back()].key() == maximal_scheme(s, t).key());
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::set<std::pair<int, int>> relabelled;
  for (auto [a, b] : p.covering) {
    CHECK(pos[a] < pos[b]);
    relabelled.insert({pos[a], pos[b]});
  }
  CHECK(dag_isomorphic(n, relabelled, reference_hasse_edges()));

  // independent recomputation
  auto plain = plain_poset(s, t);
  REQUIRE(plain.nodes.size() == 14);
  std::map<Plain, int> lib;
  for (int i = 0; i < n; ++i) lib[to_plain(p.schemes[i])] = i;
  std::set<std::pair<int, int>> mapped;
  for (auto [a, b] : plain.steps) mapped.insert({lib.at(plain.nodes[a]), lib.at(plain.nodes[b])});
  CHECK(mapped == p.covering);
}

TEST_CASE("linearize rejects cycles") {
  Tree c1 = Tree::corolla(1);
  auto p = enumerate_schemes(c1, c1);
  auto cov = p.covering;
  cov.insert({1, 0});
  CHECK_THROWS_WITH(linearize(p.schemes, cov), "not-a-poset");
}

TEST_CASE("orientation and projections") {
  auto trees = small_trees(4);
  for (const auto& s : trees)
    for (const auto& t : trees) {
      if (s.degree() + t.degree() > 5) continue;
      auto p = enumerate_schemes(s, t);
      auto q = enumerate_schemes(t, s);
      REQUIRE(p.schemes.size() == q.schemes.size());
      std::set<std::string> a, b;
      for (const auto& x : p.schemes) a.insert(swapped_key(x));
      for (const auto& x : q.schemes) b.insert(x.key());
      CHECK(a == b);
      CHECK(sources(static_cast<int>(p.schemes.size()), p.covering) == 1);
      CHECK(sinks(static_cast<int>(p.schemes.size()), p.covering) == 1);

      for (const auto& x : p.schemes) {
        // white vertices are S-vertex copies covering S; black ones T-vertex copies covering T
        std::set<Signature> white, black;
        for (int v = 0; v < x.shape.degree(); ++v) {
          Signature sw, sb;
          bool same_t = true, same_s = true;
          auto o = x.edge_label[x.shape.out(v)];
          for (int e : x.shape.in(v)) {
            sw.inputs.push_back(x.edge_label[e].first);
            sb.inputs.push_back(x.edge_label[e].second);
            same_t = same_t && x.edge_label[e].second == o.second;
            same_s = same_s && x.edge_label[e].first == o.first;
          }
          sw.output = o.first;
          sb.output = o.second;
          if (x.vertex_colour[v] == VertexColour::white) {
            CHECK(same_t);
            white.insert(sw);
          } else {
            CHECK(same_s);
            black.insert(sb);
          }
        }
        std::set<Signature> sv, tv;
        for (const auto& v : s.vertices()) sv.insert({v.inputs, v.output});
        for (const auto& v : t.vertices()) tv.insert({v.inputs, v.output});
        // stumps on the other side absorb copies, so only inclusion holds then
        CHECK(std::includes(sv.begin(), sv.end(), white.begin(), white.end()));
        CHECK(std::includes(tv.begin(), tv.end(), black.begin(), black.end()));
        if (!t.leaves().empty()) CHECK(white == sv);
        if (!s.leaves().empty()) CHECK(black == tv);
        // root and leaves
        CHECK(x.edge_label[0] == std::make_pair(s.root(), t.root()));
        std::set<P> leaves, want;
        for (int e : x.shape.leaf_indices()) leaves.insert(x.edge_label[e]);
        for (const auto& a : s.leaves())
          for (const auto& y : t.leaves()) want.insert({a, y});
        CHECK(leaves == want);
      }
    }
}

TEST_CASE("m is injective on colours and reflects faces") {
  Tree s = Tree::linear(2), t = Tree::corolla(2);
  TensorSet x(s, t, 4, 3);
  for (const auto& p : x.poset().schemes) {
    auto m = scheme_mono(p, s, t);
    CHECK(std::set<int>(m.begin(), m.end()).size() == m.size());
    std::set<int> pairs;
    for (const auto& [a, y] : p.edge_label) pairs.insert(x.colour(a, y));
    CHECK(pairs == std::set<int>(m.begin(), m.end()));
  }
  // m(F) in m(G) iff F is a face of G, over faces of one scheme
  const auto& top = x.poset().schemes.back();
  auto m = scheme_mono(top, s, t);
  auto image = [&](const Tree& f) {
    std::set<Dendrex> r;
    for (const auto& shape : enumerate_trees(2, 2))
      for (const auto& a : arrows_between(shape, f)) {
        Dendrex d;
        for (int e : a.map) d.push_back(m[top.shape.index(f.edge(e))]);
        r.insert(d);
      }
    return r;
  };
  auto faces = all_faces(top.shape);
  std::vector<std::set<Dendrex>> imgs;
  for (const auto& f : faces) imgs.push_back(image(f));
  int checked = 0;
  for (size_t i = 0; i < faces.size(); ++i)
    for (size_t j = 0; j < faces.size(); ++j) {
      if (faces[i].degree() > 2 || faces[j].degree() > 2) continue;
      bool sub = std::includes(imgs[j].begin(), imgs[j].end(), imgs[i].begin(), imgs[i].end());
      CHECK(sub == is_subface(faces[i], faces[j]));
      ++checked;
    }
  CHECK(checked > 100);
}

TEST_CASE("tensor colours and units") {
  for (const auto& s : small_trees(2))
    for (const auto& t : small_trees(2)) {
      auto d = tensor_dendrices(s, t, Tree::eta());
      CHECK(d.size() == static_cast<size_t>(s.edge_count() * t.edge_count()));
    }
  Tree t = example_tree();
  TensorSet x(Tree::eta("u"), t, 3, 3);
  Representable r(t, 3, 3);
  for (const auto& shape : x.shapes()) CHECK(x.dendrices(shape).size() == r.dendrices(shape).size());
}

TEST_CASE("linear tensors are nerves of product posets") {
  // A dendrex on i[k] is a chain c_0 <= ... <= c_k in [n] x [m]; the
  // coordinates are independent multichains.
  for (int n = 1; n <= 2; ++n)
    for (int m = 1; m <= 2; ++m) {
      Tree s = Tree::linear(n), t = Tree::linear(m);
      TensorSet x(s, t, 3, 3);
      for (int k = 0; k <= 3; ++k) {
        Tree shape = Tree::linear(k);
        const auto& ds = x.dendrices(shape);
        CHECK(ds.size() == oracle::binom(n + k + 1, k + 1) * oracle::binom(m + k + 1, k + 1));
        for (const auto& d : ds)
          for (int e = 1; e < shape.edge_count(); ++e) {
            // edge e sits above edge e-1 in preorder
            int a0 = std::stoi(s.edge(d[e - 1] / t.edge_count())), x0 = std::stoi(t.edge(d[e - 1] % t.edge_count()));
            int a1 = std::stoi(s.edge(d[e] / t.edge_count())), x1 = std::stoi(t.edge(d[e] % t.edge_count()));
            CHECK(a1 <= a0);
            CHECK(x1 <= x0);
          }
        // no corollas of other arities
        CHECK(x.dendrices(Tree::corolla(0)).empty());
        CHECK(x.dendrices(Tree::corolla(2)).empty());
      }
    }
}

TEST_CASE("binary tensor unary counts") {
  // Generators p(x) (binary, one per T-colour) and (a)q (unary, one per
  // S-colour) modulo q o p(1) = p(0) o (q, q). Binary operations: p(0),
  // p(1), the composite, and p(0) with q on exactly one input; each in
  // both input orders.
  Tree s = Tree::corolla(2), t = Tree::corolla(1);
  TensorSet x(s, t, 2, 2);
  CHECK(x.dendrices(Tree::corolla(2)).size() == 10);
  // unary: 6 identities, q at each of 3 S-colours
  CHECK(x.dendrices(Tree::corolla(1)).size() == 9);
  CHECK(x.dendrices(Tree::corolla(0)).empty());
}

TEST_CASE("export") {
  auto p = enumerate_schemes(tensor_example_s(), tensor_example_t());
  auto dot = poset_to_dot(p);
  CHECK(std::count(dot.begin(), dot.end(), '>') == 21);
  CHECK(dot.find("T14;") != std::string::npos);
  auto j = poset_to_json(p);
  CHECK(j["schemes"].size() == 14);
  CHECK(j["covering"].size() == 21);
  CHECK(nlohmann::json::parse(j.dump()) == j);
  CHECK(j["schemes"][0]["vertex_colour"][0] == "white");
}
