#include <doctest.h>

#include <random>

#include "dendro/omega.hpp"
#include "oracles.hpp"

using namespace dendro;

namespace {

std::vector<std::vector<Edge>> images(const std::vector<OmegaArrow>& as) {
  std::vector<std::vector<Edge>> r;
  for (const auto& a : as) {
    std::vector<Edge> im;
    for (int m : a.map) im.push_back(a.target.edge(m));
    r.push_back(im);
  }
  std::sort(r.begin(), r.end());
  return r;
}

// The four-vertex tree used for the degeneracy picture: the example tree
// with a unary vertex u inserted on edge b.
Tree with_unary() { return Tree("a", {{{"g", "c", "d"}, "a"}, {{"b"}, "g"}, {{"e", "f"}, "b"}, {{}, "d"}}); }

}  // namespace

TEST_CASE("degeneracy") {
  Tree i2 = Tree::linear(2);
  for (Edge v : {"1", "2"}) {
    auto d = degeneracy(i2, v);
    CHECK(d.target.degree() == 1);
    CHECK(is_valid(d));
    CHECK(is_surjective(d));
    CHECK(d.kind.tag == FaceKindTag::degeneracy);
  }
  // s_0 s_1 = s_0 s_0 as simplicial identities: both orders reach i[0]
  auto a1 = degeneracy(i2, "1");
  auto a2 = degeneracy(a1.target, a1.target.vertices()[0].output);
  auto b1 = degeneracy(i2, "2");
  auto b2 = degeneracy(b1.target, b1.target.vertices()[0].output);
  auto x = compose(a2, a1), y = compose(b2, b1);
  CHECK(x.target.is_eta());
  CHECK(y.target.is_eta());
  CHECK(images({x}) == images({y}));

  Tree t = with_unary();
  auto d = degeneracy(t, "g");
  CHECK(d.target.degree() == 3);
  CHECK(isomorphic(d.target, example_tree()));
  CHECK(d.image("b") == "g");
  CHECK_THROWS_WITH(degeneracy(t, "a"), "not-unary");
}

TEST_CASE("outer faces") {
  Tree t = example_tree();
  CHECK(outer_admissible(t) == std::vector<Edge>{"b", "d"});
  auto dv = outer_face(t, "b");
  CHECK(is_injective(dv));
  CHECK(!dv.source.has_edge("e"));
  CHECK(!dv.source.has_edge("f"));
  CHECK(dv.source.degree() == 2);
  CHECK_THROWS_WITH(outer_face(t, "a"), "not-outer-admissible");

  for (int n = 0; n <= 3; ++n) {
    auto fs = faces(Tree::corolla(n));
    CHECK(fs.size() == static_cast<size_t>(n + 1));
    for (const auto& f : fs) {
      CHECK(f.source.is_eta());
      CHECK(f.kind.tag == FaceKindTag::outer_edge_of_corolla);
    }
  }
  // the root vertex of a two-vertex tree is admissible
  Tree two("0", {{{"1", "2"}, "0"}, {{"3"}, "1"}});
  auto root_face = outer_face(two, "0");
  CHECK(root_face.source == Tree("1", {{{"3"}, "1"}}));
}

TEST_CASE("inner faces") {
  Tree t = example_tree();
  auto db = inner_face(t, "b");
  CHECK(db.source.degree() == 2);
  CHECK(db.source.vertex_of("a") >= 0);
  CHECK(db.source.vertices()[db.source.vertex_of("a")].inputs == std::vector<Edge>{"e", "f", "c", "d"});
  CHECK_THROWS_WITH(inner_face(t, "e"), "not-inner");

  auto fs = faces(t);
  REQUIRE(fs.size() == 4);
  std::set<std::pair<int, Edge>> kinds;
  for (const auto& f : fs) {
    CHECK(is_injective(f));
    kinds.insert({static_cast<int>(f.kind.tag), f.kind.at});
  }
  CHECK(kinds == std::set<std::pair<int, Edge>>{{static_cast<int>(FaceKindTag::outer_vertex), "b"},
                                                {static_cast<int>(FaceKindTag::outer_vertex), "d"},
                                                {static_cast<int>(FaceKindTag::inner), "b"},
                                                {static_cast<int>(FaceKindTag::inner), "d"}});
}

TEST_CASE("compose") {
  Tree t = example_tree();
  auto f = inner_face(t, "b");
  CHECK(compose(identity(t), f) == f);
  CHECK(compose(f, identity(f.source)) == f);
  CHECK_THROWS_WITH(compose(f, f), "not-composable");

  // d then b, and b then d: same edge map
  auto db = inner_face(t, "b");
  auto dd_after_b = inner_face(db.source, "d");
  auto dd = inner_face(t, "d");
  auto db_after_d = inner_face(dd.source, "b");
  CHECK(dd_after_b.source == db_after_d.source);
  CHECK(images({compose(db, dd_after_b)}) == images({compose(dd, db_after_d)}));

  // isos of C_3 compose as permutations
  Tree c3 = Tree::corolla(3);
  auto p = iso_from_names(c3, c3, {{"0", "0"}, {"1", "2"}, {"2", "3"}, {"3", "1"}});
  auto q = iso_from_names(c3, c3, {{"0", "0"}, {"1", "2"}, {"2", "1"}, {"3", "3"}});
  auto pq = compose(p, q);
  CHECK(is_iso(pq));
  CHECK(pq.image("1") == p.image(q.image("1")));
}

TEST_CASE("constructed arrows are valid") {
  for (const auto& t : enumerate_trees(4, 3)) {
    for (const auto& f : faces(t)) {
      CHECK(is_valid(f));
      CHECK(is_injective(f));
      CHECK(oracle::valid_arrow(f.source, f.target, images({f})[0]));
    }
    for (int v = 0; v < t.degree(); ++v)
      if (t.in(v).size() == 1) {
        auto d = degeneracy(t, t.edge(t.out(v)));
        CHECK(is_valid(d));
        CHECK(oracle::valid_arrow(d.source, d.target, images({d})[0]));
      }
    for (const auto& a : automorphisms(t)) CHECK(is_iso(a));
  }
}

TEST_CASE("arrows_between matches brute force") {
  Tree t = example_tree();
  CHECK(arrows_between(Tree::eta(), t).size() == static_cast<size_t>(t.edge_count()));
  CHECK(arrows_between(Tree::corolla(2), Tree::eta()).empty());
  auto c22 = arrows_between(Tree::corolla(2), Tree::corolla(2));
  CHECK(c22.size() == 2);
  CHECK(arrows_between(Tree::linear(2), Tree::eta()).size() == 1);

  auto trees = enumerate_trees(3, 3);
  int pairs = 0;
  for (const auto& s : trees)
    for (const auto& u : trees) {
      if (s.edge_count() > 6 || u.edge_count() > 6) continue;
      auto mine = arrows_between(s, u);
      for (const auto& a : mine) CHECK(is_valid(a));
      auto brute = oracle::all_arrows(s, u);
      std::sort(brute.begin(), brute.end());
      CHECK(images(mine) == brute);
      ++pairs;
    }
  CHECK(pairs > 100);
}

TEST_CASE("automorphisms") {
  CHECK(automorphisms(Tree::corolla(3)).size() == 6);
  CHECK(automorphisms(example_tree()).size() == 2);
  CHECK(automorphisms(Tree::linear(3)).size() == 1);
  for (const auto& t : enumerate_trees(3, 3)) {
    size_t brute = 0;
    for (const auto& a : arrows_between(t, t)) brute += is_iso(a);
    CHECK(automorphisms(t).size() == brute);
  }
}

TEST_CASE("factorize") {
  Tree c3 = Tree::corolla(3);
  auto p = iso_from_names(c3, c3, {{"0", "0"}, {"1", "2"}, {"2", "3"}, {"3", "1"}});
  auto fp = factorize(p);
  CHECK(fp.degeneracies.empty());
  CHECK(fp.face_chain.empty());
  CHECK(recompose(fp) == p);

  auto d = degeneracy(Tree::linear(2), "1");
  auto fd = factorize(d);
  CHECK(fd.degeneracies.size() == 1);
  CHECK(fd.face_chain.empty());
  CHECK(recompose(fd) == d);

  int n = 0;
  for (const auto& s : enumerate_trees(3, 3))
    for (const auto& t : enumerate_trees(3, 3)) {
      if (s.edge_count() > 6 || t.edge_count() > 6) continue;
      for (const auto& f : arrows_between(s, t)) {
        auto fz = factorize(f);
        CHECK(recompose(fz) == f);
        CHECK(is_iso(fz.phi));
        CHECK(is_injective(fz.delta));
        CHECK(is_surjective(fz.sigma));
        // the face chain composes to delta
        OmegaArrow acc = identity(fz.delta.source);
        for (const auto& c : fz.face_chain) acc = compose(c, acc);
        CHECK(acc == fz.delta);
        ++n;
      }
    }
  CHECK(n > 500);
}

TEST_CASE("factorize on random composable chains") {
  std::mt19937 rng(11);
  auto trees = enumerate_trees(4, 3);
  int done = 0;
  for (int rep = 0; rep < 3000; ++rep) {
    const Tree& a = trees[rng() % trees.size()];
    const Tree& b = trees[rng() % trees.size()];
    const Tree& c = trees[rng() % trees.size()];
    auto ab = arrows_between(a, b);
    auto bc = arrows_between(b, c);
    if (ab.empty() || bc.empty()) continue;
    auto f = compose(bc[rng() % bc.size()], ab[rng() % ab.size()]);
    CHECK(is_valid(f));
    CHECK(recompose(factorize(f)) == f);
    ++done;
  }
  CHECK(done > 30);
}

TEST_CASE("simplicial identities on linear trees") {
  // d_j: i[n-1] -> i[n] and s_j: i[n+1] -> i[n] as monotone maps of [n]
  auto face = [](int n, int j) {
    Tree t = Tree::linear(n);
    if (n == 1) return edge_face(t, std::to_string(1 - j));
    if (j == 0) return outer_face(t, "1");
    if (j == n) return outer_face(t, std::to_string(n));
    return inner_face(t, std::to_string(j));
  };
  auto as_monotone = [](const OmegaArrow& a) {
    std::vector<int> m;
    for (int k = 0; k < a.source.edge_count(); ++k) {
      m.push_back(std::stoi(a.image(std::to_string(k))));
    }
    return m;
  };
  for (int n = 1; n <= 4; ++n)
    for (int j = 0; j <= n; ++j) {
      auto f = face(n, j);
      // relabel the source to i[n-1] in order
      std::vector<int> img;
      std::vector<std::string> src_edges;
      for (int k = 0; k < f.source.edge_count(); ++k) src_edges.push_back(f.source.edge(k));
      std::sort(src_edges.begin(), src_edges.end(), [](auto& x, auto& y) { return std::stoi(x) < std::stoi(y); });
      for (auto& e : src_edges) img.push_back(std::stoi(f.image(e)));
      std::vector<int> want;
      for (int k = 0; k < n; ++k) want.push_back(k < j ? k : k + 1);
      CHECK(img == want);
    }
  // d_j d_i = d_i d_{j-1} for i < j
  for (int n = 2; n <= 4; ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i) {
        auto monotone = [](int n_, int j_) {
          std::vector<int> m;
          for (int k = 0; k < n_; ++k) m.push_back(k < j_ ? k : k + 1);
          return m;
        };
        auto lhs_inner = monotone(n - 1, i), lhs_outer = monotone(n, j);
        auto rhs_inner = monotone(n - 1, j - 1), rhs_outer = monotone(n, i);
        std::vector<int> lhs, rhs;
        for (int k = 0; k < n - 1; ++k) {
          lhs.push_back(lhs_outer[lhs_inner[k]]);
          rhs.push_back(rhs_outer[rhs_inner[k]]);
        }
        CHECK(lhs == rhs);
        (void)as_monotone;
      }
  // degeneracy s_j merges j and j+1
  for (int n = 1; n <= 4; ++n)
    for (int j = 0; j < n; ++j) {
      auto s = degeneracy(Tree::linear(n), std::to_string(j + 1));
      CHECK(s.image(std::to_string(j)) == std::to_string(j + 1));
      CHECK(s.target.degree() == n - 1);
    }
}

TEST_CASE("all_faces") {
  auto fs = all_faces(Tree::corolla(2));
  CHECK(fs.size() == 4);  // three edges and the corolla
  // contracting inner edges of a binary tree with 3 vertices gives
  // valence at most 4
  auto sources = enumerate_trees(3, 4);
  for (const auto& t : enumerate_trees(3, 2)) {
    // brute force: images of injective arrows into t are the labelled
    // faces
    std::set<std::string> labelled;
    for (const auto& s : sources)
      for (const auto& a : arrows_between(s, t))
        if (is_injective(a)) {
          std::map<Edge, Edge> ren;
          for (int i = 0; i < s.edge_count(); ++i) ren[s.edge(i)] = "#" + t.edge(a.map[i]);
          Tree r = s.renamed(ren);
          std::map<Edge, Edge> back;
          for (const auto& e : r.edges()) back[e] = e.substr(1);
          Tree lab = r.renamed(back);
          labelled.insert(canonical_code(lab) + "@" + [&] {
            std::vector<Edge> es = lab.edges();
            std::sort(es.begin(), es.end());
            std::string k;
            for (auto& e : es) k += e + ",";
            return k;
          }());
        }
    std::set<std::string> mine;
    for (const auto& f : all_faces(t)) {
      std::vector<Edge> es = f.edges();
      std::sort(es.begin(), es.end());
      std::string k;
      for (auto& e : es) k += e + ",";
      mine.insert(canonical_code(f) + "@" + k);
    }
    CHECK(mine == labelled);
  }
}

TEST_CASE("arrow json round trip") {
  auto f = inner_face(example_tree(), "b");
  auto g = arrow_from_json(arrow_to_json(f));
  CHECK(g == f);
}
