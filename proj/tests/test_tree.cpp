#include <doctest.h>

#include <algorithm>
#include <random>

#include "dendro/tree.hpp"
#include "oracles.hpp"

using namespace dendro;

namespace {

// Same tree as example_tree() with the inputs of r and v reordered.
Tree example_tree_other_planar() {
  return Tree("a", {{{"d", "b", "c"}, "a"}, {{"f", "e"}, "b"}, {{}, "d"}});
}

std::set<Edge> as_set(const std::vector<Edge>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("degree") {
  CHECK(degree(Tree::eta()) == 0);
  CHECK(degree(example_tree()) == 3);
  for (int n = 0; n <= 5; ++n) CHECK(degree(Tree::linear(n)) == n);
}

TEST_CASE("classify_edges") {
  auto c = classify_edges(example_tree());
  CHECK(c.root == "a");
  CHECK(as_set(c.leaves) == std::set<Edge>{"e", "f", "c"});
  CHECK(as_set(c.inner) == std::set<Edge>{"b", "d"});

  auto e = classify_edges(Tree::eta("x"));
  CHECK(e.root == "x");
  CHECK(e.leaves.empty());
  CHECK(e.inner.empty());

  for (int n = 0; n <= 4; ++n) {
    auto k = classify_edges(Tree::corolla(n));
    CHECK(k.root == "0");
    CHECK(k.leaves.size() == static_cast<size_t>(n));
    CHECK(k.inner.empty());
  }
}

TEST_CASE("tree invariants are enforced") {
  CHECK_THROWS_WITH(Tree("a", {{{"b"}, "a"}, {{"b"}, "c"}}), "edge-input-of-two-vertices");
  CHECK_THROWS_WITH(Tree("a", {{{"b"}, "a"}, {{"c"}, "a"}}), "edge-output-of-two-vertices");
  CHECK_THROWS_WITH(Tree("a", {{{"a"}, "b"}}), "root-is-an-input");
  CHECK_THROWS(Tree("a", {{{"b"}, "a"}, {{"d"}, "c"}}));
}

TEST_CASE("graft") {
  Tree s = example_tree();
  CHECK(isomorphic(graft(Tree::eta("z"), "z", s), s));
  CHECK(canonical_form(graft(Tree::corolla(1), "1", Tree::corolla(1))).tree ==
        canonical_form(Tree::linear(2)).tree);
  CHECK(degree(graft(Tree::corolla(2), "1", Tree::corolla(3))) == 2);
  CHECK_THROWS_WITH(graft(Tree::corolla(2), "0", Tree::corolla(1)), "not-a-leaf");
  CHECK_THROWS_WITH(graft(example_tree(), "b", Tree::corolla(1)), "not-a-leaf");

  // the grafted result is deterministic
  CHECK(graft(Tree::corolla(2), "2", Tree::corolla(2)) == graft(Tree::corolla(2), "2", Tree::corolla(2)));
}

TEST_CASE("graft is associative up to canonical form") {
  auto prefixed = [](const Tree& t, const std::string& p) {
    std::map<Edge, Edge> ren;
    for (const auto& e : t.edges()) ren[e] = p + e;
    return t.renamed(ren);
  };
  auto trees = enumerate_trees(3, 3);
  int checked = 0;
  for (const auto& t0 : trees)
    for (const auto& s0 : trees)
      for (const auto& u0 : trees) {
        if (t0.degree() + s0.degree() + u0.degree() > 5) continue;
        if (s0.is_eta()) continue;  // no leaf of s survives grafting
        Tree t = prefixed(t0, "t"), s = prefixed(s0, "s"), u = prefixed(u0, "u");
        for (const auto& l : t.leaves()) {
          Tree ts = graft(t, l, s);
          for (const auto& l2 : s.leaves()) {
            Tree left = graft(ts, l2, u);
            Tree right = graft(t, l, graft(s, l2, u));
            CHECK(isomorphic(left, right));
            CHECK(left == right);
            ++checked;
          }
        }
      }
  CHECK(checked > 100);
}

TEST_CASE("subtree_of_signature") {
  Tree t = example_tree();
  auto full = subtree_of_signature(t, {{"e", "f", "c", "d"}, "a"});
  REQUIRE(full);
  CHECK(full->inner == std::set<Edge>{"b"});
  auto whole = subtree_of_signature(t, {{"e", "f", "c"}, "a"});
  REQUIRE(whole);
  CHECK(whole->subtree == t);
  CHECK(whole->inner == std::set<Edge>{"b", "d"});
  auto unit = subtree_of_signature(t, {{"c"}, "c"});
  REQUIRE(unit);
  CHECK(unit->subtree.is_eta());
  CHECK(unit->inner.empty());
  CHECK_FALSE(subtree_of_signature(t, {{"c"}, "a"}));

  // agreement with the brute-force span table on every signature
  for (const auto& tr : enumerate_trees(4, 3)) {
    auto spans = oracle::all_spans(tr);
    for (const auto& sp : spans) {
      std::vector<Edge> ins(sp.leaves.begin(), sp.leaves.end());
      auto r = subtree_of_signature(tr, {ins, sp.root});
      REQUIRE(r);
      CHECK(r->inner == sp.inner);
    }
    // and no extra realizable signatures: count them per output edge
    for (const auto& o : tr.edges()) {
      size_t brute = 0;
      for (const auto& sp : spans) brute += sp.root == o;
      size_t mine = 0;
      std::vector<Edge> es = tr.edges();
      for (uint32_t m = 0; m < (1u << es.size()); ++m) {
        std::vector<Edge> ins;
        for (size_t j = 0; j < es.size(); ++j)
          if (m >> j & 1) ins.push_back(es[j]);
        if (std::find(ins.begin(), ins.end(), o) != ins.end()) continue;
        mine += realizable(tr, {ins, o});
      }
      CHECK(mine == brute);
    }
  }
}

TEST_CASE("signature_compose") {
  Tree t = example_tree();
  Signature r{{"b", "c", "d"}, "a"};
  Signature v{{"e", "f"}, "b"};
  CHECK(signature_compose(t, r, v, 0) == Signature{{"e", "f", "c", "d"}, "a"});
  CHECK(signature_compose(t, {{"b"}, "b"}, v, 0) == v);
  CHECK_THROWS_WITH(signature_compose(t, r, v, 1), "graft-mismatch");
}

TEST_CASE("inner edges of a composite signature") {
  int checked = 0;
  for (const auto& t : enumerate_trees(4, 3)) {
    auto spans = oracle::all_spans(t);
    for (const auto& a : spans) {
      std::vector<Edge> ins(a.leaves.begin(), a.leaves.end());
      for (size_t i = 0; i < ins.size(); ++i) {
        for (const auto& b : spans) {
          if (b.root != ins[i]) continue;
          std::vector<Edge> bins(b.leaves.begin(), b.leaves.end());
          Signature c = signature_compose(t, {ins, a.root}, {bins, b.root}, static_cast<int>(i));
          auto sub = subtree_of_signature(t, c);
          REQUIRE(sub);
          std::set<Edge> want = a.inner;
          want.insert(b.inner.begin(), b.inner.end());
          want.insert(ins[i]);
          CHECK(sub->inner == want);
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("canonical_form") {
  Tree t = example_tree();
  auto c = canonical_form(t);
  CHECK(canonical_form(c.tree).tree == c.tree);
  CHECK(canonical_form(example_tree_other_planar()).tree == c.tree);
  CHECK(t.renamed(c.iso) == t.renamed(c.iso));

  Tree swapped("0", {{{"2", "1"}, "0"}});
  auto cs = canonical_form(swapped);
  CHECK(cs.tree == canonical_form(Tree::corolla(2)).tree);
  // iso sends the planar first input of `swapped` to "1"
  CHECK(cs.iso.at("2") == "1");
  CHECK(cs.iso.at("1") == "2");

  // the iso carries t onto the canonical tree up to planar order
  for (const auto& tr : enumerate_trees(4, 3)) {
    auto cf = canonical_form(tr);
    CHECK(isomorphic(tr.renamed(cf.iso), cf.tree));
    CHECK(cf.tree == tr);  // enumerate_trees already yields canonical forms
  }
}

TEST_CASE("canonical_form ignores edge names and planar order") {
  std::mt19937 rng(7);
  for (const auto& tr : enumerate_trees(4, 3)) {
    for (int rep = 0; rep < 5; ++rep) {
      std::map<Edge, Edge> ren;
      std::vector<Edge> names;
      for (int i = 0; i < tr.edge_count(); ++i) names.push_back("x" + std::to_string(i * 7 + rep));
      std::shuffle(names.begin(), names.end(), rng);
      for (int i = 0; i < tr.edge_count(); ++i) ren[tr.edge(i)] = names[i];
      std::vector<Vertex> vs;
      Tree named = tr.renamed(ren);
      for (auto v : named.vertices()) {
        std::shuffle(v.inputs.begin(), v.inputs.end(), rng);
        vs.push_back(v);
      }
      Tree moved(ren.at(tr.root()), vs);
      CHECK(canonical_form(moved).tree == canonical_form(tr).tree);
    }
  }
}

TEST_CASE("enumerate_trees") {
  auto z = enumerate_trees(0, 3);
  REQUIRE(z.size() == 1);
  CHECK(z[0].is_eta());

  auto one = enumerate_trees(1, 2);
  REQUIRE(one.size() == 4);
  CHECK(one[0].is_eta());
  CHECK(one[1] == Tree::corolla(0));
  CHECK(one[2] == Tree::corolla(1));
  CHECK(one[3] == Tree::corolla(2));

  for (int n = 0; n <= 5; ++n)
    for (int k = 0; k <= 3; ++k) {
      auto all = enumerate_trees(n, k);
      uint64_t want = 0;
      for (int m = 0; m <= n; ++m) want += oracle::count_trees(m, k);
      CHECK_MESSAGE(all.size() == want, "n=" << n << " k=" << k);
      std::set<std::string> codes;
      for (const auto& t : all) codes.insert(canonical_code(t));
      CHECK(codes.size() == all.size());
    }
  CHECK(oracle::count_trees(2, 2) == 6);
}

TEST_CASE("json and dot") {
  Tree t = example_tree();
  CHECK(tree_from_json(tree_to_json(t)) == t);
  auto j = tree_to_json(t);
  CHECK(j["root"] == "a");
  CHECK(j["vertices"].size() == 3);
  std::string dot = tree_to_dot(t);
  CHECK(dot.find("rankdir=BT") != std::string::npos);
}
