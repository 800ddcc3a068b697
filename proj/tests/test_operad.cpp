#include <doctest.h>

#include "dendro/corpus.hpp"
#include "dendro/omega.hpp"
#include "dendro/operad.hpp"
#include "oracles.hpp"

using namespace dendro;

namespace {

// Operad map Omega(s) -> Omega(t) induced by an arrow.
OperadMap induced(const OmegaArrow& a, const OmegaOperad& ps, const OmegaOperad& pt) {
  OperadMap f;
  f.colour_map = a.map;
  for (OpId x : ps.all_ops()) {
    Signature s = ps.signature(x);
    Signature img;
    for (const auto& e : s.inputs) img.inputs.push_back(a.image(e));
    img.output = a.image(s.output);
    f.op_map[x] = pt.op_for(img);
  }
  return f;
}

// Labellings of a planar tree by a finite operad: colours on edges and an
// op of matching signature on every vertex, counted by brute force.
size_t count_labellings(const Tree& t, const ColoredOperad& p) {
  const int n = t.edge_count();
  std::vector<int> c(n, 0);
  size_t total = 0;
  const auto ops = p.all_ops();
  for (;;) {
    size_t prod = 1;
    for (int v = 0; v < t.degree() && prod; ++v) {
      size_t k = 0;
      for (OpId x : ops) {
        if (p.output(x) != c[t.out(v)] || p.arity(x) != static_cast<int>(t.in(v).size())) continue;
        bool ok = true;
        for (size_t j = 0; j < t.in(v).size(); ++j) ok = ok && p.inputs(x)[j] == c[t.in(v)[j]];
        k += ok;
      }
      prod *= k;
    }
    total += prod;
    int k = 0;
    while (k < n && ++c[k] == p.colour_count()) c[k++] = 0;
    if (k == n) break;
  }
  return total;
}

}  // namespace

TEST_CASE("omega_operad of the example tree") {
  OmegaOperad o(example_tree());
  CHECK(o.op_for({{"b", "c", "d"}, "a"}) >= 0);
  CHECK(o.op_for({{"e", "f"}, "b"}) >= 0);
  CHECK(o.op_for({{}, "d"}) >= 0);
  CHECK(o.op_for({{"c", "d", "b"}, "a"}) >= 0);
  CHECK(o.op_for({{"c"}, "a"}) < 0);
  OpId r = o.op_for({{"b", "c", "d"}, "a"});
  OpId v = o.op_for({{"e", "f"}, "b"});
  CHECK(o.signature(o.compose(r, 0, v)) == Signature{{"e", "f", "c", "d"}, "a"});

  // op count: units plus every realizable signature in every order
  size_t want = o.tree().edge_count();
  for (const auto& sp : oracle::all_spans(o.tree())) want += factorial(static_cast<int>(sp.leaves.size()));
  CHECK(o.all_ops().size() == want);
}

TEST_CASE("omega_operad of eta") {
  OmegaOperad o(Tree::eta());
  CHECK(o.colour_count() == 1);
  CHECK(o.all_ops().size() == 1);
  CHECK(validate(o).empty());
}

TEST_CASE("validate accepts Omega(T)") {
  for (const auto& t : enumerate_trees(4, 2)) {
    OmegaOperad o(t);
    auto v = validate(o);
    CHECK_MESSAGE(v.empty(), t.str() << " " << (v.empty() ? "" : v[0].law + " " + v[0].detail));
    OmegaOperad planar(t, true);
    CHECK(validate(planar).empty());
  }
  for (const auto& t : enumerate_trees(2, 3)) CHECK(validate(OmegaOperad(t)).empty());
}

TEST_CASE("validate accepts the corpus") {
  auto corpus = operad_corpus();
  CHECK(corpus.size() >= 10);
  for (const auto& n : corpus) {
    auto v = validate(*n.op);
    CHECK_MESSAGE(v.empty(), n.name << " " << (v.empty() ? "" : v[0].law + " " + v[0].detail));
  }
  CHECK(validate(*planar_binary_fixture()).empty());
}

TEST_CASE("validate reports a broken unit row") {
  auto p = std::make_shared<TableOperad>(std::vector<std::string>{"a"},
                                         std::vector<OpSpec>{{"1", {"a"}, "a"}, {"z", {}, "a"}, {"z2", {}, "a"}}, true);
  p->set_unit("a", "1");
  CHECK(validate(*p).empty());
  p->set_compose("1", 0, "z", "z2");
  auto v = validate(*p);
  REQUIRE(v.size() == 1);
  CHECK(v[0].law == "unit-left");
  CHECK(v[0].detail == "z");
}

TEST_CASE("validate reports a broken equivariance") {
  auto p = alternating_fixture();
  p->set_act("t", {1, 0, 2}, "t");
  auto v = validate(*p);
  CHECK_FALSE(v.empty());
}

TEST_CASE("sigma_free") {
  CHECK_FALSE(sigma_free(*commutative_fixture()));
  CHECK_FALSE(sigma_free(*alternating_fixture()));  // fixed by the 3-cycles
  CHECK(sigma_free(OmegaOperad(example_tree())));
  CHECK(sigma_free(*z2_fixture()));
}

TEST_CASE("symmetrize") {
  for (const auto& t : enumerate_trees(3, 2)) {
    OmegaOperad planar(t, true);
    auto s = symmetrize(planar);
    CHECK(validate(*s).empty());
    OmegaOperad full(t);
    CHECK(find_isomorphism(*s, full).has_value());
  }
  // op counts multiply by n!
  auto b = planar_binary_fixture();
  auto sb = symmetrize(*b);
  CHECK(sb->all_ops().size() == 3 + 2);
  auto unary = std::make_shared<TableOperad>(std::vector<std::string>{"a", "b"},
                                             std::vector<OpSpec>{{"1a", {"a"}, "a"}, {"1b", {"b"}, "b"}, {"f", {"a"}, "b"}},
                                             false);
  unary->set_unit("a", "1a");
  unary->set_unit("b", "1b");
  CHECK(symmetrize(*unary)->all_ops().size() == 3);
  CHECK_THROWS_WITH(symmetrize(*sb), "already-symmetric");
}

TEST_CASE("hom_operads") {
  auto corpus = operad_corpus();
  OmegaOperad eta(Tree::eta());
  for (const auto& n : corpus) {
    const auto& q = *n.op;
    CHECK(hom_operads(eta, q).size() == static_cast<size_t>(q.colour_count()));
    for (int k = 0; k <= 3; ++k) {
      OmegaOperad ck(Tree::corolla(k));
      size_t want = 0;
      for (OpId x : q.all_ops()) want += q.arity(x) == k;
      CHECK_MESSAGE(hom_operads(ck, q).size() == want, n.name << " C" << k);
    }
    // identity is among the endomorphisms
    OperadMap id;
    for (int c = 0; c < q.colour_count(); ++c) id.colour_map.push_back(c);
    for (OpId x : q.all_ops()) id.op_map[x] = x;
    CHECK(is_operad_map(q, q, id));
    bool found = false;
    for (const auto& f : hom_operads(q, q)) {
      CHECK(is_operad_map(q, q, f));
      found = found || (f.colour_map == id.colour_map && f.op_map == id.op_map);
    }
    CHECK(found);
  }
}

TEST_CASE("maps out of Omega(T) are labellings") {
  auto corpus = operad_corpus();
  for (const auto& t : enumerate_trees(2, 2)) {
    OmegaOperad o(t);
    for (const auto& n : corpus) {
      if (n.op->colour_count() > 3) continue;
      auto maps = hom_operads(o, *n.op);
      CHECK_MESSAGE(maps.size() == count_labellings(t, *n.op), t.str() << " into " << n.name);
      for (const auto& f : maps) CHECK(is_operad_map(o, *n.op, f));
    }
  }
}

TEST_CASE("omega_operad is functorial") {
  auto trees = enumerate_trees(3, 2);
  for (const auto& s : trees)
    for (const auto& t : trees)
      for (const auto& u : trees) {
        if (s.degree() + t.degree() + u.degree() > 5) continue;
        OmegaOperad os(s), ot(t), ou(u);
        auto st = arrows_between(s, t);
        auto tu = arrows_between(t, u);
        if (st.size() > 6 || tu.size() > 6) continue;
        for (const auto& f : st) {
          auto mf = induced(f, os, ot);
          CHECK(is_operad_map(os, ot, mf));
          for (const auto& g : tu) {
            auto mg = induced(g, ot, ou);
            auto mgf = induced(compose(g, f), os, ou);
            for (const auto& [x, y] : mf.op_map) CHECK(mg.op_map.at(y) == mgf.op_map.at(x));
          }
        }
      }
}

TEST_CASE("operad json round trip") {
  for (const auto& n : operad_corpus()) {
    auto j = operad_to_json(*n.op);
    auto back = operad_from_json(j);
    CHECK(operad_to_json(*back) == j);
    CHECK(find_isomorphism(*back, *n.op).has_value());
  }
  CHECK(operad_to_json(*commutative_fixture())["sigma_free"] == false);
}
