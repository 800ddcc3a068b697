#include <doctest.h>

#include "dendro/corpus.hpp"
#include "dendro/kan.hpp"

using namespace dendro;

namespace {

int max_arity(const ColoredOperad& p) {
  int a = 0;
  for (OpId q : p.all_ops()) a = std::max(a, p.arity(q));
  return a;
}

// Horn families in x with no filler, as (tree, edge, family), by a raw scan.
std::set<std::tuple<std::string, Edge, std::vector<Dendrex>>> raw_failures(const DendroidalSet& x, int bound,
                                                                          int valence) {
  std::set<std::tuple<std::string, Edge, std::vector<Dendrex>>> r;
  for (const auto& t : enumerate_trees(bound, valence))
    for (const auto& e : t.inner_edges()) {
      Sieve h = horn(t, {e});
      for (const auto& fam : hom_into(h, x))
        if (fill_horn(x, h, fam).empty()) r.insert({t.str(), e, fam});
    }
  return r;
}

}  // namespace

TEST_CASE("nerves are strict inner Kan") {
  for (const auto& no : operad_corpus()) {
    Nerve x(no.op, 3, 2);
    KanReport r = check_inner_kan(x, true);
    CHECK_MESSAGE(r.strict(), no.name);
    CHECK(r.skipped == 0);
  }
  KanReport r = check_inner_kan(Nerve(std::make_shared<OmegaOperad>(example_tree()), 3, 3), true);
  CHECK(r.strict());
  CHECK(r.checked_horns > 0);
}

TEST_CASE("representables are nerves, hence strict") {
  for (const auto& t : enumerate_trees(3, 2)) {
    Representable r(t, 3, 2);
    CHECK(check_inner_kan(r, true).strict());
  }
}

TEST_CASE("the boundary of a 2-simplex has one unfillable horn") {
  SieveSet b(boundary(Tree::linear(2)), 2, 1);
  KanReport r = check_inner_kan(b, false);
  REQUIRE(r.failures.size() == 1);
  const auto& f = r.failures[0];
  CHECK(f.tree.degree() == 2);
  CHECK(f.fillers == 0);
  // the horn is the spine 0 -> 1 -> 2 of i[2]
  std::set<std::set<Edge>> got;
  for (size_t k = 0; k < f.family.size(); ++k) {
    std::set<Edge> names;
    for (int e : f.family[k]) names.insert(Tree::linear(2).edge(e));
    got.insert(names);
  }
  CHECK(got == std::set<std::set<Edge>>{{"0", "1"}, {"1", "2"}});
}

TEST_CASE("deleting a nerve dendrex breaks exactly the horns it fills") {
  auto base = std::make_shared<Nerve>(std::make_shared<OmegaOperad>(Tree::linear(3)), 3, 1);
  Tree t = Tree::linear(2);
  for (const auto& y : nondegenerate(*base, t)) {
    WithoutDendrex w(base, t, y);
    KanReport r = check_inner_kan(w, true);
    CHECK(r.strictness_failures.empty());
    std::set<std::tuple<std::string, Edge, std::vector<Dendrex>>> got;
    for (const auto& f : r.failures) got.insert({f.tree.str(), f.edge, f.family});
    // expected: horn families of w whose unique filler in the nerve was removed
    std::set<std::tuple<std::string, Edge, std::vector<Dendrex>>> expect;
    for (const auto& s : enumerate_trees(3, 1))
      for (const auto& e : s.inner_edges()) {
        Sieve h = horn(s, {e});
        for (const auto& fam : hom_into(h, w)) {
          auto fill = fill_horn(*base, h, fam);
          REQUIRE(fill.size() == 1);
          if (w.removed(s, fill[0])) expect.insert({s.str(), e, fam});
        }
      }
    CHECK(got == expect);
    CHECK(got == raw_failures(w, 3, 1));
    CHECK_FALSE(got.empty());
  }
}

TEST_CASE("fill_horn") {
  Nerve x(commutative_fixture(), 3, 2);
  Tree t = composition_shape(2, 1, 1).tree;
  Sieve h = horn(t, {"1"});
  for (const auto& fam : hom_into(h, x)) CHECK(fill_horn(x, h, fam).size() == 1);

  Tree s = example_tree();
  Representable r(s, 3, 3);
  Dendrex id = identity(s).map;
  for (const auto& e : s.inner_edges()) {
    Sieve hs = horn(s, {e});
    std::vector<Dendrex> fam;
    for (const auto& m : hs.maximal) fam.push_back(restrict_to(r, s, id, m));
    auto fill = fill_horn(r, hs, fam);
    CHECK(std::find(fill.begin(), fill.end(), id) != fill.end());
  }
}

TEST_CASE("homotopy in nerves is equality") {
  for (const auto& no : operad_corpus()) {
    Nerve x(no.op, 3, 3);
    for (int n = 0; n <= 2; ++n) {
      const auto& ds = x.dendrices(Tree::corolla(n));
      std::set<std::pair<Dendrex, Dendrex>> diag;
      for (const auto& f : ds) diag.insert({f, f});
      for (int i = 0; i <= n; ++i) CHECK_MESSAGE(homotopy_relation(x, n, i) == diag, no.name, " ", n, " ", i);
    }
  }
  Nerve x(commutative_fixture(), 3, 3);
  Tree c2 = Tree::corolla(2);
  for (const auto& f : x.dendrices(c2)) {
    for (int i = 1; i <= 2; ++i) {
      auto h = homotopic(x, f, f, 2, i);
      REQUIRE(h);
      CHECK(*h == x.act(collapse(homotopy_shape(2, i).tree, {std::to_string(i)}), f));
    }
    CHECK(homotopic(x, f, f, 2, 0));
    for (const auto& g : x.dendrices(c2)) {
      if (corolla_boundary(x, 2, f) != corolla_boundary(x, 2, g))
        CHECK_THROWS_WITH(homotopic(x, f, g, 2, 1), "not-parallel");
      else if (f != g)
        CHECK_FALSE(homotopic(x, f, g, 2, 1));
    }
  }
}

TEST_CASE("a non-strict instance: parallel arrows") {
  auto x = parallel_arrows_fixture();
  CHECK_FALSE(functoriality_audit(*x, 2).has_value());
  KanReport r = check_inner_kan(*x, true);
  CHECK(r.inner_kan());
  CHECK_FALSE(r.strict());
  const auto& ds = x->dendrices(Tree::corolla(1));
  REQUIRE(ds.size() == 4);
  auto r0 = homotopy_relation(*x, 1, 0), r1 = homotopy_relation(*x, 1, 1);
  CHECK(r0 == r1);
  // equivalence relation with classes {id_a}, {id_b}, {f, g}
  for (const auto& f : ds) {
    CHECK(r0.count({f, f}));
    for (const auto& g : ds) {
      CHECK(r0.count({f, g}) == r0.count({g, f}));
      for (const auto& h : ds)
        if (r0.count({f, g}) && r0.count({g, h})) CHECK(r0.count({f, h}));
    }
  }
  CHECK(r0.size() == 6);
  HoOperad ho = ho_operad(*x, 1);
  CHECK(validate(*ho.op).empty());
  CHECK(ho.op->op_count() == 3);
  auto un = unit_map(*x, ho, 2);
  Nerve back(ho.op, 2, 2);
  CHECK_FALSE(morphism_audit(*x, back, un, 2).has_value());
  CHECK_FALSE(is_bijective(*x, back, un, 2));
}

TEST_CASE("composition witnesses") {
  auto p = std::make_shared<OmegaOperad>(example_tree());
  Nerve x(p, 3, 3);
  for (int n = 1; n <= 3; ++n)
    for (int m = 0; m <= 2; ++m)
      for (int i = 1; i <= n; ++i) {
        for (const auto& f : x.dendrices(Tree::corolla(n)))
          for (const auto& g : x.dendrices(Tree::corolla(m))) {
            if (corolla_boundary(x, n, f)[i] != corolla_boundary(x, m, g)[0]) {
              CHECK_THROWS_WITH(composition_witness(x, f, n, g, m, i), "not-composable");
              continue;
            }
            auto w = composition_witness(x, f, n, g, m, i);
            REQUIRE(w);
            OpId pf = Nerve::vertex_op(Tree::corolla(n), f, 0), pg = Nerve::vertex_op(Tree::corolla(m), g, 0);
            CHECK(Nerve::vertex_op(Tree::corolla(n + m - 1), w->h, 0) == p->compose(pf, i - 1, pg));
          }
      }
  // composing with an identity gives something homotopic
  Nerve c(commutative_fixture(), 3, 3);
  for (const auto& f : c.dendrices(Tree::corolla(2))) {
    auto col = corolla_boundary(c, 2, f)[1];
    auto w = composition_witness(c, f, 2, identity_dendrex(c, col), 1, 1);
    REQUIRE(w);
    CHECK(homotopic(c, w->h, f, 2, 1));
  }
}

TEST_CASE("ho_operad of nerves recovers the operad") {
  for (const auto& no : operad_corpus()) {
    int a = std::max(1, max_arity(*no.op));
    Nerve x(no.op, 3, a);
    HoOperad ho = ho_operad(x, a);
    CHECK_MESSAGE(validate(*ho.op).empty(), no.name);
    CHECK_MESSAGE(find_isomorphism(*ho.op, *no.op).has_value(), no.name);
    Nerve back(ho.op, 3, a);
    auto un = unit_map(x, ho, 2);
    CHECK_MESSAGE(is_bijective(x, back, un, 2), no.name);
    CHECK_MESSAGE(!morphism_audit(x, back, un, 2), no.name);
  }
}

TEST_CASE("ho_operad errors") {
  SieveSet b(boundary(Tree::linear(2)), 2, 1);
  CHECK_THROWS_WITH(ho_operad(b, 1), "not-inner-kan");
  Nerve x(std::make_shared<OmegaOperad>(example_tree()), 3, 3);
  CHECK_THROWS_WITH(ho_operad(x, 2), "arity-bound");
}

TEST_CASE("coskeletal extension reproduces nerve maps") {
  auto corpus = operad_corpus();
  for (size_t a = 0; a < corpus.size(); ++a) {
    for (size_t b = 0; b < corpus.size(); ++b) {
      auto maps = hom_operads(*corpus[a].op, *corpus[b].op, 4);
      if (maps.empty()) continue;
      Nerve y(corpus[a].op, 3, 2), x(corpus[b].op, 3, 2);
      for (const auto& psi : maps) {
        DendrexMap sk2 = nerve_map(y, psi, 2, 3);
        DendrexMap ext = coskeletal_extend(y, x, sk2);
        DendrexMap full = nerve_map(y, psi, 3, 2);
        for (const auto& [code, tab] : full) {
          auto it = ext.find(code);
          CHECK_MESSAGE((it == ext.end() ? tab.empty() : it->second == tab), corpus[a].name, " -> ", corpus[b].name);
        }
      }
    }
  }
}

TEST_CASE("coskeletal extension of the identity") {
  auto p = std::make_shared<OmegaOperad>(Tree::linear(2));
  Nerve n(p, 4, 1);
  DendrexMap id;
  for (const auto& t : enumerate_trees(2, 1))
    for (const auto& d : n.dendrices(t)) id[canonical_code(t)][d] = d;
  DendrexMap ext = coskeletal_extend(n, n, id);
  for (const auto& t : n.shapes())
    for (const auto& d : n.dendrices(t)) CHECK(ext.at(canonical_code(t)).at(d) == d);
}

TEST_CASE("coskeletal extension errors") {
  auto x = parallel_arrows_fixture();
  DendrexMap sk1;
  for (const auto& t : x->shapes())
    if (t.degree() <= 1)
      for (const auto& d : x->dendrices(t)) sk1[canonical_code(t)][d] = d;
  CHECK_THROWS_WITH(coskeletal_extend(*x, *x, sk1), "missing-2-skeleton");

  // i[1] -> parallel arrows, sending the arrow to f; x has nothing in
  // degree 3 so the horns of i[3] cannot be filled
  Nerve y(std::make_shared<OmegaOperad>(Tree::linear(1)), 3, 1);
  const auto& op = y.operad();
  auto c1 = x->dendrices(Tree::corolla(1));
  DendrexMap sk2;
  Tree eta = Tree::eta(), cor = Tree::corolla(1);
  for (const auto& d : y.dendrices(eta)) sk2[canonical_code(eta)][d] = {op.colour_name(d[0]) == "0" ? 0 : 1};
  auto arrow_image = [&](const Dendrex& d) -> Dendrex {
    OpId o = Nerve::vertex_op(cor, d, 0);
    if (op.is_unit(o)) return {op.colour_name(op.output(o)) == "0" ? 0 : 1};
    return {2};
  };
  for (const auto& d : y.dendrices(cor)) sk2[canonical_code(cor)][d] = arrow_image(d);
  Tree i2 = enumerate_trees(2, 1).back();
  REQUIRE(i2.degree() == 2);
  for (const auto& d : y.dendrices(i2)) {
    std::vector<Dendrex> want;
    for (const auto& f : all_faces(i2))
      if (f.degree() == 1) want.push_back(arrow_image(restrict_to(y, i2, d, f)));
    for (const auto& e : x->dendrices(i2)) {
      std::vector<Dendrex> got;
      for (const auto& f : all_faces(i2))
        if (f.degree() == 1) got.push_back(restrict_to(*x, i2, e, f));
      if (got == want) sk2[canonical_code(i2)][d] = e;
    }
  }
  CHECK_FALSE(morphism_audit(y, *x, sk2, 2).has_value());
  CHECK_THROWS_WITH(coskeletal_extend(y, *x, sk2), "requires-strict");
}

TEST_CASE("kan report json") {
  SieveSet b(boundary(Tree::linear(2)), 2, 1);
  auto j = kan_report_to_json(check_inner_kan(b, false));
  CHECK(j["inner_kan"] == false);
  CHECK(j["failures"].size() == 1);
}
