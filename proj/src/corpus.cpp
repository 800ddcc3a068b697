#include "dendro/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

namespace dendro {

std::shared_ptr<TableOperad> commutative_fixture() {
  auto p = std::make_shared<TableOperad>(std::vector<std::string>{"a", "b"},
                                         std::vector<OpSpec>{{"1a", {"a"}, "a"}, {"1b", {"b"}, "b"}, {"m", {"a", "a"}, "b"}},
                                         true);
  p->set_unit("a", "1a");
  p->set_unit("b", "1b");
  p->set_act("m", {1, 0}, "m");
  return p;
}

std::shared_ptr<TableOperad> z2_fixture() {
  auto p = std::make_shared<TableOperad>(std::vector<std::string>{"a"},
                                         std::vector<OpSpec>{{"1", {"a"}, "a"}, {"g", {"a"}, "a"}}, true);
  p->set_unit("a", "1");
  p->set_compose("g", 0, "g", "1");
  return p;
}

std::shared_ptr<TableOperad> idempotent_fixture() {
  auto p = std::make_shared<TableOperad>(std::vector<std::string>{"a"},
                                         std::vector<OpSpec>{{"1", {"a"}, "a"}, {"e", {"a"}, "a"}}, true);
  p->set_unit("a", "1");
  p->set_compose("e", 0, "e", "e");
  return p;
}

std::shared_ptr<TableOperad> alternating_fixture() {
  auto p = std::make_shared<TableOperad>(
      std::vector<std::string>{"a", "b"},
      std::vector<OpSpec>{{"1a", {"a"}, "a"}, {"1b", {"b"}, "b"}, {"t", {"a", "a", "a"}, "b"}, {"t'", {"a", "a", "a"}, "b"}},
      true);
  p->set_unit("a", "1a");
  p->set_unit("b", "1b");
  for (const auto& s : all_perms(3)) {
    int inversions = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) inversions += s[i] > s[j];
    bool even = inversions % 2 == 0;
    p->set_act("t", s, even ? "t" : "t'");
    p->set_act("t'", s, even ? "t'" : "t");
  }
  return p;
}

std::shared_ptr<TableOperad> planar_binary_fixture() {
  auto p = std::make_shared<TableOperad>(
      std::vector<std::string>{"x", "y", "z"},
      std::vector<OpSpec>{{"1x", {"x"}, "x"}, {"1y", {"y"}, "y"}, {"1z", {"z"}, "z"}, {"b", {"x", "y"}, "z"}}, false);
  p->set_unit("x", "1x");
  p->set_unit("y", "1y");
  p->set_unit("z", "1z");
  return p;
}

std::shared_ptr<TableOperad> nullary_fixture() {
  auto p = std::make_shared<TableOperad>(std::vector<std::string>{"a"},
                                         std::vector<OpSpec>{{"1", {"a"}, "a"}, {"z", {}, "a"}}, true);
  p->set_unit("a", "1");
  return p;
}

std::vector<NamedOperad> operad_corpus() {
  std::vector<NamedOperad> r;
  auto omega = [&](const std::string& n, const Tree& t) { r.push_back({n, std::make_shared<OmegaOperad>(t)}); };
  omega("Omega(eta)", Tree::eta());
  omega("Omega(C0)", Tree::corolla(0));
  omega("Omega(C1)", Tree::corolla(1));
  omega("Omega(C2)", Tree::corolla(2));
  omega("Omega(i[2])", Tree::linear(2));
  omega("Omega(example)", example_tree());
  r.push_back({"commutative", commutative_fixture()});
  r.push_back({"z2", z2_fixture()});
  r.push_back({"idempotent", idempotent_fixture()});
  r.push_back({"alternating", alternating_fixture()});
  r.push_back({"symmetrized-binary", symmetrize(*planar_binary_fixture())});
  r.push_back({"nullary", nullary_fixture()});
  return r;
}

std::shared_ptr<TableSet> parallel_arrows_fixture() {
  // 1-simplices (source, target); 0 = a, 1 = b
  const std::vector<std::pair<int, int>> arrows = {{0, 0}, {1, 1}, {0, 1}, {0, 1}};
  auto id_of = [](int obj) { return obj; };  // identities come first
  // m-simplices as vectors: objects for m = 0, an arrow for m = 1, the
  // arrows (01, 12, 02) for m = 2
  std::vector<std::vector<std::vector<int>>> simp(3);
  simp[0] = {{0}, {1}};
  for (int k = 0; k < 4; ++k) simp[1].push_back({k});
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z)
        if (arrows[x].second == arrows[y].first && arrows[z].first == arrows[x].first &&
            arrows[z].second == arrows[y].second)
          simp[2].push_back({x, y, z});
  // vertex objects of a simplex, and its edge between vertices p <= q
  auto objects = [&](int m, const std::vector<int>& s) -> std::vector<int> {
    if (m == 0) return {s[0]};
    if (m == 1) return {arrows[s[0]].first, arrows[s[0]].second};
    return {arrows[s[0]].first, arrows[s[0]].second, arrows[s[1]].second};
  };
  auto edge = [&](int m, const std::vector<int>& s, int p, int q) {
    if (p == q) return id_of(objects(m, s)[p]);
    if (m == 1) return s[0];
    if (p == 0 && q == 1) return s[0];
    if (p == 1 && q == 2) return s[1];
    return s[2];
  };

  const int bound = 2, valence = 2;
  auto out = std::make_shared<TableSet>(bound, valence);
  auto shapes = enumerate_trees(bound, valence);
  auto linear_dim = [](const Tree& t) {
    for (int v = 0; v < t.degree(); ++v)
      if (t.in(v).size() != 1) return -1;
    return t.degree();
  };
  for (const auto& t : shapes) {
    int m = linear_dim(t);
    out->set_count(t, m < 0 ? 0 : static_cast<int>(simp[m].size()));
  }
  for (const auto& s : shapes)
    for (const auto& t : shapes) {
      int m = linear_dim(s), k = linear_dim(t);
      if (m < 0 || k < 0) continue;
      for (const auto& a : arrows_between(s, t)) {
        // edge j of a canonical linear tree is simplicial vertex dim - j
        auto phi = [&](int v) { return k - a.map[m - v]; };
        std::vector<int> table;
        for (const auto& x : simp[k]) {
          std::vector<int> y;
          if (m == 0)
            y = {objects(k, x)[phi(0)]};
          else if (m == 1)
            y = {edge(k, x, phi(0), phi(1))};
          else
            y = {edge(k, x, phi(0), phi(1)), edge(k, x, phi(1), phi(2)), edge(k, x, phi(0), phi(2))};
          table.push_back(static_cast<int>(std::find(simp[m].begin(), simp[m].end(), y) - simp[m].begin()));
        }
        out->set_action(a, table);
      }
    }
  return out;
}

Tree tensor_example_s() {
  // root r above a unary white vertex; a binary vertex sits on edge e
  return Tree("r", {{{"e"}, "r"}, {{"s1", "s2"}, "e"}});
}

Tree tensor_example_t() { return Tree("1", {{{"2", "4"}, "1"}, {{"3"}, "2"}, {{"5"}, "4"}}); }

NerveDiagramSpec collapsing_diagram_spec() {
  auto idem = idempotent_fixture();
  auto z2 = z2_fixture();
  OperadMap m{{0}, {{idem->op_id("1"), z2->op_id("1")}, {idem->op_id("e"), z2->op_id("1")}}};
  return {two_object_category(), {z2, idem}, {{{0, 1}, m}}};
}

namespace {

NerveDiagramSpec constant_spec(std::shared_ptr<const ColoredOperad> p) {
  OperadMap id;
  for (int c = 0; c < p->colour_count(); ++c) id.colour_map.push_back(c);
  for (OpId x : p->all_ops()) id.op_map[x] = x;
  return {two_object_category(), {p, p}, {{{0, 1}, id}}};
}

}  // namespace

CorpusBundle corpus_bundle(uint64_t seed, int budget) {
  CorpusBundle b;
  b.seed = seed;
  b.budget = budget;
  b.trees = {{"eta", Tree::eta()},         {"C1", Tree::corolla(1)},       {"C2", Tree::corolla(2)},
             {"i[2]", Tree::linear(2)},    {"example", example_tree()},    {"tensor-S", tensor_example_s()},
             {"tensor-T", tensor_example_t()}};
  for (auto& no : operad_corpus()) b.operads.push_back({no.name, to_table(*no.op)});
  b.diagrams.push_back({"collapsing", collapsing_diagram_spec()});
  if (budget <= 0) return b;

  // few leaves keep the Omega tables small
  std::vector<Tree> pool;
  for (auto& t : enumerate_trees(4, 3))
    if (t.leaves().size() <= 3) pool.push_back(std::move(t));
  const auto fixed = operad_corpus();
  std::mt19937_64 rng(seed);
  for (int k = 0; k < budget; ++k) {
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1), pick_op(0, fixed.size() - 1);
    const Tree& t = pool[pick(rng)];
    std::string name = "random-" + std::to_string(k);
    b.trees.push_back({name, t});
    b.operads.push_back({"Omega(" + name + ")", to_table(OmegaOperad(t))});
    const auto& no = fixed[pick_op(rng)];
    b.diagrams.push_back({"constant-" + no.name, constant_spec(to_table(*no.op))});
  }
  return b;
}

nlohmann::json bundle_to_json(const CorpusBundle& b) {
  nlohmann::json j;
  j["seed"] = b.seed;
  j["budget"] = b.budget;
  j["trees"] = nlohmann::json::array();
  for (const auto& t : b.trees) j["trees"].push_back({{"name", t.name}, {"tree", tree_to_json(t.tree)}});
  j["operads"] = nlohmann::json::array();
  for (const auto& o : b.operads) j["operads"].push_back({{"name", o.name}, {"operad", operad_to_json(*o.op)}});
  j["diagrams"] = nlohmann::json::array();
  for (const auto& d : b.diagrams) j["diagrams"].push_back({{"name", d.name}, {"diagram", diagram_spec_to_json(d.spec)}});
  return j;
}

std::string bundle_hash(const CorpusBundle& b) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bundle_to_json(b).dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dendro
