#include "dendro/tree.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dendro {

Tree::Tree() { build("0", {}); }

Tree::Tree(Edge root, std::vector<Vertex> vertices) { build(std::move(root), std::move(vertices)); }

void Tree::build(Edge root, std::vector<Vertex> vertices) {
  std::unordered_map<Edge, int> prod, cons;
  std::set<Edge> all{root};
  for (int v = 0; v < static_cast<int>(vertices.size()); ++v) {
    const auto& vx = vertices[v];
    if (!prod.emplace(vx.output, v).second) throw Error("edge-output-of-two-vertices");
    all.insert(vx.output);
    for (const auto& e : vx.inputs) {
      if (!cons.emplace(e, v).second) throw Error("edge-input-of-two-vertices");
      all.insert(e);
    }
  }
  if (cons.count(root)) throw Error("root-is-an-input");
  for (const auto& e : all)
    if (e != root && !cons.count(e)) throw Error("second-root");

  std::vector<Edge> order;
  std::vector<int> vorder;
  std::set<Edge> seen;
  std::function<void(const Edge&)> visit = [&](const Edge& e) {
    if (!seen.insert(e).second) throw Error("cycle");
    order.push_back(e);
    auto it = prod.find(e);
    if (it == prod.end()) return;
    vorder.push_back(it->second);
    for (const auto& x : vertices[it->second].inputs) visit(x);
  };
  visit(root);
  if (order.size() != all.size() || vorder.size() != vertices.size()) throw Error("disconnected");

  edges_ = order;
  vertices_.clear();
  for (int v : vorder) vertices_.push_back(vertices[v]);
  index_.clear();
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) index_[edges_[i]] = i;
  const int n = static_cast<int>(edges_.size());
  producer_.assign(n, -1);
  consumer_.assign(n, -1);
  out_.assign(vertices_.size(), -1);
  in_.assign(vertices_.size(), {});
  for (int v = 0; v < static_cast<int>(vertices_.size()); ++v) {
    out_[v] = index_[vertices_[v].output];
    producer_[out_[v]] = v;
    for (const auto& e : vertices_[v].inputs) {
      in_[v].push_back(index_[e]);
      consumer_[index_[e]] = v;
    }
  }
}

Tree Tree::eta(const Edge& e) { return Tree(e, {}); }

Tree Tree::corolla(int n) {
  Vertex v;
  v.output = "0";
  for (int i = 1; i <= n; ++i) v.inputs.push_back(std::to_string(i));
  return Tree("0", {v});
}

Tree Tree::linear(int n) {
  std::vector<Vertex> vs;
  for (int i = 1; i <= n; ++i) vs.push_back({{std::to_string(i - 1)}, std::to_string(i)});
  return Tree(std::to_string(n), vs);
}

int Tree::index(const Edge& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw Error("unknown-edge");
  return it->second;
}

int Tree::vertex_of(const Edge& output) const {
  auto it = index_.find(output);
  if (it == index_.end() || producer_[it->second] < 0) throw Error("unknown-vertex");
  return producer_[it->second];
}

bool Tree::is_leaf(int i) const {
  if (producer_[i] >= 0) return false;
  return i != 0 || is_eta();
}

std::vector<int> Tree::leaf_indices() const {
  std::vector<int> r;
  for (int i = 0; i < edge_count(); ++i)
    if (is_leaf(i)) r.push_back(i);
  return r;
}

std::vector<int> Tree::inner_indices() const {
  std::vector<int> r;
  for (int i = 0; i < edge_count(); ++i)
    if (is_inner(i)) r.push_back(i);
  return r;
}

std::vector<Edge> Tree::leaves() const {
  std::vector<Edge> r;
  for (int i : leaf_indices()) r.push_back(edges_[i]);
  return r;
}

std::vector<Edge> Tree::inner_edges() const {
  std::vector<Edge> r;
  for (int i : inner_indices()) r.push_back(edges_[i]);
  return r;
}

Tree Tree::renamed(const std::map<Edge, Edge>& f) const {
  auto ren = [&](const Edge& e) {
    auto it = f.find(e);
    return it == f.end() ? e : it->second;
  };
  std::vector<Vertex> vs;
  for (const auto& v : vertices_) {
    Vertex w;
    w.output = ren(v.output);
    for (const auto& e : v.inputs) w.inputs.push_back(ren(e));
    vs.push_back(w);
  }
  return Tree(ren(root()), vs);
}

std::string Tree::str() const {
  std::ostringstream os;
  os << root() << ":";
  for (const auto& v : vertices_) {
    os << " (";
    for (size_t i = 0; i < v.inputs.size(); ++i) os << (i ? "," : "") << v.inputs[i];
    os << ";" << v.output << ")";
  }
  return os.str();
}

int degree(const Tree& t) { return t.degree(); }

// For eta the single edge counts as the root only, so the three classes
// partition the edges.
EdgeClasses classify_edges(const Tree& t) {
  if (t.is_eta()) return {t.root(), {}, {}};
  return {t.root(), t.leaves(), t.inner_edges()};
}

Tree graft(const Tree& t, const Edge& l, const Tree& s) {
  if (!t.has_edge(l) || !t.is_leaf(t.index(l))) throw Error("not-a-leaf");
  std::string suffix;
  auto clash = [&] {
    for (const auto& e : s.edges())
      if (e != s.root() && t.has_edge(e + suffix)) return true;
    return false;
  };
  while (clash()) suffix += "'";
  std::map<Edge, Edge> ren;
  for (const auto& e : s.edges()) ren[e] = e + suffix;
  ren[s.root()] = l;
  Tree s2 = s.renamed(ren);
  std::vector<Vertex> vs = t.vertices();
  for (const auto& v : s2.vertices()) vs.push_back(v);
  return Tree(t.root(), vs);
}

Tree subtree_above(const Tree& t, int e, const std::set<int>& cut) {
  std::vector<Vertex> vs;
  std::function<void(int, bool)> go = [&](int x, bool top) {
    if (!top && cut.count(x)) return;
    int v = t.producer(x);
    if (v < 0) return;
    vs.push_back(t.vertices()[v]);
    for (int y : t.in(v)) go(y, false);
  };
  go(e, true);
  return Tree(t.edge(e), vs);
}

std::optional<SignatureSubtree> subtree_of_signature(const Tree& t, const Signature& sig) {
  if (!t.has_edge(sig.output)) return std::nullopt;
  std::set<int> want;
  for (const auto& e : sig.inputs) {
    if (!t.has_edge(e)) return std::nullopt;
    if (!want.insert(t.index(e)).second) return std::nullopt;
  }
  const int o = t.index(sig.output);
  if (want.count(o)) {
    if (want.size() != 1) return std::nullopt;
    return SignatureSubtree{Tree::eta(sig.output), {}};
  }
  // Walk upward from o; every reached boundary edge must be wanted.
  std::set<int> reached;
  std::set<Edge> inner;
  std::vector<Vertex> vs;
  bool ok = true;
  std::function<void(int, bool)> go = [&](int x, bool top) {
    if (!top && want.count(x)) {
      reached.insert(x);
      return;
    }
    int v = t.producer(x);
    if (v < 0) {
      ok = false;
      return;
    }
    if (!top) inner.insert(t.edge(x));
    vs.push_back(t.vertices()[v]);
    for (int y : t.in(v)) go(y, false);
  };
  go(o, true);
  if (!ok || reached != want) return std::nullopt;
  return SignatureSubtree{Tree(sig.output, vs), inner};
}

bool realizable(const Tree& t, const Signature& sig) { return subtree_of_signature(t, sig).has_value(); }

Signature signature_compose(const Tree& t, const Signature& sigma, const Signature& rho, int i) {
  if (i < 0 || i >= static_cast<int>(sigma.inputs.size()) || rho.output != sigma.inputs[i])
    throw Error("graft-mismatch");
  if (!realizable(t, sigma) || !realizable(t, rho)) throw Error("not-realizable");
  Signature r;
  r.output = sigma.output;
  for (int k = 0; k < i; ++k) r.inputs.push_back(sigma.inputs[k]);
  for (const auto& e : rho.inputs) r.inputs.push_back(e);
  for (int k = i + 1; k < static_cast<int>(sigma.inputs.size()); ++k) r.inputs.push_back(sigma.inputs[k]);
  return r;
}

namespace {

// AHU code of the part of t above edge x: "|" for a leaf, "(...)" for a
// vertex with its children's codes sorted.
std::string code_at(const Tree& t, int x, std::vector<std::string>& memo) {
  if (!memo[x].empty()) return memo[x];
  int v = t.producer(x);
  if (v < 0) return memo[x] = "|";
  std::vector<std::string> cs;
  for (int y : t.in(v)) cs.push_back(code_at(t, y, memo));
  std::sort(cs.begin(), cs.end());
  std::string s = "(";
  for (const auto& c : cs) s += c;
  return memo[x] = s + ")";
}

}  // namespace

std::string canonical_code(const Tree& t) {
  std::vector<std::string> memo(t.edge_count());
  return code_at(t, 0, memo);
}

Canonical canonical_form(const Tree& t) {
  std::vector<std::string> memo(t.edge_count());
  code_at(t, 0, memo);
  std::map<Edge, Edge> iso;
  std::vector<Vertex> vs;
  int next = 0;
  std::function<Edge(int)> go = [&](int x) -> Edge {
    Edge name = std::to_string(next++);
    iso[t.edge(x)] = name;
    int v = t.producer(x);
    if (v < 0) return name;
    std::vector<int> kids = t.in(v);
    std::stable_sort(kids.begin(), kids.end(), [&](int a, int b) { return memo[a] < memo[b]; });
    Vertex w;
    w.output = name;
    size_t slot = vs.size();
    vs.push_back(w);
    std::vector<Edge> ins;
    for (int y : kids) ins.push_back(go(y));
    vs[slot].inputs = ins;
    return name;
  };
  go(0);
  return {Tree("0", vs), iso};
}

bool isomorphic(const Tree& a, const Tree& b) { return canonical_code(a) == canonical_code(b); }

int max_valence(const Tree& t) {
  int m = 0;
  for (const auto& v : t.vertices()) m = std::max<int>(m, static_cast<int>(v.inputs.size()));
  return m;
}

namespace {

// Codes of planted trees (an edge with everything above it) having
// exactly n vertices.
struct PlantedCodes {
  int max_valence;
  std::map<int, std::vector<std::string>> memo;

  const std::vector<std::string>& get(int n) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::vector<std::string> out;
    if (n == 0) {
      out.push_back("|");
    } else {
      // a vertex with k children whose vertex counts sum to n-1;
      // children listed in nondecreasing code order (multisets).
      std::vector<std::string> all;
      for (int m = 0; m <= n - 1; ++m)
        for (const auto& c : get(m)) all.push_back(c);
      std::vector<int> size_of;
      for (int m = 0; m <= n - 1; ++m)
        for (size_t j = 0; j < get(m).size(); ++j) size_of.push_back(m);
      std::vector<size_t> idx(all.size());
      for (size_t j = 0; j < idx.size(); ++j) idx[j] = j;
      std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return all[a] < all[b]; });
      std::vector<std::string> pick;
      std::function<void(size_t, int)> rec = [&](size_t from, int left) {
        if (left == 0) {
          std::string s = "(";
          for (const auto& p : pick) s += p;
          out.push_back(s + ")");
        }
        if (static_cast<int>(pick.size()) == max_valence) return;
        for (size_t j = from; j < idx.size(); ++j) {
          int sz = size_of[idx[j]];
          if (sz > left) continue;
          pick.push_back(all[idx[j]]);
          rec(j, left - sz);
          pick.pop_back();
        }
      };
      rec(0, n - 1);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return memo[n] = out;
  }
};

// Parse an AHU code back into a canonical tree.
Tree tree_from_code(const std::string& code) {
  std::vector<Vertex> vs;
  int next = 0;
  size_t pos = 0;
  std::function<Edge()> go = [&]() -> Edge {
    Edge name = std::to_string(next++);
    if (code[pos] == '|') {
      ++pos;
      return name;
    }
    ++pos;  // '('
    size_t slot = vs.size();
    vs.push_back({{}, name});
    std::vector<Edge> ins;
    while (code[pos] != ')') ins.push_back(go());
    ++pos;
    vs[slot].inputs = ins;
    return name;
  };
  go();
  return Tree("0", vs);
}

}  // namespace

Tree tree_from_canonical_code(const std::string& code) { return tree_from_code(code); }

std::vector<Tree> enumerate_trees(int max_vertices, int max_valence) {
  PlantedCodes pc{max_valence, {}};
  std::vector<std::pair<std::tuple<int, int, std::string>, Tree>> items;
  for (int n = 0; n <= max_vertices; ++n) {
    for (const auto& c : pc.get(n)) {
      Tree t = tree_from_code(c);
      items.push_back({{n, t.edge_count(), c}, t});
    }
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Tree> out;
  for (auto& it : items) out.push_back(std::move(it.second));
  return out;
}

Tree contract(const Tree& t, const std::set<Edge>& es) {
  for (const auto& e : es)
    if (!t.has_edge(e) || !t.is_inner(t.index(e))) throw Error("not-inner");
  std::function<std::vector<Edge>(int)> expand = [&](int v) {
    std::vector<Edge> r;
    for (int x : t.in(v)) {
      if (es.count(t.edge(x))) {
        auto sub = expand(t.producer(x));
        r.insert(r.end(), sub.begin(), sub.end());
      } else {
        r.push_back(t.edge(x));
      }
    }
    return r;
  };
  std::vector<Vertex> vs;
  for (int v = 0; v < t.degree(); ++v) {
    if (es.count(t.edge(t.out(v)))) continue;
    vs.push_back({expand(v), t.edge(t.out(v))});
  }
  return Tree(t.root(), vs);
}

Tree tree_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("root")) throw Error("bad-tree-json");
  std::vector<Vertex> vs;
  if (j.contains("vertices")) {
    for (const auto& v : j.at("vertices")) {
      Vertex w;
      w.output = v.at("output").get<std::string>();
      for (const auto& e : v.at("inputs")) w.inputs.push_back(e.get<std::string>());
      vs.push_back(w);
    }
  }
  return Tree(j.at("root").get<std::string>(), vs);
}

nlohmann::json tree_to_json(const Tree& t) {
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : t.vertices()) vs.push_back({{"inputs", v.inputs}, {"output", v.output}});
  return {{"root", t.root()}, {"vertices", vs}};
}

std::string tree_to_dot(const Tree& t, const std::string& name) {
  // rankdir=BT puts the root at the bottom and leaves on top.
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  rankdir=BT;\n  node [shape=point];\n";
  auto node_below = [&](int e) {
    int c = t.consumer(e);
    return c < 0 ? "root" : "v" + std::to_string(c);
  };
  auto node_above = [&](int e) {
    int p = t.producer(e);
    return p < 0 ? "top" + std::to_string(e) : "v" + std::to_string(p);
  };
  os << "  root [shape=none,label=\"\"];\n";
  for (int v = 0; v < t.degree(); ++v)
    os << "  v" << v << " [shape=circle,label=\"\",width=0.15];\n";
  for (int e = 0; e < t.edge_count(); ++e) {
    if (t.producer(e) < 0) os << "  top" << e << " [shape=none,label=\"\"];\n";
    os << "  " << node_above(e) << " -> " << node_below(e) << " [arrowhead=none,label=\"" << t.edge(e)
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

Tree example_tree() {
  return Tree("a", {{{"b", "c", "d"}, "a"}, {{"e", "f"}, "b"}, {{}, "d"}});
}

}  // namespace dendro
