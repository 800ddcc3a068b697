#include "dendro/percolation.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include "dendro/parallel.hpp"

namespace dendro {

namespace {

using Pair = std::pair<Edge, Edge>;

struct PV {
  std::vector<Pair> in;
  Pair out;
  VertexColour c;
};

std::vector<PV> vertices_of(const PercolationScheme& p) {
  std::vector<PV> out;
  const Tree& t = p.shape;
  for (int v = 0; v < t.degree(); ++v) {
    PV x;
    for (int e : t.in(v)) x.in.push_back(p.edge_label[e]);
    x.out = p.edge_label[t.out(v)];
    x.c = p.vertex_colour[v];
    out.push_back(std::move(x));
  }
  return out;
}

PercolationScheme from_vertices(const Pair& root, const std::vector<PV>& vs) {
  std::vector<std::pair<std::vector<Pair>, Pair>> raw;
  std::vector<VertexColour> cs;
  for (const auto& v : vs) {
    raw.push_back({v.in, v.out});
    cs.push_back(v.c);
  }
  return make_scheme(root, raw, cs);
}

// T-vertex producing edge y, or -1.
int t_producer(const Tree& t, const Edge& y) { return t.producer(t.index(y)); }

}  // namespace

std::string pair_name(const Edge& a, const Edge& x) { return "(" + a + "," + x + ")"; }

PercolationScheme make_scheme(const Pair& root, const std::vector<std::pair<std::vector<Pair>, Pair>>& vs,
                              const std::vector<VertexColour>& colours) {
  std::map<Edge, Pair> label{{pair_name(root.first, root.second), root}};
  std::map<Edge, VertexColour> colour;
  std::vector<Vertex> tv;
  for (size_t i = 0; i < vs.size(); ++i) {
    Vertex v;
    for (const auto& p : vs[i].first) {
      v.inputs.push_back(pair_name(p.first, p.second));
      label[v.inputs.back()] = p;
    }
    v.output = pair_name(vs[i].second.first, vs[i].second.second);
    label[v.output] = vs[i].second;
    colour[v.output] = colours[i];
    tv.push_back(std::move(v));
  }
  PercolationScheme p;
  p.shape = Tree(pair_name(root.first, root.second), std::move(tv));
  for (const auto& e : p.shape.edges()) p.edge_label.push_back(label.at(e));
  for (const auto& v : p.shape.vertices()) p.vertex_colour.push_back(colour.at(v.output));
  return p;
}

std::string face_key(const Tree& f) {
  std::vector<std::string> vs;
  for (const auto& v : f.vertices()) {
    auto in = v.inputs;
    std::sort(in.begin(), in.end());
    std::string s = v.output + "<";
    for (const auto& e : in) s += e + ";";
    vs.push_back(s);
  }
  std::sort(vs.begin(), vs.end());
  std::string k = f.root() + "|";
  for (const auto& s : vs) k += s + "|";
  return k;
}

std::string PercolationScheme::key() const {
  std::vector<std::string> vs;
  for (int v = 0; v < shape.degree(); ++v) {
    auto in = shape.vertices()[v].inputs;
    std::sort(in.begin(), in.end());
    std::string s = (vertex_colour[v] == VertexColour::white ? "w:" : "b:") + shape.vertices()[v].output + "<";
    for (const auto& e : in) s += e + ";";
    vs.push_back(s);
  }
  std::sort(vs.begin(), vs.end());
  std::string k = shape.root() + "|";
  for (const auto& s : vs) k += s + "|";
  return k;
}

PercolationScheme minimal_scheme(const Tree& s, const Tree& t) {
  std::vector<PV> vs;
  const Edge& rt = t.root();
  for (const auto& v : s.vertices()) {
    PV x{{}, {v.output, rt}, VertexColour::white};
    for (const auto& a : v.inputs) x.in.push_back({a, rt});
    vs.push_back(std::move(x));
  }
  for (const auto& b : s.leaves())
    for (const auto& w : t.vertices()) {
      PV x{{}, {b, w.output}, VertexColour::black};
      for (const auto& y : w.inputs) x.in.push_back({b, y});
      vs.push_back(std::move(x));
    }
  return from_vertices({s.root(), rt}, vs);
}

PercolationScheme maximal_scheme(const Tree& s, const Tree& t) {
  std::vector<PV> vs;
  const Edge& rs = s.root();
  for (const auto& w : t.vertices()) {
    PV x{{}, {rs, w.output}, VertexColour::black};
    for (const auto& y : w.inputs) x.in.push_back({rs, y});
    vs.push_back(std::move(x));
  }
  for (const auto& y : t.leaves())
    for (const auto& v : s.vertices()) {
      PV x{{}, {v.output, y}, VertexColour::white};
      for (const auto& a : v.inputs) x.in.push_back({a, y});
      vs.push_back(std::move(x));
    }
  return from_vertices({rs, t.root()}, vs);
}

std::vector<PercolationScheme> percolation_step(const PercolationScheme& p, const Tree& /*s*/, const Tree& t) {
  std::vector<PercolationScheme> out;
  const auto vs = vertices_of(p);
  const Pair root = p.edge_label[0];
  std::map<Pair, int> producer;
  for (int i = 0; i < static_cast<int>(vs.size()); ++i) producer[vs[i].out] = i;

  for (int v = 0; v < static_cast<int>(vs.size()); ++v) {
    if (vs[v].c != VertexColour::white) continue;
    const Edge& y = vs[v].out.second;
    const int w = t_producer(t, y);
    if (w < 0) continue;
    std::vector<int> ws;
    bool ok = true;
    for (const auto& in : vs[v].in) {
      auto it = producer.find(in);
      if (it == producer.end() || vs[it->second].c != VertexColour::black) {
        ok = false;
        break;
      }
      ws.push_back(it->second);
    }
    if (!ok) continue;

    const Edge& b = vs[v].out.first;
    const auto& xs = t.vertices()[w].inputs;
    std::vector<PV> next;
    for (int i = 0; i < static_cast<int>(vs.size()); ++i)
      if (i != v && std::find(ws.begin(), ws.end(), i) == ws.end()) next.push_back(vs[i]);
    PV bw{{}, {b, y}, VertexColour::black};
    for (const auto& x : xs) bw.in.push_back({b, x});
    next.push_back(bw);
    for (const auto& x : xs) {
      PV wv{{}, {b, x}, VertexColour::white};
      for (const auto& in : vs[v].in) wv.in.push_back({in.first, x});
      next.push_back(std::move(wv));
    }
    out.push_back(from_vertices(root, next));
  }
  return out;
}

SchemePoset enumerate_schemes(const Tree& s, const Tree& t) {
  SchemePoset r{s, t, {}, {}};
  std::map<std::string, int> index;
  auto add = [&](PercolationScheme p) {
    auto k = p.key();
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(r.schemes.size());
    index.emplace(k, id);
    r.schemes.push_back(std::move(p));
    return id;
  };
  std::vector<int> frontier{add(minimal_scheme(s, t))};
  while (!frontier.empty()) {
    auto succ = parallel_map(frontier.size(), [&](size_t i) { return percolation_step(r.schemes[frontier[i]], s, t); });
    // Merge in frontier order, successors sorted by key, so ids are deterministic.
    std::vector<int> next;
    for (size_t i = 0; i < frontier.size(); ++i) {
      auto& ss = succ[i];
      std::sort(ss.begin(), ss.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
      for (auto& q : ss) {
        const size_t before = r.schemes.size();
        int j = add(std::move(q));
        r.covering.insert({frontier[i], j});
        if (r.schemes.size() > before) next.push_back(j);
      }
    }
    frontier = std::move(next);
  }
  return r;
}

std::vector<int> linearize(const std::vector<PercolationScheme>& schemes, const std::set<std::pair<int, int>>& covering) {
  const int n = static_cast<int>(schemes.size());
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> out(n);
  for (auto [a, b] : covering) {
    out[a].push_back(b);
    ++indeg[b];
  }
  std::vector<std::string> keys;
  for (const auto& p : schemes) keys.push_back(p.key());
  auto cmp = [&](int a, int b) { return keys[a] > keys[b]; };
  std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push(i);
  std::vector<int> order;
  while (!ready.empty()) {
    int i = ready.top();
    ready.pop();
    order.push_back(i);
    for (int j : out[i])
      if (--indeg[j] == 0) ready.push(j);
  }
  if (static_cast<int>(order.size()) != n) throw Error("not-a-poset");
  return order;
}

std::set<std::pair<int, int>> hasse(int n, const std::set<std::pair<int, int>>& edges) {
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (auto [a, b] : edges) reach[a][b] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (reach[i][k])
        for (int j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  std::set<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!reach[i][j]) continue;
      bool cover = true;
      for (int k = 0; k < n && cover; ++k)
        if (reach[i][k] && reach[k][j]) cover = false;
      if (cover) out.insert({i, j});
    }
  return out;
}

std::vector<int> scheme_mono(const PercolationScheme& p, const Tree& s, const Tree& t) {
  std::vector<int> m;
  for (const auto& [a, x] : p.edge_label) m.push_back(s.index(a) * t.edge_count() + t.index(x));
  return m;
}

TensorSet::TensorSet(Tree s, Tree t, int bound, int valence)
    : DendroidalSet(bound, valence), s_(std::move(s)), t_(std::move(t)), poset_(enumerate_schemes(s_, t_)) {}

int TensorSet::colour(const Edge& a, const Edge& x) const { return s_.index(a) * t_.edge_count() + t_.index(x); }

std::vector<Dendrex> TensorSet::compute(const Tree& shape) const {
  std::set<Dendrex> out;
  for (const auto& p : poset_.schemes) {
    auto m = scheme_mono(p, s_, t_);
    for (const auto& f : arrows_between(shape, p.shape)) {
      Dendrex d;
      for (int e : f.map) d.push_back(m[e]);
      out.insert(std::move(d));
    }
  }
  return {out.begin(), out.end()};
}

Dendrex TensorSet::act(const OmegaArrow& a, const Dendrex& x) const {
  Dendrex d;
  for (int e : a.map) d.push_back(x[e]);
  return d;
}

std::string TensorSet::show(const Dendrex& x) const {
  std::string out = "[";
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) out += " ";
    out += pair_name(s_.edge(x[i] / t_.edge_count()), t_.edge(x[i] % t_.edge_count()));
  }
  return out + "]";
}

std::set<Dendrex> tensor_dendrices(const Tree& s, const Tree& t, const Tree& shape) {
  TensorSet x(s, t, std::max(0, shape.degree()), std::max(0, max_valence(shape)));
  const auto& ds = x.dendrices(shape);
  return {ds.begin(), ds.end()};
}

nlohmann::json scheme_to_json(const PercolationScheme& p) {
  nlohmann::json j;
  j["tree"] = tree_to_json(p.shape);
  j["vertex_colour"] = nlohmann::json::array();
  for (auto c : p.vertex_colour) j["vertex_colour"].push_back(c == VertexColour::white ? "white" : "black");
  j["edge_label"] = nlohmann::json::array();
  for (const auto& [a, x] : p.edge_label) j["edge_label"].push_back({a, x});
  return j;
}

nlohmann::json poset_to_json(const SchemePoset& p) {
  auto order = linearize(p.schemes, p.covering);
  std::vector<int> pos(order.size());
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  nlohmann::json j;
  j["s"] = tree_to_json(p.s);
  j["t"] = tree_to_json(p.t);
  j["schemes"] = nlohmann::json::array();
  for (int i : order) j["schemes"].push_back(scheme_to_json(p.schemes[i]));
  j["covering"] = nlohmann::json::array();
  std::set<std::pair<int, int>> cov;
  for (auto [a, b] : p.covering) cov.insert({pos[a], pos[b]});
  for (auto [a, b] : cov) j["covering"].push_back({a, b});
  return j;
}

std::string poset_to_dot(const SchemePoset& p) {
  auto order = linearize(p.schemes, p.covering);
  std::vector<int> pos(order.size());
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  std::ostringstream os;
  os << "digraph schemes {\n";
  for (size_t i = 0; i < order.size(); ++i) os << "  T" << i + 1 << ";\n";
  std::set<std::pair<int, int>> cov;
  for (auto [a, b] : p.covering) cov.insert({pos[a], pos[b]});
  for (auto [a, b] : cov) os << "  T" << a + 1 << " -> T" << b + 1 << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace dendro
