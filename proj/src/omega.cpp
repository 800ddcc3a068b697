#include "dendro/omega.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace dendro {

namespace {

// Is (ins; o) a signature of a subtree of t with at least one vertex?
bool sig_ok(const Tree& t, const std::vector<int>& ins, int o) {
  std::vector<char> want(t.edge_count(), 0);
  for (int x : ins) {
    if (want[x]) return false;
    want[x] = 1;
  }
  if (want[o]) return false;
  int reached = 0;
  std::vector<int> stack{o};
  bool top = true;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (!top && want[x]) {
      ++reached;
      continue;
    }
    top = false;
    int v = t.producer(x);
    if (v < 0) return false;
    for (int y : t.in(v)) stack.push_back(y);
  }
  return reached == static_cast<int>(ins.size());
}

}  // namespace

bool is_valid_arrow(const Tree& s, const Tree& t, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != s.edge_count()) return false;
  for (int m : map)
    if (m < 0 || m >= t.edge_count()) return false;
  for (int v = 0; v < s.degree(); ++v) {
    const auto& in = s.in(v);
    int o = map[s.out(v)];
    if (in.size() == 1 && map[in[0]] == o) continue;
    std::vector<int> ins;
    for (int x : in) ins.push_back(map[x]);
    if (!sig_ok(t, ins, o)) return false;
  }
  return true;
}

bool is_valid(const OmegaArrow& a) { return is_valid_arrow(a.source, a.target, a.map); }

bool is_injective(const OmegaArrow& a) {
  std::vector<int> m = a.map;
  std::sort(m.begin(), m.end());
  return std::adjacent_find(m.begin(), m.end()) == m.end();
}

bool is_surjective(const OmegaArrow& a) {
  std::vector<char> hit(a.target.edge_count(), 0);
  for (int m : a.map) hit[m] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c; });
}

bool is_iso(const OmegaArrow& a) {
  return a.source.edge_count() == a.target.edge_count() && a.source.degree() == a.target.degree() &&
         is_injective(a) && is_surjective(a);
}

OmegaArrow identity(const Tree& t) {
  OmegaArrow a{t, t, std::vector<int>(t.edge_count()), {FaceKindTag::iso, ""}};
  std::iota(a.map.begin(), a.map.end(), 0);
  return a;
}

OmegaArrow arrow_from_names(const Tree& s, const Tree& t, const std::map<Edge, Edge>& m) {
  OmegaArrow a{s, t, std::vector<int>(s.edge_count(), -1), {}};
  for (int i = 0; i < s.edge_count(); ++i) {
    auto it = m.find(s.edge(i));
    if (it == m.end() || !t.has_edge(it->second)) throw Error("not-an-arrow");
    a.map[i] = t.index(it->second);
  }
  if (!is_valid(a)) throw Error("not-an-arrow");
  return a;
}

OmegaArrow inclusion(const Tree& f, const Tree& t) {
  std::map<Edge, Edge> m;
  for (const auto& e : f.edges()) m[e] = e;
  return arrow_from_names(f, t, m);
}

OmegaArrow degeneracy(const Tree& t, const Edge& v) {
  int vi = t.vertex_of(v);
  if (t.in(vi).size() != 1) throw Error("not-unary");
  const Edge a = t.edge(t.in(vi)[0]);
  const Edge b = v;
  std::vector<Vertex> vs;
  for (int u = 0; u < t.degree(); ++u) {
    if (u == vi) continue;
    Vertex w = t.vertices()[u];
    if (w.output == a) w.output = b;
    vs.push_back(w);
  }
  Tree target(t.root(), vs);
  std::map<Edge, Edge> m;
  for (const auto& e : t.edges()) m[e] = (e == a ? b : e);
  OmegaArrow r = arrow_from_names(t, target, m);
  r.kind = {FaceKindTag::degeneracy, v};
  return r;
}

OmegaArrow outer_face(const Tree& t, const Edge& v) {
  int vi = t.vertex_of(v);
  int out = t.out(vi);
  std::vector<int> inner;
  if (t.consumer(out) >= 0) inner.push_back(out);
  for (int x : t.in(vi))
    if (t.producer(x) >= 0) inner.push_back(x);
  if (inner.size() != 1) throw Error("not-outer-admissible");
  Tree src;
  if (inner[0] == out) {
    std::vector<Vertex> vs;
    for (int u = 0; u < t.degree(); ++u)
      if (u != vi) vs.push_back(t.vertices()[u]);
    src = Tree(t.root(), vs);
  } else {
    src = subtree_above(t, inner[0]);
  }
  OmegaArrow r = inclusion(src, t);
  r.kind = {FaceKindTag::outer_vertex, v};
  return r;
}

OmegaArrow edge_face(const Tree& t, const Edge& e) {
  OmegaArrow r = inclusion(Tree::eta(e), t);
  r.kind = {FaceKindTag::outer_edge_of_corolla, e};
  return r;
}

OmegaArrow inner_face(const Tree& t, const Edge& e) {
  if (!t.has_edge(e) || !t.is_inner(t.index(e))) throw Error("not-inner");
  OmegaArrow r = inclusion(contract(t, {e}), t);
  r.kind = {FaceKindTag::inner, e};
  return r;
}

OmegaArrow iso_from_names(const Tree& s, const Tree& t, const std::map<Edge, Edge>& m) {
  OmegaArrow r = arrow_from_names(s, t, m);
  if (!is_iso(r)) throw Error("not-an-iso");
  r.kind = {FaceKindTag::iso, ""};
  return r;
}

OmegaArrow compose(const OmegaArrow& g, const OmegaArrow& f) {
  if (f.target != g.source) throw Error("not-composable");
  OmegaArrow r{f.source, g.target, std::vector<int>(f.map.size()), {}};
  for (size_t i = 0; i < f.map.size(); ++i) r.map[i] = g.map[f.map[i]];
  return r;
}

std::vector<Edge> outer_admissible(const Tree& t) {
  std::vector<Edge> r;
  for (int v = 0; v < t.degree(); ++v) {
    int out = t.out(v);
    int n = t.consumer(out) >= 0 ? 1 : 0;
    for (int x : t.in(v))
      if (t.producer(x) >= 0) ++n;
    if (n == 1) r.push_back(t.edge(out));
  }
  return r;
}

std::vector<OmegaArrow> faces(const Tree& t) {
  std::vector<OmegaArrow> r;
  if (t.degree() == 0) return r;
  if (t.degree() == 1) {
    for (const auto& e : t.edges()) r.push_back(edge_face(t, e));
    return r;
  }
  for (const auto& v : outer_admissible(t)) r.push_back(outer_face(t, v));
  for (const auto& e : t.inner_edges()) r.push_back(inner_face(t, e));
  return r;
}

namespace {

// One elementary face step from v towards the subtree u (u's edges a
// subset of v's, u obtained from v by deleting outer vertices).
OmegaArrow outer_step(const Tree& v, const Tree& u) {
  for (const auto& f : faces(v)) {
    if (f.kind.tag == FaceKindTag::inner) continue;
    bool keeps = true;
    for (const auto& e : u.edges())
      if (!f.source.has_edge(e)) keeps = false;
    if (!keeps) continue;
    // u must remain a subtree of the face with its vertices intact
    bool ok = true;
    for (const auto& x : u.vertices()) {
      if (f.source.producer(f.source.index(x.output)) < 0) {
        ok = false;
        break;
      }
    }
    if (ok) return f;
  }
  throw Error("no-outer-step");
}

}  // namespace

Tree image_face(const OmegaArrow& f) {
  const Tree& t = f.target;
  bool collapses = true;
  for (int v = 0; v < f.source.degree() && collapses; ++v) {
    const auto& in = f.source.in(v);
    collapses = in.size() == 1 && f.map[in[0]] == f.map[f.source.out(v)];
  }
  if (collapses) return Tree::eta(t.edge(f.map[0]));
  std::set<int> img(f.map.begin(), f.map.end());
  std::set<int> cut;
  for (int l : f.source.leaf_indices()) cut.insert(f.map[l]);
  Tree u = subtree_above(t, f.map[0], cut);
  std::set<Edge> contract_set;
  for (int i : u.inner_indices())
    if (!img.count(t.index(u.edge(i)))) contract_set.insert(u.edge(i));
  return contract(u, contract_set);
}

Factorization factorize(const OmegaArrow& f) {
  Factorization fz;
  OmegaArrow cur = f;
  OmegaArrow sigma = identity(f.source);
  for (;;) {
    int found = -1;
    for (int v = 0; v < cur.source.degree(); ++v) {
      const auto& in = cur.source.in(v);
      if (in.size() == 1 && cur.map[in[0]] == cur.map[cur.source.out(v)]) {
        found = v;
        break;
      }
    }
    if (found < 0) break;
    OmegaArrow d = degeneracy(cur.source, cur.source.edge(cur.source.out(found)));
    fz.degeneracies.push_back(d);
    sigma = compose(d, sigma);
    OmegaArrow next{d.target, cur.target, std::vector<int>(d.target.edge_count()), {}};
    for (int i = 0; i < d.target.edge_count(); ++i) next.map[i] = cur.map[cur.source.index(d.target.edge(i))];
    cur = next;
  }
  if (!is_injective(cur)) throw Error("factorize-internal");

  const Tree& t = f.target;
  std::set<int> img(cur.map.begin(), cur.map.end());
  std::set<int> cut;
  for (int l : cur.source.leaf_indices()) cut.insert(cur.map[l]);
  Tree u = cur.source.is_eta() ? Tree::eta(t.edge(cur.map[0])) : subtree_above(t, cur.map[0], cut);
  std::set<Edge> contract_set;
  for (int i : u.inner_indices())
    if (!img.count(t.index(u.edge(i)))) contract_set.insert(u.edge(i));
  Tree face = contract(u, contract_set);

  std::map<Edge, Edge> phi_names;
  for (int i = 0; i < cur.source.edge_count(); ++i) phi_names[cur.source.edge(i)] = t.edge(cur.map[i]);
  fz.phi = iso_from_names(cur.source, face, phi_names);
  fz.sigma = sigma;
  fz.delta = inclusion(face, t);

  // face chain: inner faces re-inserting contracted edges, then outer faces
  Tree step = face;
  std::set<Edge> remaining = contract_set;
  while (!remaining.empty()) {
    Edge e = *remaining.begin();
    remaining.erase(remaining.begin());
    Tree bigger = contract(u, remaining);
    fz.face_chain.push_back(inner_face(bigger, e));
    step = bigger;
  }
  std::vector<Tree> chain{t};
  while (chain.back().degree() > u.degree() || chain.back().edge_count() != u.edge_count()) {
    OmegaArrow o = outer_step(chain.back(), u);
    chain.push_back(o.source);
  }
  for (size_t k = chain.size() - 1; k > 0; --k) {
    OmegaArrow o = outer_step(chain[k - 1], u);
    fz.face_chain.push_back(o);
  }
  return fz;
}

OmegaArrow recompose(const Factorization& fz) { return compose(fz.delta, compose(fz.phi, fz.sigma)); }

SubtreeIndex::SubtreeIndex(const Tree& t) {
  const int n = t.edge_count();
  std::vector<std::vector<std::vector<int>>> all(n);
  std::vector<char> done(n, 0);
  std::function<const std::vector<std::vector<int>>&(int)> subs = [&](int o) -> const std::vector<std::vector<int>>& {
    if (done[o]) return all[o];
    done[o] = 1;
    int v = t.producer(o);
    if (v < 0) return all[o];
    std::vector<std::vector<int>> acc{{}};
    for (int y : t.in(v)) {
      std::vector<std::vector<int>> opts{{y}};
      for (const auto& s : subs(y)) opts.push_back(s);
      std::vector<std::vector<int>> nxt;
      for (const auto& a : acc)
        for (const auto& b : opts) {
          auto c = a;
          c.insert(c.end(), b.begin(), b.end());
          nxt.push_back(std::move(c));
        }
      acc = std::move(nxt);
    }
    all[o] = std::move(acc);
    return all[o];
  };
  by_size.assign(n, {});
  for (int o = 0; o < n; ++o) {
    for (const auto& s : subs(o)) {
      if (by_size[o].size() <= s.size()) by_size[o].resize(s.size() + 1);
      by_size[o][s.size()].push_back(s);
    }
  }
}

const std::vector<std::vector<int>>* SubtreeIndex::get(int o, size_t n) const {
  if (n >= by_size[o].size()) return nullptr;
  return &by_size[o][n];
}

std::vector<OmegaArrow> arrows_between(const Tree& s, const Tree& t) {
  SubtreeIndex idx(t);
  std::vector<std::vector<int>> maps;
  std::vector<int> m(s.edge_count(), -1);
  std::function<void(int)> go = [&](int v) {
    if (v == s.degree()) {
      maps.push_back(m);
      return;
    }
    const auto& in = s.in(v);
    int o = m[s.out(v)];
    if (in.size() == 1) {
      m[in[0]] = o;
      go(v + 1);
    }
    if (const auto* cands = idx.get(o, in.size())) {
      for (const auto& leaves : *cands) {
        std::vector<int> perm(in.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
          for (size_t j = 0; j < in.size(); ++j) m[in[j]] = leaves[perm[j]];
          go(v + 1);
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    }
  };
  for (int r = 0; r < t.edge_count(); ++r) {
    m[0] = r;
    go(0);
  }
  std::sort(maps.begin(), maps.end());
  std::vector<OmegaArrow> out;
  out.reserve(maps.size());
  for (auto& mp : maps) out.push_back({s, t, std::move(mp), {}});
  return out;
}

std::vector<OmegaArrow> automorphisms(const Tree& t) {
  std::vector<std::string> memo(t.edge_count());
  std::function<const std::string&(int)> code = [&](int x) -> const std::string& {
    if (!memo[x].empty()) return memo[x];
    int v = t.producer(x);
    if (v < 0) return memo[x] = "|";
    std::vector<std::string> cs;
    for (int y : t.in(v)) cs.push_back(code(y));
    std::sort(cs.begin(), cs.end());
    std::string s = "(";
    for (const auto& c : cs) s += c;
    return memo[x] = s + ")";
  };
  code(0);
  std::vector<std::vector<int>> maps;
  std::vector<int> m(t.edge_count(), -1);
  m[0] = 0;
  std::function<void(int)> go = [&](int v) {
    if (v == t.degree()) {
      maps.push_back(m);
      return;
    }
    const auto& in = t.in(v);
    int target_v = t.producer(m[t.out(v)]);
    const auto& tin = t.in(target_v);
    std::vector<int> perm(in.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool ok = true;
      for (size_t j = 0; j < in.size() && ok; ++j) ok = memo[in[j]] == memo[tin[perm[j]]];
      if (!ok) continue;
      for (size_t j = 0; j < in.size(); ++j) m[in[j]] = tin[perm[j]];
      go(v + 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  go(0);
  std::sort(maps.begin(), maps.end());
  std::vector<OmegaArrow> out;
  for (auto& mp : maps) out.push_back({t, t, std::move(mp), {FaceKindTag::iso, ""}});
  return out;
}

std::vector<Tree> all_faces(const Tree& t) {
  return all_faces_within(t, std::set<Edge>(t.edges().begin(), t.edges().end()));
}

std::vector<Tree> all_faces_within(const Tree& t, const std::set<Edge>& allowed) {
  std::vector<Tree> out;
  std::set<std::string> seen;
  auto ok = [&](int x) { return allowed.count(t.edge(x)) != 0; };
  for (int o = 0; o < t.edge_count(); ++o) {
    if (!ok(o)) continue;
    // A subtree at o is fixed by choosing, for each frontier edge, to cut
    // there or to keep the vertex above it.
    std::vector<std::set<int>> cuts;
    std::set<int> cut;
    std::vector<int> frontier;
    std::function<void()> expand = [&]() {
      if (frontier.empty()) {
        cuts.push_back(cut);
        return;
      }
      int x = frontier.back();
      frontier.pop_back();
      int v = t.producer(x);
      if (ok(x)) {
        cut.insert(x);
        expand();
        cut.erase(x);
      }
      if (v >= 0) {
        size_t before = frontier.size();
        for (int y : t.in(v)) frontier.push_back(y);
        expand();
        frontier.resize(before);
      }
      frontier.push_back(x);
    };
    Tree e = Tree::eta(t.edge(o));
    if (seen.insert(e.str()).second) out.push_back(e);
    int v = t.producer(o);
    if (v >= 0) {
      for (int y : t.in(v)) frontier.push_back(y);
      expand();
    }
    for (const auto& c : cuts) {
      Tree u = subtree_above(t, o, c);
      std::set<Edge> forced;
      std::vector<Edge> optional;
      for (const auto& x : u.inner_edges()) {
        if (allowed.count(x))
          optional.push_back(x);
        else
          forced.insert(x);
      }
      const size_t k = optional.size();
      for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
        std::set<Edge> es = forced;
        for (size_t j = 0; j < k; ++j)
          if (mask >> j & 1) es.insert(optional[j]);
        Tree f = contract(u, es);
        if (seen.insert(f.str()).second) out.push_back(f);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Tree& a, const Tree& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.edge_count() != b.edge_count()) return a.edge_count() < b.edge_count();
    return a.str() < b.str();
  });
  return out;
}

nlohmann::json arrow_to_json(const OmegaArrow& a) {
  nlohmann::json m = nlohmann::json::object();
  for (int i = 0; i < a.source.edge_count(); ++i) m[a.source.edge(i)] = a.target.edge(a.map[i]);
  return {{"source", tree_to_json(a.source)}, {"target", tree_to_json(a.target)}, {"edge_map", m}};
}

OmegaArrow arrow_from_json(const nlohmann::json& j) {
  Tree s = tree_from_json(j.at("source"));
  Tree t = tree_from_json(j.at("target"));
  std::map<Edge, Edge> m;
  for (auto it = j.at("edge_map").begin(); it != j.at("edge_map").end(); ++it) m[it.key()] = it.value().get<std::string>();
  return arrow_from_names(s, t, m);
}

}  // namespace dendro
