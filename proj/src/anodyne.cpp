#include "dendro/anodyne.hpp"

#include <algorithm>
#include <functional>

namespace dendro {

void Subobject::add(const Tree& g) {
  if (contains(g)) return;
  for (const auto& f : all_faces(g)) keys_.insert(face_key(f));
}

Subobject closure(const std::vector<Tree>& generators) {
  Subobject s;
  for (const auto& g : generators) s.add(g);
  return s;
}

Subobject representable_ambient(const Tree& t) { return closure({t}); }

Subobject tensor_ambient(const SchemePoset& p) {
  Subobject s;
  for (const auto& x : p.schemes) s.add(x.shape);
  return s;
}

namespace {

bool is_inner_edge(const Tree& t, const Edge& e) { return t.has_edge(e) && t.is_inner(t.index(e)); }

AnodyneStep make_step(const Tree& r, const Edge& xi) {
  return {r, xi, horn(r, {xi}).maximal, face_key(r)};
}

// Push the horn pushout for (r, xi) unless r is already present.
void push_step(const Tree& r, const Edge& xi, Subobject& current, std::vector<AnodyneStep>& out) {
  if (current.contains(r)) return;
  AnodyneStep st = make_step(r, xi);
  for (const auto& f : st.family)
    if (!current.contains(f)) throw Error("certificate-invalid");
  Tree inner = contract(r, {xi});
  if (current.contains(inner)) throw Error("certificate-invalid");
  current.insert_key(st.filler);
  current.insert_key(face_key(inner));
  out.push_back(std::move(st));
}

std::vector<Tree> top_faces(const Tree& r) {
  std::vector<Tree> out;
  if (r.degree() < 2) return out;
  for (int v = 0; v < r.degree(); ++v) {
    bool top = true;
    for (int e : r.in(v)) top = top && r.producer(e) < 0;
    if (!top) continue;
    std::vector<Vertex> vs;
    for (int u = 0; u < r.degree(); ++u)
      if (u != v) vs.push_back(r.vertices()[u]);
    out.emplace_back(r.root(), vs);
  }
  return out;
}

void multi_horn(const Tree& t, std::set<Edge> a, Subobject& current, std::vector<AnodyneStep>& out) {
  if (a.size() == 1) {
    push_step(t, *a.begin(), current, out);
    return;
  }
  Edge e = *a.begin();
  a.erase(a.begin());
  multi_horn(contract(t, {e}), a, current, out);
  multi_horn(t, a, current, out);
}

Tree remove_vertex(const Tree& t, int v, const Edge& new_root) {
  std::vector<Vertex> vs;
  for (int u = 0; u < t.degree(); ++u)
    if (u != v) vs.push_back(t.vertices()[u]);
  return Tree(new_root, vs);
}

// External clusters of t not adjacent to `avoid` (an edge name), with the
// face obtained by removing each.
std::vector<Tree> cluster_faces(const Tree& t, const Edge& avoid, bool avoid_root_vertex) {
  std::vector<Tree> out;
  for (int v = 0; v < t.degree(); ++v) {
    std::vector<int> adj = t.in(v);
    adj.push_back(t.out(v));
    int inner = 0, inner_in = -1;
    bool touches = false;
    for (int e : adj) {
      if (t.is_inner(e)) {
        ++inner;
        if (e != t.out(v)) inner_in = e;
      }
      if (t.edge(e) == avoid) touches = true;
    }
    if (inner != 1 || touches) continue;
    const bool root_vertex = t.out(v) == 0;
    if (root_vertex && avoid_root_vertex) continue;
    out.push_back(remove_vertex(t, v, root_vertex ? t.edge(inner_in) : t.root()));
  }
  return out;
}

Tree graft_faces(const Tree& tf, const Tree& sf) {
  auto vs = tf.vertices();
  for (const auto& v : sf.vertices()) vs.push_back(v);
  return Tree(tf.root(), vs);
}

void grafting(const Tree& tf, const Edge& l, const Tree& sf, Subobject& current, std::vector<AnodyneStep>& out) {
  if (tf.is_eta() || sf.is_eta()) return;
  Tree r = graft_faces(tf, sf);
  if (tf.degree() + sf.degree() == 2) {
    push_step(r, l, current, out);
    return;
  }
  for (const auto& t2 : cluster_faces(tf, l, false)) grafting(t2, l, sf, current, out);
  for (const auto& s2 : cluster_faces(sf, "", true)) grafting(tf, l, s2, current, out);
  auto inner = r.inner_edges();
  multi_horn(r, {inner.begin(), inner.end()}, current, out);
}

Tree segment(const PercolationScheme& p, const std::set<int>& vs) {
  std::vector<Vertex> out;
  for (int v : vs) out.push_back(p.shape.vertices()[v]);
  return Tree(p.shape.root(), out);
}

}  // namespace

AnodyneCertificate certify_multi_horn(const Tree& t, const std::set<Edge>& a) {
  Sieve h = horn(t, a);
  AnodyneCertificate c{"multi-horn", h.maximal, {}, {t}, {}};
  Subobject cur = closure(h.maximal);
  multi_horn(t, a, cur, c.steps);
  return c;
}

AnodyneCertificate certify_grafting(const Tree& t, const Edge& l, const Tree& s) {
  if (!t.has_edge(l) || !t.is_leaf(t.index(l))) throw Error("not-a-leaf");
  if (t.is_eta() || s.is_eta()) {
    Tree r = graft(t, l, s);
    return {"grafting", {r}, {}, {r}, {}};
  }
  Tree r = graft(t, l, s);
  Tree tf = subtree_above(r, 0, {r.index(l)});
  Tree sf = subtree_above(r, r.index(l));
  AnodyneCertificate c{"grafting", {tf, sf}, {}, {r}, {}};
  Subobject cur = closure(c.start);
  grafting(tf, l, sf, cur, c.steps);
  return c;
}

bool characteristic_edge_check(const Tree& r, const Edge& xi, const Subobject& current) {
  for (const auto& f : top_faces(r))
    if (!current.contains(f)) return false;
  auto inner = r.inner_edges();
  if (inner.empty()) return true;
  if (!is_inner_edge(r, xi)) return false;
  std::vector<Edge> others;
  for (const auto& e : inner)
    if (e != xi) others.push_back(e);
  const size_t n = others.size();
  if (n > 20) throw Error("too-many-edges");
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::set<Edge> u;
    for (size_t i = 0; i < n; ++i)
      if (mask >> i & 1) u.insert(others[i]);
    Tree f = contract(r, u);
    if (!current.contains(f) && current.contains(contract(f, {xi}))) return false;
  }
  return true;
}

void characteristic_expand(const Tree& r, const Edge& xi, Subobject& current, std::vector<AnodyneStep>& out) {
  if (current.contains(r)) return;
  if (!characteristic_edge_check(r, xi, current)) throw Error("not-characteristic");
  std::vector<Edge> xs;
  for (const auto& e : r.inner_edges())
    if (e != xi && !current.contains(contract(r, {e}))) xs.push_back(e);
  const int n = static_cast<int>(xs.size());
  if (n > 12) throw Error("too-many-edges");
  // subsets J of {xi_1..xi_n} by size, then lexicographically; each step
  // keeps the edges in J and contracts the rest
  for (int l = 0; l <= n; ++l) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + l, true);
    do {
      std::set<Edge> contracted;
      for (int i = 0; i < n; ++i)
        if (!pick[i]) contracted.insert(xs[i]);
      push_step(contract(r, contracted), xi, current, out);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
}

std::vector<SpineData> spines(const PercolationScheme& p, const Edge& e) {
  std::vector<SpineData> out;
  const Tree& t = p.shape;
  for (int i = 0; i < t.edge_count(); ++i) {
    if (p.edge_label[i].first != e) continue;
    int c = t.consumer(i);
    if (c < 0 || p.edge_label[t.out(c)].first == e) continue;
    SpineData s{i, {}};
    if (t.producer(i) >= 0) s.vertices.insert(t.producer(i));
    for (; c >= 0; c = t.consumer(t.out(c))) s.vertices.insert(c);
    out.push_back(std::move(s));
  }
  return out;
}

TensorContext tensor_context(const Tree& s, const Edge& e, const Tree& t) {
  if (!is_inner_edge(s, e)) throw Error("not-inner");
  TensorContext c{s, t, e, enumerate_schemes(s, t), {}, {}, {}};
  c.order = linearize(c.poset.schemes, c.poset.covering);
  const std::string skip = face_key(contract(s, {e}));
  for (const auto& f : boundary(s).maximal) {
    if (face_key(f) == skip) continue;
    for (const auto& x : enumerate_schemes(f, t).schemes) c.a0_generators.push_back(x.shape);
  }
  if (!t.is_eta())
    for (const auto& g : boundary(t).maximal)
      for (const auto& x : enumerate_schemes(s, g).schemes) c.a0_generators.push_back(x.shape);
  c.a0 = closure(c.a0_generators);
  return c;
}

AnodyneCertificate certify_tensor_extension(const Tree& s, const Edge& e, const Tree& t) {
  TensorContext ctx = tensor_context(s, e, t);
  AnodyneCertificate c{"tensor", ctx.a0_generators, {}, {}, {}};
  Subobject cur = ctx.a0;

  for (size_t k = 0; k < ctx.order.size(); ++k) {
    const auto& p = ctx.poset.schemes[ctx.order[k]];
    c.end.push_back(p.shape);
    if (cur.contains(p.shape)) {
      c.skipped.push_back(static_cast<int>(k));
      continue;
    }
    const auto sp = spines(p, e);
    auto contained = [&](const std::set<int>& seg) {
      std::vector<int> r;
      for (size_t i = 0; i < sp.size(); ++i)
        if (std::includes(seg.begin(), seg.end(), sp[i].vertices.begin(), sp[i].vertices.end()))
          r.push_back(static_cast<int>(i));
      return r;
    };
    // Adjoin an initial segment: its top faces first (those cutting a
    // spine, then those of smaller size), then itself along the top edge
    // of its first spine.
    std::function<void(const std::set<int>&)> adjoin = [&](const std::set<int>& seg) {
      Tree r = segment(p, seg);
      if (cur.contains(r)) return;
      auto in_r = contained(seg);
      std::vector<int> tops, spine_tops, others;
      for (int v : seg) {
        bool top = true;
        for (int x : p.shape.in(v)) top = top && !seg.count(p.shape.producer(x));
        if (top) tops.push_back(v);
      }
      for (int v : tops) {
        bool on = false;
        for (int i : in_r) on = on || sp[i].vertices.count(v);
        (on ? spine_tops : others).push_back(v);
      }
      for (const auto* group : {&spine_tops, &others})
        for (int v : *group) {
          std::set<int> f = seg;
          f.erase(v);
          if (!contained(f).empty())
            adjoin(f);
          else if (!cur.contains(segment(p, f)))
            throw Error("certificate-invalid");
        }
      const Edge xi = p.shape.edge(sp[in_r.front()].top_edge);
      if (!characteristic_edge_check(r, xi, cur)) throw Error("certificate-invalid");
      characteristic_expand(r, xi, cur, c.steps);
    };
    std::set<int> all;
    for (int v = 0; v < p.shape.degree(); ++v) all.insert(v);
    if (sp.empty()) throw Error("certificate-invalid");
    adjoin(all);
  }
  return c;
}

VerifyResult verify_certificate(const AnodyneCertificate& c, const Subobject& ambient) {
  auto fail = [](int step, std::string reason, std::string detail = "") {
    return VerifyResult{false, step, std::move(reason), std::move(detail)};
  };
  Subobject cur = closure(c.start);
  for (const auto& k : cur.keys())
    if (!ambient.contains_key(k)) return fail(-1, "outside-ambient", k);
  for (size_t i = 0; i < c.steps.size(); ++i) {
    const auto& st = c.steps[i];
    const int si = static_cast<int>(i);
    if (!is_inner_edge(st.shape, st.xi)) return fail(si, "not-an-inner-horn", st.xi);
    if (!ambient.contains(st.shape)) return fail(si, "outside-ambient", face_key(st.shape));
    if (st.filler != face_key(st.shape)) return fail(si, "filler-mismatch", st.filler);
    std::set<std::string> want, got;
    for (const auto& f : horn(st.shape, {st.xi}).maximal) want.insert(face_key(f));
    for (const auto& f : st.family) got.insert(face_key(f));
    if (want != got) return fail(si, "family-mismatch");
    for (const auto& f : st.family)
      if (!cur.contains(f)) return fail(si, "horn-not-contained", face_key(f));
    if (cur.contains(st.shape)) return fail(si, "filler-not-new", st.filler);
    Tree inner = contract(st.shape, {st.xi});
    if (cur.contains(inner)) return fail(si, "face-not-new", face_key(inner));
    cur.insert_key(st.filler);
    cur.insert_key(face_key(inner));
  }
  if (!(cur == closure(c.end))) return fail(static_cast<int>(c.steps.size()), "end-mismatch");
  return {};
}

nlohmann::json certificate_to_json(const AnodyneCertificate& c) {
  auto trees = [](const std::vector<Tree>& ts) {
    auto a = nlohmann::json::array();
    for (const auto& t : ts) a.push_back(tree_to_json(t));
    return a;
  };
  nlohmann::json j;
  j["kind"] = c.kind;
  j["start"] = trees(c.start);
  j["steps"] = nlohmann::json::array();
  for (const auto& s : c.steps)
    j["steps"].push_back({{"shape", tree_to_json(s.shape)}, {"xi", s.xi}, {"family", trees(s.family)}, {"filler", s.filler}});
  j["end"] = trees(c.end);
  j["skipped"] = c.skipped;
  return j;
}

AnodyneCertificate certificate_from_json(const nlohmann::json& j) {
  auto trees = [](const nlohmann::json& a) {
    std::vector<Tree> out;
    for (const auto& t : a) out.push_back(tree_from_json(t));
    return out;
  };
  AnodyneCertificate c;
  c.kind = j.at("kind").get<std::string>();
  c.start = trees(j.at("start"));
  for (const auto& s : j.at("steps"))
    c.steps.push_back({tree_from_json(s.at("shape")), s.at("xi").get<Edge>(), trees(s.at("family")),
                       s.at("filler").get<std::string>()});
  c.end = trees(j.at("end"));
  c.skipped = j.value("skipped", std::vector<int>{});
  return c;
}

}  // namespace dendro
