#include "dendro/dset.hpp"

#include <algorithm>
#include <sstream>

namespace dendro {

// ---------------------------------------------------------------- base

const std::vector<Dendrex>& DendroidalSet::dendrices(const Tree& shape) const {
  const std::string key = shape.str();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  std::vector<Dendrex> v = compute(shape);
  std::lock_guard<std::mutex> lock(mu_);
  // std::map nodes are stable, so the reference outlives later inserts
  return cache_.emplace(key, std::move(v)).first->second;
}

std::string DendroidalSet::show(const Dendrex& x) const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << "]";
  return os.str();
}

std::vector<Tree> DendroidalSet::shapes() const { return enumerate_trees(bound_, valence_); }

// ---------------------------------------------------------------- representable

Representable::Representable(Tree t, int bound, int valence) : DendroidalSet(bound, valence), t_(std::move(t)) {}

std::vector<Dendrex> Representable::compute(const Tree& shape) const {
  std::vector<Dendrex> out;
  for (const auto& a : arrows_between(shape, t_)) out.push_back(a.map);
  return out;
}

Dendrex Representable::act(const OmegaArrow& a, const Dendrex& x) const {
  Dendrex r(a.source.edge_count());
  for (int i = 0; i < a.source.edge_count(); ++i) r[i] = x[a.map[i]];
  return r;
}

std::string Representable::show(const Dendrex& x) const {
  std::string s = "[";
  for (size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + t_.edge(x[i]);
  return s + "]";
}

SieveSet::SieveSet(const Sieve& s, int bound, int valence)
    : Representable(s.tree, bound, valence), sieve_(std::make_shared<Sieve>(s)) {}

std::vector<Dendrex> SieveSet::compute(const Tree& shape) const {
  std::vector<Dendrex> out;
  for (const auto& a : arrows_between(shape, tree()))
    if (sieve_->contains(a)) out.push_back(a.map);
  return out;
}

// ---------------------------------------------------------------- nerve

Nerve::Nerve(std::shared_ptr<const ColoredOperad> p, int bound, int valence)
    : DendroidalSet(bound, valence), p_(std::move(p)) {}

std::vector<Dendrex> Nerve::compute(const Tree& shape) const {
  const int ne = shape.edge_count();
  std::vector<Dendrex> out;
  Dendrex cur(ne + shape.degree(), -1);
  std::function<void(int)> go = [&](int v) {
    if (v == shape.degree()) {
      out.push_back(cur);
      return;
    }
    const auto& in = shape.in(v);
    for (OpId p : p_->ops_with(cur[shape.out(v)], static_cast<int>(in.size()))) {
      const auto& cs = p_->inputs(p);
      for (size_t k = 0; k < in.size(); ++k) cur[in[k]] = cs[k];
      cur[ne + v] = p;
      go(v + 1);
    }
    for (int e : in) cur[e] = -1;
    cur[ne + v] = -1;
  };
  for (ColourId c = 0; c < p_->colour_count(); ++c) {
    cur[0] = c;
    go(0);
  }
  return out;
}

OpId Nerve::composite(const Tree& shape, const Dendrex& x, int o, const std::vector<int>& leaves) const {
  std::set<int> cut(leaves.begin(), leaves.end());
  std::vector<int> planar;
  std::function<OpId(int)> go = [&](int e) -> OpId {
    if (cut.count(e)) {
      planar.push_back(e);
      return p_->unit(x[e]);
    }
    int v = shape.producer(e);
    if (v < 0) throw Error("not-a-subtree");
    OpId p = vertex_op(shape, x, v);
    const auto& in = shape.in(v);
    std::vector<OpId> subs;
    for (int a : in) subs.push_back(go(a));
    for (int k = static_cast<int>(in.size()) - 1; k >= 0; --k) {
      p = p_->compose(p, k, subs[k]);
      if (p < 0) throw Error("colour-mismatch");
    }
    return p;
  };
  OpId p = go(o);
  if (planar.size() != leaves.size()) throw Error("not-a-subtree");
  Perm s(leaves.size());
  for (size_t k = 0; k < leaves.size(); ++k)
    s[k] = static_cast<int>(std::find(planar.begin(), planar.end(), leaves[k]) - planar.begin());
  if (is_identity(s)) return p;
  if (!p_->symmetric()) throw Error("planar-permutation");
  return p_->act(p, s);
}

Dendrex Nerve::act(const OmegaArrow& a, const Dendrex& x) const {
  const Tree& s = a.source;
  const int ne = s.edge_count();
  Dendrex r(ne + s.degree());
  for (int i = 0; i < ne; ++i) r[i] = x[a.map[i]];
  for (int v = 0; v < s.degree(); ++v) {
    std::vector<int> leaves;
    for (int e : s.in(v)) leaves.push_back(a.map[e]);
    r[ne + v] = composite(a.target, x, a.map[s.out(v)], leaves);
  }
  return r;
}

std::string Nerve::show(const Dendrex& x) const {
  // colours are not recoverable without the shape; ops carry them anyway
  std::string s = "[";
  for (size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + "]";
}

// ---------------------------------------------------------------- tables

namespace {

struct CanonArrow {
  OmegaArrow arrow;
  Canonical src, tgt;
};

CanonArrow canonicalize(const OmegaArrow& a) {
  CanonArrow c{{}, canonical_form(a.source), canonical_form(a.target)};
  c.arrow.source = c.src.tree;
  c.arrow.target = c.tgt.tree;
  c.arrow.map.assign(c.src.tree.edge_count(), 0);
  for (int i = 0; i < a.source.edge_count(); ++i) {
    const Edge& e = a.source.edge(i);
    c.arrow.map[c.src.tree.index(c.src.iso.at(e))] = c.tgt.tree.index(c.tgt.iso.at(a.target.edge(a.map[i])));
  }
  return c;
}

}  // namespace

std::string TableSet::arrow_key(const OmegaArrow& a) {
  std::string k = canonical_code(a.source) + ">" + canonical_code(a.target) + ":";
  for (size_t i = 0; i < a.map.size(); ++i) k += (i ? "," : "") + std::to_string(a.map[i]);
  return k;
}

void TableSet::set_count(const Tree& canonical_shape, int n) { counts_[canonical_code(canonical_shape)] = n; }

void TableSet::set_action(const OmegaArrow& canonical_arrow, std::vector<int> table) {
  actions_[arrow_key(canonical_arrow)] = std::move(table);
}

int TableSet::count(const std::string& code) const {
  auto it = counts_.find(code);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<Dendrex> TableSet::compute(const Tree& shape) const {
  std::vector<Dendrex> out;
  int n = count(canonical_code(shape));
  for (int i = 0; i < n; ++i) out.push_back({i});
  return out;
}

Dendrex TableSet::act(const OmegaArrow& a, const Dendrex& x) const {
  CanonArrow c = canonicalize(a);
  auto it = actions_.find(arrow_key(c.arrow));
  if (it == actions_.end()) {
    if (c.arrow.source == c.arrow.target && c.arrow.map == identity(c.arrow.source).map) return x;
    throw Error("missing-action");
  }
  return {it->second.at(x[0])};
}

std::shared_ptr<TableSet> tabulate(const DendroidalSet& x) {
  auto t = std::make_shared<TableSet>(x.bound(), x.valence());
  auto shapes = x.shapes();
  for (const auto& s : shapes) t->set_count(s, static_cast<int>(x.dendrices(s).size()));
  for (const auto& s : shapes) {
    const auto& ds = x.dendrices(s);
    std::map<Dendrex, int> idx;
    for (size_t i = 0; i < ds.size(); ++i) idx[ds[i]] = static_cast<int>(i);
    for (const auto& u : shapes) {
      const auto& du = x.dendrices(u);
      for (const auto& a : arrows_between(s, u)) {
        std::vector<int> table;
        for (const auto& y : du) table.push_back(idx.at(x.act(a, y)));
        t->set_action(a, std::move(table));
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------- subobjects

WithoutDendrex::WithoutDendrex(std::shared_ptr<const DendroidalSet> base, Tree shape, Dendrex removed)
    : DendroidalSet(base->bound(), base->valence()),
      base_(std::move(base)),
      shape_(std::move(shape)),
      removed_(std::move(removed)) {}

bool WithoutDendrex::removed(const Tree& shape, const Dendrex& y) const {
  for (const auto& a : arrows_between(shape_, shape))
    if (base_->act(a, y) == removed_) return true;
  return false;
}

std::vector<Dendrex> WithoutDendrex::compute(const Tree& shape) const {
  std::vector<Dendrex> out;
  for (const auto& y : base_->dendrices(shape))
    if (!removed(shape, y)) out.push_back(y);
  return out;
}

bool is_subface(const Tree& f, const Tree& g) {
  std::vector<int> m;
  for (const auto& e : f.edges()) {
    if (!g.has_edge(e)) return false;
    m.push_back(g.index(e));
  }
  return is_valid_arrow(f, g, m);
}

std::vector<Tree> common_faces(const Tree& a, const Tree& b) {
  std::set<Edge> shared;
  for (const auto& e : a.edges())
    if (b.has_edge(e)) shared.insert(e);
  std::vector<Tree> cands;
  for (auto& f : all_faces_within(a, shared))
    if (is_subface(f, b)) cands.push_back(std::move(f));
  std::vector<Tree> out;
  for (size_t i = 0; i < cands.size(); ++i) {
    bool maximal = true;
    for (size_t j = 0; j < cands.size() && maximal; ++j)
      if (j != i && is_subface(cands[i], cands[j]) && !is_subface(cands[j], cands[i])) maximal = false;
    if (maximal) out.push_back(cands[i]);
  }
  return out;
}

bool Sieve::contains(const OmegaArrow& f) const {
  Tree img = image_face(f);
  for (const auto& m : maximal)
    if (is_subface(img, m)) return true;
  return false;
}

namespace {

Tree labelled_image(const OmegaArrow& a) {
  std::map<Edge, Edge> m;
  for (const auto& e : a.source.edges()) m[e] = a.image(e);
  return a.source.renamed(m);
}

}  // namespace

Sieve boundary(const Tree& t) {
  if (t.is_eta()) throw Error("eta-has-no-boundary");
  Sieve s{t, {}};
  for (const auto& f : faces(t)) s.maximal.push_back(labelled_image(f));
  return s;
}

Sieve horn(const Tree& t, const std::set<Edge>& a) {
  if (a.empty()) throw Error("bad-horn-spec");
  for (const auto& e : a)
    if (!t.has_edge(e) || !t.is_inner(t.index(e))) throw Error("bad-horn-spec");
  Sieve s{t, {}};
  for (const auto& f : faces(t)) {
    if (f.kind.tag == FaceKindTag::inner && a.count(f.kind.at)) continue;
    s.maximal.push_back(labelled_image(f));
  }
  return s;
}

Sieve representable_sieve(const Tree& t) { return Sieve{t, {t}}; }

Dendrex restrict_to(const DendroidalSet& x, const Tree& t, const Dendrex& y, const Tree& f) {
  return x.act(inclusion(f, t), y);
}

std::vector<std::vector<Dendrex>> hom_into(const std::vector<Tree>& generators, const DendroidalSet& x,
                                           size_t limit) {
  const size_t n = generators.size();
  // For each generator k: the common faces with each earlier generator,
  // and its candidates indexed by their restrictions to those faces.
  struct Link {
    size_t j;
    Tree face;
  };
  std::vector<std::vector<Link>> links(n);
  std::vector<std::map<std::vector<Dendrex>, std::vector<size_t>>> index(n);
  for (size_t k = 0; k < n; ++k) {
    for (size_t j = 0; j < k; ++j)
      for (auto& f : common_faces(generators[j], generators[k])) links[k].push_back({j, std::move(f)});
    const auto& ds = x.dendrices(generators[k]);
    std::vector<OmegaArrow> incl;
    for (const auto& l : links[k]) incl.push_back(inclusion(l.face, generators[k]));
    for (size_t c = 0; c < ds.size(); ++c) {
      std::vector<Dendrex> key;
      for (const auto& a : incl) key.push_back(x.act(a, ds[c]));
      index[k][key].push_back(c);
    }
  }
  // restriction of a chosen x_j to a face, for the lookups above
  std::vector<std::vector<OmegaArrow>> from_j(n);
  for (size_t k = 0; k < n; ++k)
    for (const auto& l : links[k]) from_j[k].push_back(inclusion(l.face, generators[l.j]));

  std::vector<std::vector<Dendrex>> out;
  std::vector<Dendrex> cur(n);
  std::function<bool(size_t)> go = [&](size_t k) -> bool {
    if (k == n) {
      out.push_back(cur);
      return limit == 0 || out.size() < limit;
    }
    std::vector<Dendrex> key;
    for (size_t i = 0; i < links[k].size(); ++i) key.push_back(x.act(from_j[k][i], cur[links[k][i].j]));
    auto it = index[k].find(key);
    if (it == index[k].end()) return true;
    const auto& ds = x.dendrices(generators[k]);
    for (size_t c : it->second) {
      cur[k] = ds[c];
      if (!go(k + 1)) return false;
    }
    return true;
  };
  go(0);
  return out;
}

// ---------------------------------------------------------------- degeneracies

OmegaArrow collapse(const Tree& t, const std::set<Edge>& unary) {
  std::vector<int> rep(t.edge_count());
  std::vector<bool> gone(t.degree(), false);
  for (const auto& e : unary) {
    int v = t.vertex_of(e);
    if (t.in(v).size() != 1) throw Error("not-unary");
    gone[v] = true;
  }
  for (int i = 0; i < t.edge_count(); ++i) {
    int c = t.consumer(i);
    rep[i] = (c >= 0 && gone[c]) ? rep[t.out(c)] : i;
  }
  std::vector<Vertex> vs;
  for (int v = 0; v < t.degree(); ++v) {
    if (gone[v]) continue;
    Vertex w{{}, t.edge(rep[t.out(v)])};
    for (int a : t.in(v)) w.inputs.push_back(t.edge(rep[a]));
    vs.push_back(w);
  }
  Tree target(t.root(), vs);
  OmegaArrow r{t, target, std::vector<int>(t.edge_count()), {FaceKindTag::degeneracy, {}}};
  for (int i = 0; i < t.edge_count(); ++i) r.map[i] = target.index(t.edge(rep[i]));
  return r;
}

OmegaArrow lowest_section(const OmegaArrow& sigma) { return inclusion(sigma.target, sigma.source); }

std::optional<DegeneracyWitness> is_degenerate(const DendroidalSet& x, const Tree& t, const Dendrex& y) {
  for (int v = 0; v < t.degree(); ++v) {
    if (t.in(v).size() != 1) continue;
    OmegaArrow s = collapse(t, {t.edge(t.out(v))});
    Dendrex base = x.act(lowest_section(s), y);
    if (x.act(s, base) == y) return DegeneracyWitness{s, base};
  }
  return std::nullopt;
}

std::vector<Dendrex> nondegenerate(const DendroidalSet& x, const Tree& t) {
  std::vector<Dendrex> out;
  for (const auto& y : x.dendrices(t))
    if (!is_degenerate(x, t, y)) out.push_back(y);
  return out;
}

bool in_skeleton(const DendroidalSet& x, int n, const Tree& t, const Dendrex& y) {
  if (t.degree() <= n) return true;
  std::vector<Edge> unary;
  for (int v = 0; v < t.degree(); ++v)
    if (t.in(v).size() == 1) unary.push_back(t.edge(t.out(v)));
  const size_t need = static_cast<size_t>(t.degree() - n);
  if (unary.size() < need) return false;
  for (size_t mask = 0; mask < (size_t{1} << unary.size()); ++mask) {
    if (static_cast<size_t>(__builtin_popcountll(mask)) < need) continue;
    std::set<Edge> u;
    for (size_t j = 0; j < unary.size(); ++j)
      if (mask >> j & 1) u.insert(unary[j]);
    OmegaArrow s = collapse(t, u);
    if (x.act(s, x.act(lowest_section(s), y)) == y) return true;
  }
  return false;
}

std::vector<Dendrex> skeleton_dendrices(const DendroidalSet& x, int n, const Tree& t) {
  std::vector<Dendrex> out;
  for (const auto& y : x.dendrices(t))
    if (in_skeleton(x, n, t, y)) out.push_back(y);
  return out;
}

// ---------------------------------------------------------------- normality

NormalityReport is_normal(const DendroidalSet& x) {
  NormalityReport r;
  for (const auto& t : x.shapes()) {
    auto autos = automorphisms(t);
    for (const auto& y : nondegenerate(x, t)) {
      for (const auto& a : autos) {
        if (a.map == identity(t).map) continue;
        if (x.act(a, y) == y) {
          r.normal = false;
          r.shape = t;
          r.dendrex = y;
          r.automorphism = a;
          return r;
        }
      }
    }
  }
  return r;
}

bool skeletal_pushout_check(const DendroidalSet& x, int n) {
  auto shapes = x.shapes();
  // one nondegenerate dendrex per automorphism orbit, on shapes of degree n
  std::vector<std::pair<Tree, Dendrex>> cells;
  for (const auto& t : shapes) {
    if (t.degree() != n) continue;
    auto autos = automorphisms(t);
    std::set<Dendrex> seen;
    for (const auto& y : nondegenerate(x, t)) {
      if (seen.count(y)) continue;
      for (const auto& a : autos) seen.insert(x.act(a, y));
      cells.push_back({t, y});
    }
  }
  for (const auto& q : shapes) {
    if (q.degree() < n) continue;
    std::set<Dendrex> fresh;
    for (const auto& y : x.dendrices(q))
      if (in_skeleton(x, n, q, y) && !in_skeleton(x, n - 1, q, y)) fresh.insert(y);
    std::set<Dendrex> hit;
    size_t count = 0;
    for (const auto& [t, y] : cells) {
      for (const auto& a : arrows_between(q, t)) {
        Tree f = image_face(a);
        if (f.degree() != t.degree() || f.edge_count() != t.edge_count()) continue;
        hit.insert(x.act(a, y));
        ++count;
      }
    }
    if (count != hit.size() || hit != fresh) return false;
  }
  return true;
}

std::optional<std::string> functoriality_audit(const DendroidalSet& x, int max_degree) {
  std::vector<Tree> shapes;
  for (const auto& t : x.shapes())
    if (t.degree() <= max_degree) shapes.push_back(t);
  for (const auto& t : shapes) {
    OmegaArrow id = identity(t);
    for (const auto& y : x.dendrices(t))
      if (x.act(id, y) != y) return "identity fails on " + t.str();
  }
  for (const auto& u : shapes) {
    const auto& du = x.dendrices(u);
    for (const auto& t : shapes) {
      auto bs = arrows_between(t, u);
      if (bs.empty()) continue;
      const auto& dt = x.dendrices(t);
      std::set<Dendrex> dts(dt.begin(), dt.end());
      for (const auto& s : shapes) {
        auto as = arrows_between(s, t);
        for (const auto& b : bs) {
          for (const auto& y : du) {
            Dendrex by = x.act(b, y);
            if (!dts.count(by)) return "action leaves the set at " + t.str();
            for (const auto& a : as)
              if (x.act(compose(b, a), y) != x.act(a, by))
                return "composite fails on " + s.str() + " -> " + t.str() + " -> " + u.str();
          }
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- json

nlohmann::json dset_to_json(const DendroidalSet& x) {
  auto t = tabulate(x);
  nlohmann::json j;
  j["bound"] = x.bound();
  j["valence"] = x.valence();
  j["kind"] = x.kind();
  j["shapes"] = nlohmann::json::array();
  for (const auto& s : x.shapes()) {
    nlohmann::json e;
    e["code"] = canonical_code(s);
    e["tree"] = tree_to_json(s);
    e["count"] = t->count(canonical_code(s));
    nlohmann::json names = nlohmann::json::array();
    for (const auto& y : x.dendrices(s)) names.push_back(x.show(y));
    e["dendrices"] = names;
    j["shapes"].push_back(e);
  }
  j["actions"] = nlohmann::json::array();
  for (const auto& [key, table] : t->actions()) {
    auto colon = key.rfind(':');
    auto gt = key.find('>');
    nlohmann::json a;
    a["source"] = key.substr(0, gt);
    a["target"] = key.substr(gt + 1, colon - gt - 1);
    std::vector<int> map;
    std::stringstream ss(key.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) map.push_back(std::stoi(tok));
    a["map"] = map;
    a["table"] = table;
    j["actions"].push_back(a);
  }
  return j;
}

std::shared_ptr<DendroidalSet> dset_from_json(const nlohmann::json& j) {
  auto t = std::make_shared<TableSet>(j.at("bound").get<int>(), j.at("valence").get<int>());
  for (const auto& e : j.at("shapes")) t->set_count(tree_from_json(e.at("tree")), e.at("count").get<int>());
  for (const auto& a : j.at("actions")) {
    OmegaArrow arr{tree_from_canonical_code(a.at("source")), tree_from_canonical_code(a.at("target")),
                   a.at("map").get<std::vector<int>>(), {}};
    if (!is_valid(arr)) throw Error("bad-action");
    t->set_action(arr, a.at("table").get<std::vector<int>>());
  }
  return t;
}

}  // namespace dendro
