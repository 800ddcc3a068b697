#include "dendro/kan.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "dendro/parallel.hpp"

namespace dendro {

namespace {

std::vector<Edge> numbered(int n, const std::string& suffix = "") {
  std::vector<Edge> r;
  for (int k = 1; k <= n; ++k) r.push_back(std::to_string(k) + suffix);
  return r;
}

// C_n -> t sending the root to `root` and leaf k to leaves[k-1].
OmegaArrow corolla_arrow(const Tree& t, const Edge& root, const std::vector<Edge>& leaves) {
  Tree c = Tree::corolla(static_cast<int>(leaves.size()));
  std::map<Edge, Edge> m{{"0", root}};
  for (size_t k = 0; k < leaves.size(); ++k) m[std::to_string(k + 1)] = leaves[k];
  return arrow_from_names(c, t, m);
}

OmegaArrow vertex_corolla(const Tree& t, int v) {
  std::vector<Edge> leaves;
  for (int e : t.in(v)) leaves.push_back(t.edge(e));
  return corolla_arrow(t, t.edge(t.out(v)), leaves);
}

// Isomorphisms between a labelled tree and its canonical form.
struct CanonIso {
  Canonical c;
  OmegaArrow from_canon;  // canonical -> shape
  OmegaArrow to_canon;    // shape -> canonical
};

CanonIso canon_iso(const Tree& shape) {
  CanonIso r{canonical_form(shape), {}, {}};
  std::map<Edge, Edge> back;
  for (const auto& [e, ce] : r.c.iso) back[ce] = e;
  r.from_canon = iso_from_names(r.c.tree, shape, back);
  r.to_canon = iso_from_names(shape, r.c.tree, r.c.iso);
  return r;
}

std::vector<Dendrex> restrictions(const DendroidalSet& x, const Sieve& h, const Dendrex& y) {
  std::vector<Dendrex> r;
  for (const auto& m : h.maximal) r.push_back(restrict_to(x, h.tree, y, m));
  return r;
}

}  // namespace

// ---------------------------------------------------------------- Kan checks

KanReport check_inner_kan(const DendroidalSet& x, bool strict, int bound, int valence) {
  if (bound < 0) bound = x.bound();
  if (valence < 0) valence = x.valence();
  std::vector<std::pair<Tree, Edge>> tasks;
  for (const auto& t : enumerate_trees(bound, valence))
    for (const auto& e : t.inner_edges()) tasks.push_back({t, e});

  auto parts = parallel_map(tasks.size(), [&](size_t k) {
    KanReport r;
    const auto& [t, e] = tasks[k];
    Sieve h = horn(t, {e});
    bool in_range = t.degree() <= x.bound() && x.covers(t);
    for (const auto& m : h.maximal) in_range = in_range && x.covers(m);
    if (!in_range) {
      r.skipped = 1;
      return r;
    }
    std::map<std::vector<Dendrex>, size_t> fillers;
    for (const auto& y : x.dendrices(t)) ++fillers[restrictions(x, h, y)];
    for (auto& fam : hom_into(h, x)) {
      ++r.checked_horns;
      auto it = fillers.find(fam);
      size_t n = it == fillers.end() ? 0 : it->second;
      if (n == 0)
        r.failures.push_back({t, e, std::move(fam), 0});
      else if (strict && n > 1)
        r.strictness_failures.push_back({t, e, std::move(fam), n});
    }
    return r;
  });
  KanReport out;
  for (auto& p : parts) {
    out.checked_horns += p.checked_horns;
    out.skipped += p.skipped;
    for (auto& f : p.failures) out.failures.push_back(std::move(f));
    for (auto& f : p.strictness_failures) out.strictness_failures.push_back(std::move(f));
  }
  return out;
}

nlohmann::json kan_report_to_json(const KanReport& r) {
  auto fail = [](const HornFailure& f) {
    return nlohmann::json{{"tree", tree_to_json(f.tree)}, {"edge", f.edge}, {"family", f.family}, {"fillers", f.fillers}};
  };
  nlohmann::json j{{"checked_horns", r.checked_horns},
                   {"skipped", r.skipped},
                   {"inner_kan", r.inner_kan()},
                   {"strict", r.strict()},
                   {"failures", nlohmann::json::array()},
                   {"strictness_failures", nlohmann::json::array()}};
  for (const auto& f : r.failures) j["failures"].push_back(fail(f));
  for (const auto& f : r.strictness_failures) j["strictness_failures"].push_back(fail(f));
  return j;
}

std::vector<Dendrex> fill_horn(const DendroidalSet& x, const Sieve& h, const std::vector<Dendrex>& family) {
  std::vector<Dendrex> out;
  for (const auto& y : x.dendrices(h.tree))
    if (restrictions(x, h, y) == family) out.push_back(y);
  return out;
}

// ---------------------------------------------------------------- corollas

std::vector<Dendrex> corolla_boundary(const DendroidalSet& x, int n, const Dendrex& f) {
  Tree c = Tree::corolla(n);
  std::vector<Dendrex> r;
  for (const auto& e : c.edges()) r.push_back(x.act(edge_face(c, e), f));
  return r;
}

Dendrex identity_dendrex(const DendroidalSet& x, const Dendrex& colour) {
  return x.act(collapse(Tree::corolla(1), {"0"}), colour);
}

HomotopyShape homotopy_shape(int n, int i) {
  if (i < 0 || i > n) throw Error("bad-edge");
  HomotopyShape s;
  s.n = n;
  s.i = i;
  std::vector<Edge> leaves = numbered(n);
  if (i >= 1) {
    const Edge e = std::to_string(i), ep = e + "'";
    s.tree = Tree("0", {{leaves, "0"}, {{ep}, e}});
    s.f_face = corolla_arrow(s.tree, "0", leaves);
    std::vector<Edge> gl = leaves;
    gl[i - 1] = ep;
    s.g_face = corolla_arrow(s.tree, "0", gl);
    s.id_face = corolla_arrow(s.tree, e, {ep});
  } else {
    s.tree = Tree("0'", {{{"0"}, "0'"}, {leaves, "0"}});
    s.f_face = corolla_arrow(s.tree, "0", leaves);
    s.g_face = corolla_arrow(s.tree, "0'", leaves);
    s.id_face = corolla_arrow(s.tree, "0'", {"0"});
  }
  return s;
}

std::optional<Dendrex> homotopic(const DendroidalSet& x, const Dendrex& f, const Dendrex& g, int n, int i) {
  auto bf = corolla_boundary(x, n, f);
  if (bf != corolla_boundary(x, n, g)) throw Error("not-parallel");
  HomotopyShape s = homotopy_shape(n, i);
  Dendrex id = identity_dendrex(x, bf[i]);
  for (const auto& h : x.dendrices(s.tree))
    if (x.act(s.f_face, h) == f && x.act(s.g_face, h) == g && x.act(s.id_face, h) == id) return h;
  return std::nullopt;
}

std::set<std::pair<Dendrex, Dendrex>> homotopy_relation(const DendroidalSet& x, int n, int i) {
  HomotopyShape s = homotopy_shape(n, i);
  OmegaArrow colour = edge_face(Tree::corolla(1), "0");
  std::set<std::pair<Dendrex, Dendrex>> r;
  for (const auto& h : x.dendrices(s.tree)) {
    Dendrex d = x.act(s.id_face, h);
    if (d != identity_dendrex(x, x.act(colour, d))) continue;
    r.insert({x.act(s.f_face, h), x.act(s.g_face, h)});
  }
  return r;
}

CompositionShape composition_shape(int n, int m, int i) {
  if (i < 1 || i > n) throw Error("bad-edge");
  CompositionShape s;
  s.n = n;
  s.m = m;
  s.i = i;
  const Edge e = std::to_string(i);
  std::vector<Edge> fl = numbered(n), gl = numbered(m, "'");
  s.tree = Tree("0", {{fl, "0"}, {gl, e}});
  s.f_face = corolla_arrow(s.tree, "0", fl);
  s.g_face = corolla_arrow(s.tree, e, gl);
  std::vector<Edge> hl(fl.begin(), fl.begin() + (i - 1));
  hl.insert(hl.end(), gl.begin(), gl.end());
  hl.insert(hl.end(), fl.begin() + i, fl.end());
  s.h_face = corolla_arrow(s.tree, "0", hl);
  s.horn = horn(s.tree, {e});
  return s;
}

std::optional<CompositionWitness> composition_witness(const DendroidalSet& x, const Dendrex& f, int n,
                                                      const Dendrex& g, int m, int i) {
  if (i < 1 || i > n) throw Error("not-composable");
  if (corolla_boundary(x, n, f)[i] != corolla_boundary(x, m, g)[0]) throw Error("not-composable");
  CompositionShape s = composition_shape(n, m, i);
  for (const auto& y : x.dendrices(s.tree))
    if (x.act(s.f_face, y) == f && x.act(s.g_face, y) == g) return CompositionWitness{x.act(s.h_face, y), y};
  return std::nullopt;
}

std::map<std::pair<Dendrex, Dendrex>, std::vector<CompositionWitness>> composition_table(const DendroidalSet& x,
                                                                                          int n, int m, int i) {
  CompositionShape s = composition_shape(n, m, i);
  std::map<std::pair<Dendrex, Dendrex>, std::vector<CompositionWitness>> r;
  for (const auto& y : x.dendrices(s.tree))
    r[{x.act(s.f_face, y), x.act(s.g_face, y)}].push_back({x.act(s.h_face, y), y});
  return r;
}

// ---------------------------------------------------------------- Ho(X)

HoOperad ho_operad(const DendroidalSet& x, int max_arity) {
  if (max_arity < 0) max_arity = x.valence();
  HoOperad ho;
  ho.colours = x.dendrices(Tree::eta());
  std::map<Dendrex, ColourId> cid;
  std::vector<std::string> cnames;
  for (size_t c = 0; c < ho.colours.size(); ++c) {
    cid[ho.colours[c]] = static_cast<ColourId>(c);
    cnames.push_back(x.show(ho.colours[c]));
  }
  if (std::set<std::string>(cnames.begin(), cnames.end()).size() != cnames.size())
    for (size_t c = 0; c < cnames.size(); ++c) cnames[c] = "c" + std::to_string(c);

  // classes per arity via union-find over ~_0
  std::vector<OpSpec> specs;
  std::vector<std::pair<int, Dendrex>> reps;
  for (int n = 0; n <= max_arity; ++n) {
    const auto& ds = x.dendrices(Tree::corolla(n));
    std::map<Dendrex, size_t> idx;
    for (size_t k = 0; k < ds.size(); ++k) idx[ds[k]] = k;
    std::vector<size_t> parent(ds.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (const auto& [f, g] : homotopy_relation(x, n, 0)) {
      size_t a = find(idx.at(f)), b = find(idx.at(g));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<size_t, OpId> op_of_root;
    for (size_t k = 0; k < ds.size(); ++k) {
      size_t root = find(k);
      auto it = op_of_root.find(root);
      if (it == op_of_root.end()) {
        OpId id = static_cast<OpId>(specs.size());
        it = op_of_root.emplace(root, id).first;
        auto b = corolla_boundary(x, n, ds[k]);
        OpSpec s{"[" + std::to_string(n) + ":" + std::to_string(k) + "]", {}, cnames[cid.at(b[0])]};
        for (int j = 1; j <= n; ++j) s.inputs.push_back(cnames[cid.at(b[j])]);
        specs.push_back(s);
        reps.push_back({n, ds[k]});
        ho.representative[id] = ds[k];
      }
      ho.class_map[{n, ds[k]}] = it->second;
    }
  }
  ho.op = std::make_shared<TableOperad>(cnames, specs, true);
  auto& op = *ho.op;

  for (size_t c = 0; c < ho.colours.size(); ++c) {
    auto it = ho.class_map.find({1, identity_dendrex(x, ho.colours[c])});
    if (it == ho.class_map.end()) throw Error("arity-bound");
    op.set_unit(cnames[c], specs[it->second].name);
  }

  std::vector<std::vector<OpId>> by_arity(max_arity + 1);
  for (OpId p = 0; p < static_cast<OpId>(reps.size()); ++p) by_arity[reps[p].first].push_back(p);
  for (int n = 1; n <= max_arity; ++n) {
    for (int m = 0; m <= max_arity; ++m) {
      for (int i = 1; i <= n; ++i) {
        std::vector<std::pair<OpId, OpId>> pairs;
        for (OpId p : by_arity[n])
          for (OpId q : by_arity[m])
            if (op.inputs(p)[i - 1] == op.output(q)) pairs.push_back({p, q});
        if (pairs.empty()) continue;
        if (n + m - 1 > max_arity) throw Error("arity-bound");
        auto table = composition_table(x, n, m, i);
        for (auto [p, q] : pairs) {
          auto it = table.find({reps[p].second, reps[q].second});
          if (it == table.end()) throw Error("not-inner-kan");
          op.set_compose(p, i - 1, q, ho.class_map.at({n + m - 1, it->second.front().h}));
        }
      }
    }
  }

  for (int n = 0; n <= max_arity; ++n) {
    Tree c = Tree::corolla(n);
    for (const auto& s : all_perms(n)) {
      std::vector<Edge> leaves;
      for (int k = 0; k < n; ++k) leaves.push_back(std::to_string(s[k] + 1));
      OmegaArrow a = corolla_arrow(c, "0", leaves);
      for (OpId p : by_arity[n]) op.set_act(p, s, ho.class_map.at({n, x.act(a, reps[p].second)}));
    }
  }
  return ho;
}

// ---------------------------------------------------------------- maps

Dendrex apply_map(const DendroidalSet& y, const DendroidalSet& x, const DendrexMap& m, const Tree& shape,
                  const Dendrex& d) {
  CanonIso ci = canon_iso(shape);
  auto it = m.find(canonical_code(shape));
  if (it == m.end()) throw Error("outside-domain");
  return x.act(ci.to_canon, it->second.at(y.act(ci.from_canon, d)));
}

std::optional<std::string> morphism_audit(const DendroidalSet& y, const DendroidalSet& x, const DendrexMap& m,
                                          int max_degree) {
  std::vector<Tree> shapes;
  for (const auto& t : y.shapes())
    if (t.degree() <= max_degree) shapes.push_back(t);
  for (const auto& t : shapes) {
    const auto& dx = x.dendrices(t);
    std::set<Dendrex> xs(dx.begin(), dx.end());
    for (const auto& d : y.dendrices(t))
      if (!xs.count(apply_map(y, x, m, t, d))) return "image outside X at " + t.str();
    for (const auto& s : shapes)
      for (const auto& a : arrows_between(s, t))
        for (const auto& d : y.dendrices(t))
          if (apply_map(y, x, m, s, y.act(a, d)) != x.act(a, apply_map(y, x, m, t, d)))
            return "not natural along " + s.str() + " -> " + t.str();
  }
  return std::nullopt;
}

bool is_bijective(const DendroidalSet& y, const DendroidalSet& x, const DendrexMap& m, int max_degree) {
  for (const auto& t : y.shapes()) {
    if (t.degree() > max_degree) continue;
    std::set<Dendrex> img;
    for (const auto& d : y.dendrices(t)) img.insert(apply_map(y, x, m, t, d));
    const auto& dx = x.dendrices(t);
    if (img.size() != y.dendrices(t).size() || img != std::set<Dendrex>(dx.begin(), dx.end())) return false;
  }
  return true;
}

DendrexMap nerve_map(const Nerve& y, const OperadMap& psi, int max_degree, int max_valence) {
  DendrexMap out;
  for (const auto& t : enumerate_trees(max_degree, max_valence < 0 ? y.valence() : max_valence)) {
    auto& tab = out[canonical_code(t)];
    for (const auto& d : y.dendrices(t)) {
      Dendrex r(d.size());
      for (int e = 0; e < t.edge_count(); ++e) r[e] = psi.colour_map.at(d[e]);
      for (int v = 0; v < t.degree(); ++v) r[t.edge_count() + v] = psi.op_map.at(d[t.edge_count() + v]);
      tab[d] = r;
    }
  }
  return out;
}

DendrexMap unit_map(const DendroidalSet& x, const HoOperad& ho, int max_degree) {
  std::map<Dendrex, ColourId> cid;
  for (size_t c = 0; c < ho.colours.size(); ++c) cid[ho.colours[c]] = static_cast<ColourId>(c);
  DendrexMap out;
  for (const auto& t : x.shapes()) {
    if (t.degree() > max_degree) continue;
    auto& tab = out[canonical_code(t)];
    for (const auto& d : x.dendrices(t)) {
      Dendrex r;
      for (const auto& e : t.edges()) r.push_back(cid.at(x.act(edge_face(t, e), d)));
      for (int v = 0; v < t.degree(); ++v)
        r.push_back(ho.class_map.at({static_cast<int>(t.in(v).size()), x.act(vertex_corolla(t, v), d)}));
      tab[d] = r;
    }
  }
  return out;
}

DendrexMap coskeletal_extend(const DendroidalSet& y, const DendroidalSet& x, const DendrexMap& sk2) {
  DendrexMap out = sk2;
  // filler index per (canonical code, inner edge)
  std::map<std::pair<std::string, Edge>, std::map<std::vector<Dendrex>, std::vector<Dendrex>>> fillers;

  std::function<Dendrex(const Tree&, const Dendrex&)> ext_canon;
  auto ext = [&](const Tree& shape, const Dendrex& d) {
    CanonIso ci = canon_iso(shape);
    return x.act(ci.to_canon, ext_canon(ci.c.tree, y.act(ci.from_canon, d)));
  };
  ext_canon = [&](const Tree& c, const Dendrex& d) -> Dendrex {
    const std::string code = canonical_code(c);
    auto& tab = out[code];
    auto it = tab.find(d);
    if (it != tab.end()) return it->second;
    if (c.degree() <= 2) throw Error("missing-2-skeleton");
    std::optional<Dendrex> result;
    for (const auto& e : c.inner_edges()) {
      Sieve h = horn(c, {e});
      auto& idx = fillers[{code, e}];
      if (idx.empty())
        for (const auto& z : x.dendrices(c)) idx[restrictions(x, h, z)].push_back(z);
      std::vector<Dendrex> fam;
      for (const auto& f : h.maximal) fam.push_back(ext(f, restrict_to(y, c, d, f)));
      auto fit = idx.find(fam);
      if (fit == idx.end() || fit->second.size() != 1) throw Error("requires-strict");
      if (result && *result != fit->second[0]) throw Error("extension-not-unique");
      result = fit->second[0];
    }
    out[code][d] = *result;
    return *result;
  };
  for (const auto& t : y.shapes())
    for (const auto& d : y.dendrices(t)) ext_canon(t, d);
  return out;
}

}  // namespace dendro
