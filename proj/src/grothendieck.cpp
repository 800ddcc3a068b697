#include "dendro/grothendieck.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "dendro/percolation.hpp"

namespace dendro {

// ---------------------------------------------------------------- categories

int CartesianData::product(const std::vector<int>& xs) const {
  int r = top;
  for (int x : xs) r = meet[r][x];
  return r;
}

std::vector<std::string> validate_cartesian(const CartesianData& s) {
  std::vector<std::string> out;
  const int n = s.size();
  if (n == 0) return {"empty"};
  if (static_cast<int>(s.leq.size()) != n || static_cast<int>(s.meet.size()) != n) return {"table-size"};
  for (int a = 0; a < n; ++a)
    if (static_cast<int>(s.leq[a].size()) != n || static_cast<int>(s.meet[a].size()) != n) return {"table-size"};
  if (s.top < 0 || s.top >= n) return {"top-out-of-range"};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (s.meet[a][b] < 0 || s.meet[a][b] >= n) return {"meet-out-of-range"};

  auto name = [&](int a) { return s.objects[a]; };
  for (int a = 0; a < n; ++a) {
    if (!s.leq[a][a]) out.push_back("reflexive: " + name(a));
    if (!s.leq[a][s.top]) out.push_back("terminal: " + name(a));
    for (int b = 0; b < n; ++b) {
      if (a != b && s.leq[a][b] && s.leq[b][a]) out.push_back("antisymmetric: " + name(a) + "," + name(b));
      int m = s.meet[a][b];
      if (!s.leq[m][a] || !s.leq[m][b]) out.push_back("meet-lower: " + name(a) + "," + name(b));
      for (int c = 0; c < n; ++c) {
        if (s.leq[a][b] && s.leq[b][c] && !s.leq[a][c])
          out.push_back("transitive: " + name(a) + "," + name(b) + "," + name(c));
        if (s.leq[c][a] && s.leq[c][b] && !s.leq[c][m])
          out.push_back("meet-greatest: " + name(a) + "," + name(b) + "," + name(c));
      }
    }
  }
  return out;
}

CartesianData terminal_category() { return {{"*"}, {{true}}, {{0}}, 0}; }

CartesianData two_object_category() {
  return {{"0", "1"}, {{true, true}, {false, true}}, {{0, 0}, {0, 1}}, 1};
}

// ---------------------------------------------------------------- operad

CartesianOperad::CartesianOperad(CartesianData s, int max_arity) : s_(std::move(s)), max_arity_(max_arity) {
  auto bad = validate_cartesian(s_);
  if (!bad.empty()) throw Error("not-cartesian");
}

OpId CartesianOperad::intern(const std::vector<ColourId>& in, ColourId out) const {
  std::vector<int> k{out};
  k.insert(k.end(), in.begin(), in.end());
  std::lock_guard<std::mutex> lock(mu_);
  auto it = ids_.find(k);
  if (it != ids_.end()) return it->second;
  OpId id = static_cast<OpId>(out_.size());
  in_.push_back(in);
  out_.push_back(out);
  ids_.emplace(std::move(k), id);
  return id;
}

OpId CartesianOperad::op_for(const std::vector<ColourId>& in, ColourId out) const {
  if (out < 0 || out >= s_.size()) return -1;
  for (ColourId c : in)
    if (c < 0 || c >= s_.size()) return -1;
  if (!s_.leq[s_.product(in)][out]) return -1;
  return intern(in, out);
}

OpId CartesianOperad::unit(ColourId c) const { return intern({c}, c); }

const std::vector<ColourId>& CartesianOperad::inputs(OpId p) const {
  std::lock_guard<std::mutex> lock(mu_);
  return in_[p];
}

ColourId CartesianOperad::output(OpId p) const {
  std::lock_guard<std::mutex> lock(mu_);
  return out_[p];
}

std::string CartesianOperad::op_name(OpId p) const {
  const auto& in = inputs(p);
  std::string r = "(";
  for (size_t k = 0; k < in.size(); ++k) r += (k ? "," : "") + s_.objects[in[k]];
  return r + ";" + s_.objects[output(p)] + ")";
}

std::vector<OpId> CartesianOperad::ops_with(ColourId out, int arity) const {
  std::vector<OpId> r;
  std::vector<ColourId> in(arity, 0);
  const int n = s_.size();
  while (true) {
    if (s_.leq[s_.product(in)][out]) r.push_back(intern(in, out));
    int k = arity - 1;
    while (k >= 0 && in[k] == n - 1) in[k--] = 0;
    if (k < 0) break;
    ++in[k];
  }
  return r;
}

OpId CartesianOperad::compose(OpId p, int i, OpId q) const {
  std::vector<ColourId> pin = inputs(p), qin = inputs(q);
  if (i < 0 || i >= static_cast<int>(pin.size()) || pin[i] != output(q)) return -1;
  std::vector<ColourId> in(pin.begin(), pin.begin() + i);
  in.insert(in.end(), qin.begin(), qin.end());
  in.insert(in.end(), pin.begin() + i + 1, pin.end());
  return intern(in, output(p));
}

OpId CartesianOperad::act(OpId p, const Perm& s) const {
  std::vector<ColourId> pin = inputs(p);
  if (s.size() != pin.size()) return -1;
  std::vector<ColourId> in;
  for (int k : s) in.push_back(pin[k]);
  return intern(in, output(p));
}

std::vector<OpId> CartesianOperad::all_ops() const {
  std::vector<OpId> r;
  for (ColourId c = 0; c < s_.size(); ++c)
    for (int n = 0; n <= max_arity_; ++n)
      for (OpId p : ops_with(c, n)) r.push_back(p);
  std::sort(r.begin(), r.end());
  return r;
}

// ---------------------------------------------------------------- diagrams

DendroidalDiagram constant_diagram(const CartesianData& s, std::shared_ptr<const DendroidalSet> x) {
  DendroidalDiagram d;
  d.component.assign(s.size(), x);
  d.restrict = [](int, int, const Tree&, const Dendrex& y) { return y; };
  return d;
}

DendroidalDiagram nerve_diagram(const CartesianData& s, const std::vector<std::shared_ptr<const Nerve>>& nerves,
                                const std::map<std::pair<int, int>, OperadMap>& maps) {
  if (static_cast<int>(nerves.size()) != s.size()) throw Error("bad-diagram");
  for (int a = 0; a < s.size(); ++a)
    for (int b = 0; b < s.size(); ++b)
      if (a != b && s.leq[a][b] && !maps.count({a, b})) throw Error("bad-diagram");
  DendroidalDiagram d;
  d.component.assign(nerves.begin(), nerves.end());
  d.restrict = [maps](int a, int b, const Tree& shape, const Dendrex& y) {
    if (a == b) return y;
    const OperadMap& m = maps.at({a, b});
    Dendrex r = y;
    const int ne = shape.edge_count();
    for (int i = 0; i < ne; ++i) r[i] = m.colour_map.at(y[i]);
    for (size_t v = ne; v < y.size(); ++v) {
      auto it = m.op_map.find(y[v]);
      if (it == m.op_map.end()) throw Error("unmapped-op");
      r[v] = it->second;
    }
    return r;
  };
  return d;
}

DendroidalDiagram realize(const NerveDiagramSpec& spec, int bound, int valence) {
  std::vector<std::shared_ptr<const Nerve>> nerves;
  for (const auto& p : spec.operads) nerves.push_back(std::make_shared<Nerve>(p, bound, valence));
  return nerve_diagram(spec.category, nerves, spec.maps);
}

std::vector<std::string> validate_spec(const NerveDiagramSpec& spec) {
  std::vector<std::string> out = validate_cartesian(spec.category);
  if (!out.empty()) return out;
  const auto& s = spec.category;
  if (static_cast<int>(spec.operads.size()) != s.size()) return {"one operad per object"};
  for (int a = 0; a < s.size(); ++a)
    for (int b = 0; b < s.size(); ++b) {
      if (a == b || !s.leq[a][b]) continue;
      auto it = spec.maps.find({a, b});
      std::string where = s.objects[a] + "<=" + s.objects[b];
      if (it == spec.maps.end()) {
        out.push_back("missing map " + where);
        continue;
      }
      std::string why;
      if (!is_operad_map(*spec.operads[b], *spec.operads[a], it->second, &why))
        out.push_back("map " + where + ": " + why);
    }
  for (const auto& [k, m] : spec.maps)
    if (k.first == k.second || k.first < 0 || k.second < 0 || k.first >= s.size() || k.second >= s.size() ||
        !s.leq[k.first][k.second])
      out.push_back("map outside the order");
  for (size_t a = 0; a < spec.operads.size(); ++a)
    for (const auto& v : validate(*spec.operads[a])) out.push_back("operad " + s.objects[a] + ": " + v.law);
  return out;
}

nlohmann::json cartesian_to_json(const CartesianData& s) {
  return {{"objects", s.objects}, {"leq", s.leq}, {"meet", s.meet}, {"top", s.top}};
}

CartesianData cartesian_from_json(const nlohmann::json& j) {
  CartesianData s;
  s.objects = j.at("objects").get<std::vector<std::string>>();
  s.leq = j.at("leq").get<std::vector<std::vector<bool>>>();
  s.meet = j.at("meet").get<std::vector<std::vector<int>>>();
  s.top = j.at("top").get<int>();
  return s;
}

nlohmann::json diagram_spec_to_json(const NerveDiagramSpec& spec) {
  nlohmann::json j;
  j["category"] = cartesian_to_json(spec.category);
  j["operads"] = nlohmann::json::array();
  for (const auto& p : spec.operads) j["operads"].push_back(operad_to_json(*p));
  j["maps"] = nlohmann::json::array();
  for (const auto& [k, m] : spec.maps) {
    const auto& p = *spec.operads[k.second];
    const auto& q = *spec.operads[k.first];
    nlohmann::json ops = nlohmann::json::object();
    for (const auto& [x, y] : m.op_map) ops[p.op_name(x)] = q.op_name(y);
    j["maps"].push_back({{"target", k.first}, {"source", k.second}, {"colours", m.colour_map}, {"ops", ops}});
  }
  return j;
}

NerveDiagramSpec diagram_spec_from_json(const nlohmann::json& j) {
  NerveDiagramSpec spec;
  spec.category = cartesian_from_json(j.at("category"));
  for (const auto& o : j.at("operads")) spec.operads.push_back(operad_from_json(o));
  for (const auto& m : j.at("maps")) {
    int a = m.at("target").get<int>(), b = m.at("source").get<int>();
    if (a < 0 || b < 0 || a >= static_cast<int>(spec.operads.size()) || b >= static_cast<int>(spec.operads.size()))
      throw Error("bad-diagram");
    auto p = std::static_pointer_cast<const TableOperad>(spec.operads[b]);
    auto q = std::static_pointer_cast<const TableOperad>(spec.operads[a]);
    OperadMap om;
    om.colour_map = m.at("colours").get<std::vector<ColourId>>();
    for (const auto& [x, y] : m.at("ops").items()) om.op_map[p->op_id(x)] = q->op_id(y.get<std::string>());
    spec.maps[{a, b}] = om;
  }
  return spec;
}

std::optional<std::string> diagram_audit(const CartesianData& s, const DendroidalDiagram& d, int max_degree) {
  const int n = s.size();
  if (static_cast<int>(d.component.size()) != n) return "component count";
  std::vector<Tree> shapes;
  for (const auto& t : d.component[0]->shapes())
    if (t.degree() <= max_degree) shapes.push_back(t);
  auto member = [&](int a, const Tree& t, const Dendrex& y) {
    const auto& ys = d.component[a]->dendrices(t);
    return std::find(ys.begin(), ys.end(), y) != ys.end();
  };
  for (const auto& t : shapes) {
    for (int b = 0; b < n; ++b) {
      for (const auto& y : d.component[b]->dendrices(t)) {
        if (d.restrict(b, b, t, y) != y) return "identity at " + s.objects[b] + " on " + t.str();
        for (int a = 0; a < n; ++a) {
          if (!s.leq[a][b]) continue;
          Dendrex r = d.restrict(a, b, t, y);
          std::string where = s.objects[a] + "<=" + s.objects[b] + " on " + t.str();
          if (!member(a, t, r)) return "not a dendrex: " + where;
          for (int c = 0; c < n; ++c) {
            if (!s.leq[c][a] || c == a) continue;
            if (d.restrict(c, a, t, r) != d.restrict(c, b, t, y))
              return "composition " + s.objects[c] + "<=" + where;
          }
          for (const auto& u : shapes)
            for (const auto& alpha : arrows_between(u, t))
              if (d.component[a]->act(alpha, r) != d.restrict(a, b, u, d.component[b]->act(alpha, y)))
                return "naturality: " + where + " along " + u.str();
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- integral

namespace {

int find_face(const std::vector<Tree>& faces, const Tree& f) {
  const std::string k = face_key(f);
  for (size_t i = 0; i < faces.size(); ++i)
    if (face_key(faces[i]) == k) return static_cast<int>(i);
  throw Error("not-a-face");
}

}  // namespace

IntegralSet::IntegralSet(CartesianData s, DendroidalDiagram d, int bound, int valence)
    : DendroidalSet(bound, valence), s_(std::move(s)), d_(std::move(d)) {
  if (static_cast<int>(d_.component.size()) != s_.size()) throw Error("bad-diagram");
  base_ = std::make_shared<Nerve>(std::make_shared<CartesianOperad>(s_, valence), bound, valence);
}

const IntegralSet::FaceIndex& IntegralSet::face_index(const Tree& shape) const {
  const std::string k = shape.str();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = faces_.find(k);
    if (it != faces_.end()) return it->second;
  }
  FaceIndex fi{all_faces(shape), {}};
  for (size_t i = 0; i < fi.faces.size(); ++i) fi.position[face_key(fi.faces[i])] = static_cast<int>(i);
  std::lock_guard<std::mutex> lock(mu_);
  return faces_.emplace(k, std::move(fi)).first->second;
}

const std::vector<Tree>& IntegralSet::faces_of(const Tree& shape) const { return face_index(shape).faces; }

int IntegralSet::in_object(const Tree& shape, const Dendrex& t) const {
  std::vector<int> cs;
  for (int l : shape.leaf_indices()) cs.push_back(t[l]);
  return s_.product(cs);
}

Dendrex IntegralSet::project(const Dendrex& y) const { return Dendrex(y.begin() + 1, y.begin() + 1 + y[0]); }

Dendrex IntegralSet::value_at(const Tree& shape, const Dendrex& y, const Tree& face) const {
  const auto& index = face_index(shape).position;
  auto it = index.find(face_key(face));
  if (it == index.end()) throw Error("not-a-face");
  const int want = it->second;
  size_t pos = 1 + y[0];
  for (int i = 0; i < want; ++i) pos += 1 + y[pos];
  return Dendrex(y.begin() + pos + 1, y.begin() + pos + 1 + y[pos]);
}

Dendrex IntegralSet::encode(const Tree& shape, const Dendrex& t, const std::map<std::string, Dendrex>& x) const {
  Dendrex r{static_cast<int>(t.size())};
  r.insert(r.end(), t.begin(), t.end());
  for (const auto& f : faces_of(shape)) {
    const Dendrex& v = x.at(face_key(f));
    r.push_back(static_cast<int>(v.size()));
    r.insert(r.end(), v.begin(), v.end());
  }
  return r;
}

std::vector<Dendrex> IntegralSet::compute(const Tree& shape) const {
  const auto& faces = faces_of(shape);
  const size_t nf = faces.size();
  std::vector<int> order(nf);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::make_pair(faces[a].degree(), faces[a].edge_count()) <
           std::make_pair(faces[b].degree(), faces[b].edge_count());
  });
  // maximal proper faces of each face, with their inclusions
  std::vector<std::vector<std::pair<int, OmegaArrow>>> below(nf);
  std::vector<OmegaArrow> incl(nf);
  for (size_t i = 0; i < nf; ++i) {
    incl[i] = inclusion(faces[i], shape);
    if (faces[i].is_eta()) continue;
    for (const auto& g : boundary(faces[i]).maximal)
      below[i].push_back({find_face(faces, g), inclusion(g, faces[i])});
  }

  std::vector<Dendrex> out;
  for (const auto& t : base_->dendrices(shape)) {
    std::vector<int> obj(nf);
    for (size_t i = 0; i < nf; ++i) obj[i] = in_object(faces[i], base_->act(incl[i], t));
    std::vector<Dendrex> x(nf);
    std::function<void(size_t)> go = [&](size_t k) {
      if (k == nf) {
        std::map<std::string, Dendrex> m;
        for (size_t i = 0; i < nf; ++i) m[face_key(faces[i])] = x[i];
        out.push_back(encode(shape, t, m));
        return;
      }
      int i = order[k];
      const auto& comp = *d_.component[obj[i]];
      std::vector<Dendrex> want;
      for (const auto& [j, a] : below[i]) {
        if (!s_.leq[obj[i]][obj[j]]) throw Error("bad-in-order");
        want.push_back(d_.restrict(obj[i], obj[j], faces[j], x[j]));
      }
      for (const auto& y : comp.dendrices(faces[i])) {
        bool ok = true;
        for (size_t w = 0; w < below[i].size() && ok; ++w) ok = comp.act(below[i][w].second, y) == want[w];
        if (!ok) continue;
        x[i] = y;
        go(k + 1);
      }
    };
    go(0);
  }
  return out;
}

Dendrex IntegralSet::act(const OmegaArrow& a, const Dendrex& y) const {
  const Tree& u = a.source;
  const Tree& t = a.target;
  Dendrex tt = project(y);
  Dendrex tu = base_->act(a, tt);
  std::map<std::string, Dendrex> m;
  for (const auto& g : faces_of(u)) {
    OmegaArrow beta = compose(a, inclusion(g, u));
    Tree f = image_face(beta);
    OmegaArrow rho{g, f, {}, {}};
    for (int e : beta.map) rho.map.push_back(f.index(t.edge(e)));
    int obj = in_object(f, base_->act(inclusion(f, t), tt));
    m[face_key(g)] = d_.component[obj]->act(rho, value_at(t, y, f));
  }
  return encode(u, tu, m);
}

bool IntegralSet::components_kan() const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (components_kan_) return *components_kan_;
  }
  bool ok = true;
  std::set<const DendroidalSet*> seen;
  for (const auto& c : d_.component) {
    if (!seen.insert(c.get()).second) continue;
    if (!check_inner_kan(*c, false, bound(), valence()).inner_kan()) {
      ok = false;
      break;
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  components_kan_ = ok;
  return ok;
}

std::shared_ptr<IntegralSet> integrate(const DendroidalDiagram& d, const CartesianData& s, int bound, int valence) {
  return std::make_shared<IntegralSet>(s, d, bound, valence);
}

Dendrex integrate_fill_horn(const IntegralSet& x, const Sieve& horn, const std::vector<Dendrex>& family) {
  const Tree& t = horn.tree;
  if (family.size() != horn.maximal.size()) throw Error("bad-family");
  std::set<std::string> have;
  for (const auto& r : horn.maximal) have.insert(face_key(r));
  std::optional<Edge> e;
  for (const auto& c : t.inner_edges()) {
    std::set<std::string> ks;
    for (const auto& r : dendro::horn(t, {c}).maximal) ks.insert(face_key(r));
    if (ks == have) e = c;
  }
  if (!e) throw Error("bad-horn-spec");
  if (!x.components_kan()) throw Error("component-not-kan");

  std::vector<Dendrex> proj;
  for (const auto& y : family) proj.push_back(x.project(y));
  auto ts = fill_horn(x.base(), horn, proj);
  if (ts.size() != 1) throw Error("base-not-strict");
  const Dendrex& tt = ts[0];
  const int in_t = x.in_object(t, tt);

  // pull the top values back to X(in(t)) and fill there
  std::vector<Dendrex> z;
  for (size_t k = 0; k < family.size(); ++k) {
    const Tree& r = horn.maximal[k];
    int obj_r = x.in_object(r, x.project(family[k]));
    z.push_back(x.diagram().restrict(in_t, obj_r, r, x.value_at(r, family[k], r)));
  }
  const auto& comp = *x.diagram().component[in_t];
  auto us = fill_horn(comp, horn, z);
  if (us.empty()) throw Error("component-not-kan");
  const Dendrex& u = us[0];

  const Tree te = contract(t, {*e});
  const std::string kt = face_key(t), kte = face_key(te);
  std::map<std::string, Dendrex> m;
  for (const auto& f : x.faces_of(t)) {
    std::string k = face_key(f);
    if (k == kt) {
      m[k] = u;
    } else if (k == kte) {
      m[k] = comp.act(inclusion(te, t), u);
    } else {
      bool found = false;
      for (size_t j = 0; j < horn.maximal.size() && !found; ++j) {
        if (!is_subface(f, horn.maximal[j])) continue;
        m[k] = x.value_at(horn.maximal[j], family[j], f);
        found = true;
      }
      if (!found) throw Error("bad-horn-spec");
    }
  }
  return x.encode(t, tt, m);
}

}  // namespace dendro
