#include "dendro/operad.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "dendro/omega.hpp"

namespace dendro {

ColourId ColoredOperad::colour_id(const std::string& name) const {
  for (int c = 0; c < colour_count(); ++c)
    if (colour_name(c) == name) return c;
  throw Error("unknown-colour");
}

// ---------------------------------------------------------------- tables

TableOperad::TableOperad(std::vector<std::string> colours, std::vector<OpSpec> ops, bool symmetric)
    : colours_(std::move(colours)), symmetric_(symmetric) {
  std::unordered_map<std::string, ColourId> cid;
  for (int c = 0; c < static_cast<int>(colours_.size()); ++c)
    if (!cid.emplace(colours_[c], c).second) throw Error("duplicate-colour");
  for (const auto& o : ops) {
    Op op{o.name, {}, -1};
    auto col = [&](const std::string& n) {
      auto it = cid.find(n);
      if (it == cid.end()) throw Error("unknown-colour");
      return it->second;
    };
    for (const auto& x : o.inputs) op.in.push_back(col(x));
    op.out = col(o.output);
    if (!by_name_.emplace(o.name, static_cast<int>(ops_.size())).second) throw Error("duplicate-op");
    max_arity_ = std::max<int>(max_arity_, static_cast<int>(op.in.size()));
    by_out_arity_[{op.out, static_cast<int>(op.in.size())}].push_back(static_cast<int>(ops_.size()));
    ops_.push_back(std::move(op));
  }
  units_.assign(colours_.size(), -1);
  act_.resize(ops_.size());
  if (symmetric_)
    for (size_t p = 0; p < ops_.size(); ++p) act_[p].assign(factorial(static_cast<int>(ops_[p].in.size())), -1);
}

OpId TableOperad::op_id(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw Error("unknown-op");
  return it->second;
}

void TableOperad::set_unit(const std::string& colour, const std::string& op) { units_[colour_id(colour)] = op_id(op); }

uint64_t TableOperad::key(OpId p, int i, OpId q) const {
  return (static_cast<uint64_t>(p) * (max_arity_ + 1) + i) * ops_.size() + q;
}

void TableOperad::set_compose(OpId p, int i, OpId q, OpId r) { compose_[key(p, i, q)] = r; }

void TableOperad::set_compose(const std::string& p, int i, const std::string& q, const std::string& r) {
  set_compose(op_id(p), i, op_id(q), op_id(r));
}

void TableOperad::set_act(OpId p, const Perm& s, OpId r) {
  if (!symmetric_) throw Error("planar-operad");
  if (static_cast<int>(s.size()) != arity(p)) throw Error("bad-permutation");
  act_[p][perm_rank(s)] = r;
}

void TableOperad::set_act(const std::string& p, const Perm& s, const std::string& r) { set_act(op_id(p), s, op_id(r)); }

std::vector<OpId> TableOperad::ops_with(ColourId out, int arity) const {
  auto it = by_out_arity_.find({out, arity});
  return it == by_out_arity_.end() ? std::vector<OpId>{} : it->second;
}

OpId TableOperad::compose(OpId p, int i, OpId q) const {
  if (i < 0 || i >= arity(p) || ops_[p].in[i] != ops_[q].out) return -1;
  auto it = compose_.find(key(p, i, q));
  if (it != compose_.end()) return it->second;
  // unit laws fill entries that were not given explicitly
  if (units_[ops_[q].out] == p) return q;
  if (units_[ops_[q].out] == q) return p;
  return -1;
}

OpId TableOperad::act(OpId p, const Perm& s) const {
  if (static_cast<int>(s.size()) != arity(p)) return -1;
  if (!symmetric_) return is_identity(s) ? p : -1;
  OpId r = act_[p][perm_rank(s)];
  if (r < 0 && is_identity(s)) return p;
  return r;
}

std::vector<OpId> TableOperad::all_ops() const {
  std::vector<OpId> r(ops_.size());
  std::iota(r.begin(), r.end(), 0);
  return r;
}

// ---------------------------------------------------------------- Omega(T)

OmegaOperad::OmegaOperad(Tree t, bool planar) : tree_(std::move(t)), planar_(planar) {
  SubtreeIndex idx(tree_);
  subtrees_ = std::move(idx.by_size);
}

OpId OmegaOperad::intern(const std::vector<ColourId>& in, ColourId out) const {
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

bool OmegaOperad::admissible(const std::vector<ColourId>& in, ColourId out) const {
  if (in.size() == 1 && in[0] == out) return true;
  if (in.size() >= subtrees_[out].size()) return false;
  std::vector<int> sorted = in;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& leaves : subtrees_[out][in.size()]) {
    if (planar_) {
      if (leaves == in) return true;
    } else {
      std::vector<int> s = leaves;
      std::sort(s.begin(), s.end());
      if (s == sorted) return true;
    }
  }
  return false;
}

OpId OmegaOperad::op_for(const Signature& sig) const {
  if (!tree_.has_edge(sig.output)) return -1;
  std::vector<ColourId> in;
  for (const auto& e : sig.inputs) {
    if (!tree_.has_edge(e)) return -1;
    in.push_back(tree_.index(e));
  }
  ColourId out = tree_.index(sig.output);
  if (!admissible(in, out)) return -1;
  return intern(in, out);
}

Signature OmegaOperad::signature(OpId p) const {
  Signature s;
  for (ColourId c : inputs(p)) s.inputs.push_back(tree_.edge(c));
  s.output = tree_.edge(output(p));
  return s;
}

OpId OmegaOperad::unit(ColourId c) const { return intern({c}, c); }

const std::vector<ColourId>& OmegaOperad::inputs(OpId p) const {
  std::lock_guard<std::mutex> lock(mu_);
  return in_[p];
}

ColourId OmegaOperad::output(OpId p) const {
  std::lock_guard<std::mutex> lock(mu_);
  return out_[p];
}

std::string OmegaOperad::op_name(OpId p) const {
  const auto& in = inputs(p);
  ColourId out = output(p);
  if (in.size() == 1 && in[0] == out) return "1_" + tree_.edge(out);
  std::string s = "(";
  for (size_t k = 0; k < in.size(); ++k) s += (k ? "," : "") + tree_.edge(in[k]);
  return s + ";" + tree_.edge(out) + ")";
}

std::vector<OpId> OmegaOperad::ops_with(ColourId out, int arity) const {
  std::vector<OpId> r;
  if (arity == 1) r.push_back(unit(out));
  if (arity >= static_cast<int>(subtrees_[out].size())) return r;
  for (const auto& leaves : subtrees_[out][arity]) {
    if (planar_) {
      r.push_back(intern(leaves, out));
      continue;
    }
    for (const auto& s : all_perms(arity)) {
      std::vector<ColourId> in;
      for (int k = 0; k < arity; ++k) in.push_back(leaves[s[k]]);
      r.push_back(intern(in, out));
    }
  }
  return r;
}

OpId OmegaOperad::compose(OpId p, int i, OpId q) const {
  std::vector<ColourId> pin = inputs(p), qin = inputs(q);
  ColourId pout = output(p), qout = output(q);
  if (i < 0 || i >= static_cast<int>(pin.size()) || pin[i] != qout) return -1;
  if (pin.size() == 1 && pin[0] == pout) return q;
  if (qin.size() == 1 && qin[0] == qout) return p;
  std::vector<ColourId> in(pin.begin(), pin.begin() + i);
  in.insert(in.end(), qin.begin(), qin.end());
  in.insert(in.end(), pin.begin() + i + 1, pin.end());
  return intern(in, pout);
}

OpId OmegaOperad::act(OpId p, const Perm& s) const {
  std::vector<ColourId> pin = inputs(p);
  if (s.size() != pin.size()) return -1;
  if (is_identity(s)) return p;
  if (planar_) return -1;
  std::vector<ColourId> in;
  for (int k : s) in.push_back(pin[k]);
  return intern(in, output(p));
}

std::vector<OpId> OmegaOperad::all_ops() const {
  std::vector<OpId> r;
  for (int o = 0; o < tree_.edge_count(); ++o)
    for (int n = 0; n < std::max<int>(2, static_cast<int>(subtrees_[o].size())); ++n)
      for (OpId p : ops_with(o, n)) r.push_back(p);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

// ---------------------------------------------------------------- axioms

namespace {

std::string perm_str(const Perm& s) {
  std::string r = "[";
  for (size_t k = 0; k < s.size(); ++k) r += (k ? "," : "") + std::to_string(s[k]);
  return r + "]";
}

}  // namespace

std::vector<Violation> validate(const ColoredOperad& p) {
  std::vector<Violation> out;
  auto name = [&](OpId x) { return x < 0 ? std::string("<undefined>") : p.op_name(x); };
  auto report = [&](const char* law, const std::string& d) { out.push_back({law, d}); };

  const auto ops = p.all_ops();
  std::map<ColourId, std::vector<OpId>> by_output;
  for (OpId x : ops) by_output[p.output(x)].push_back(x);

  for (int c = 0; c < p.colour_count(); ++c) {
    OpId u = p.unit(c);
    if (u < 0) {
      report("unit-missing", p.colour_name(c));
      continue;
    }
    if (p.inputs(u) != std::vector<ColourId>{c} || p.output(u) != c) report("unit-typing", p.colour_name(c));
  }

  auto typed = [&](OpId x, OpId y, int i, OpId r) {
    std::vector<ColourId> in(p.inputs(x).begin(), p.inputs(x).begin() + i);
    in.insert(in.end(), p.inputs(y).begin(), p.inputs(y).end());
    in.insert(in.end(), p.inputs(x).begin() + i + 1, p.inputs(x).end());
    return p.inputs(r) == in && p.output(r) == p.output(x);
  };

  // composition table: defined exactly on matching colours, well typed
  for (OpId x : ops)
    for (int i = 0; i < p.arity(x); ++i)
      for (OpId y : ops) {
        OpId r = p.compose(x, i, y);
        bool match = p.inputs(x)[i] == p.output(y);
        if (!match) {
          if (r >= 0) report("compose-colour", name(x) + " o" + std::to_string(i) + " " + name(y));
          continue;
        }
        if (r < 0) {
          report("compose-missing", name(x) + " o" + std::to_string(i) + " " + name(y));
          continue;
        }
        if (!typed(x, y, i, r)) report("compose-typing", name(x) + " o" + std::to_string(i) + " " + name(y));
      }
  if (!out.empty()) return out;  // later laws assume a total, well-typed table

  for (OpId x : ops) {
    OpId u = p.unit(p.output(x));
    if (p.compose(u, 0, x) != x) report("unit-left", name(x));
    for (int i = 0; i < p.arity(x); ++i)
      if (p.compose(x, i, p.unit(p.inputs(x)[i])) != x) report("unit-right", name(x) + " at " + std::to_string(i));
  }

  for (OpId x : ops)
    for (int i = 0; i < p.arity(x); ++i)
      for (OpId y : by_output[p.inputs(x)[i]]) {
        OpId xy = p.compose(x, i, y);
        const int m = p.arity(y);
        // sequential
        for (int j = 0; j < m; ++j)
          for (OpId z : by_output[p.inputs(y)[j]]) {
            OpId lhs = p.compose(xy, i + j, z);
            OpId rhs = p.compose(x, i, p.compose(y, j, z));
            if (lhs != rhs)
              report("assoc-sequential", name(x) + " o" + std::to_string(i) + " (" + name(y) + " o" +
                                             std::to_string(j) + " " + name(z) + ")");
          }
        // parallel
        for (int j = i + 1; j < p.arity(x); ++j)
          for (OpId z : by_output[p.inputs(x)[j]]) {
            OpId lhs = p.compose(xy, j + m - 1, z);
            OpId rhs = p.compose(p.compose(x, j, z), i, y);
            if (lhs != rhs)
              report("assoc-parallel", name(x) + " o" + std::to_string(i) + " " + name(y) + ", o" +
                                           std::to_string(j) + " " + name(z));
          }
      }

  if (!p.symmetric()) return out;

  for (OpId x : ops) {
    const int n = p.arity(x);
    auto perms = all_perms(n);
    for (const auto& s : perms) {
      OpId xs = p.act(x, s);
      if (xs < 0) {
        report("act-missing", name(x) + " . " + perm_str(s));
        continue;
      }
      bool ok = p.output(xs) == p.output(x);
      for (int k = 0; k < n && ok; ++k) ok = p.inputs(xs)[k] == p.inputs(x)[s[k]];
      if (!ok) report("act-typing", name(x) + " . " + perm_str(s));
    }
  }
  if (!out.empty()) return out;

  for (OpId x : ops) {
    const int n = p.arity(x);
    auto perms = all_perms(n);
    if (p.act(x, identity_perm(n)) != x) report("act-identity", name(x));
    for (const auto& s : perms)
      for (const auto& t : perms)
        if (p.act(p.act(x, s), t) != p.act(x, compose_perm(s, t)))
          report("act-composition", name(x) + " . " + perm_str(s) + " . " + perm_str(t));
    for (const auto& s : perms) {
      OpId xs = p.act(x, s);
      for (int i = 0; i < n; ++i)
        for (OpId y : by_output[p.inputs(xs)[i]]) {
          OpId lhs = p.compose(xs, i, y);
          OpId rhs = p.act(p.compose(x, s[i], y), block_sigma(s, i, p.arity(y)));
          if (lhs != rhs) report("equivariance-left", "(" + name(x) + " . " + perm_str(s) + ") o" + std::to_string(i) + " " + name(y));
        }
    }
    for (int i = 0; i < n; ++i)
      for (OpId y : by_output[p.inputs(x)[i]])
        for (const auto& t : all_perms(p.arity(y))) {
          OpId lhs = p.compose(x, i, p.act(y, t));
          OpId rhs = p.act(p.compose(x, i, y), block_tau(n, i, t));
          if (lhs != rhs) report("equivariance-right", name(x) + " o" + std::to_string(i) + " (" + name(y) + " . " + perm_str(t) + ")");
        }
  }
  return out;
}

bool sigma_free(const ColoredOperad& p) {
  if (!p.symmetric()) return true;
  for (OpId x : p.all_ops())
    for (const auto& s : all_perms(p.arity(x)))
      if (!is_identity(s) && p.act(x, s) == x) return false;
  return true;
}

std::shared_ptr<TableOperad> to_table(const ColoredOperad& p) {
  std::vector<std::string> colours;
  for (int c = 0; c < p.colour_count(); ++c) colours.push_back(p.colour_name(c));
  const auto ops = p.all_ops();
  std::vector<OpSpec> specs;
  for (OpId x : ops) {
    OpSpec s{p.op_name(x), {}, p.colour_name(p.output(x))};
    for (ColourId c : p.inputs(x)) s.inputs.push_back(p.colour_name(c));
    specs.push_back(s);
  }
  auto t = std::make_shared<TableOperad>(colours, specs, p.symmetric());
  std::map<OpId, OpId> pos;
  for (size_t k = 0; k < ops.size(); ++k) pos[ops[k]] = static_cast<OpId>(k);
  for (int c = 0; c < p.colour_count(); ++c) t->set_unit(colours[c], p.op_name(p.unit(c)));
  for (OpId x : ops)
    for (int i = 0; i < p.arity(x); ++i)
      for (OpId y : ops) {
        OpId r = p.compose(x, i, y);
        if (r >= 0) t->set_compose(pos.at(x), i, pos.at(y), pos.at(r));
      }
  if (p.symmetric())
    for (OpId x : ops)
      for (const auto& s : all_perms(p.arity(x))) {
        OpId r = p.act(x, s);
        if (r >= 0) t->set_act(pos.at(x), s, pos.at(r));
      }
  return t;
}

std::shared_ptr<TableOperad> symmetrize(const ColoredOperad& planar) {
  if (planar.symmetric()) throw Error("already-symmetric");
  std::vector<std::string> colours;
  for (int c = 0; c < planar.colour_count(); ++c) colours.push_back(planar.colour_name(c));
  const auto base = planar.all_ops();
  std::map<std::pair<OpId, int>, int> id;  // (planar op, perm rank) -> new id
  std::vector<OpSpec> specs;
  auto nm = [&](OpId x, const Perm& s) {
    return is_identity(s) ? planar.op_name(x) : planar.op_name(x) + "." + perm_str(s);
  };
  for (OpId x : base)
    for (const auto& s : all_perms(planar.arity(x))) {
      OpSpec o{nm(x, s), {}, planar.colour_name(planar.output(x))};
      for (int k : s) o.inputs.push_back(planar.colour_name(planar.inputs(x)[k]));
      id[{x, perm_rank(s)}] = static_cast<int>(specs.size());
      specs.push_back(o);
    }
  auto t = std::make_shared<TableOperad>(colours, specs, true);
  for (int c = 0; c < planar.colour_count(); ++c) t->set_unit(colours[c], planar.op_name(planar.unit(c)));
  for (OpId x : base) {
    const int n = planar.arity(x);
    for (const auto& s : all_perms(n)) {
      const int xs = id.at({x, perm_rank(s)});
      for (const auto& u : all_perms(n)) t->set_act(xs, u, id.at({x, perm_rank(compose_perm(s, u))}));
      for (int i = 0; i < n; ++i)
        for (OpId y : base) {
          OpId r = planar.compose(x, s[i], y);
          if (r < 0) continue;
          const int m = planar.arity(y);
          for (const auto& tau : all_perms(m)) {
            Perm rho = compose_perm(block_sigma(s, i, m), block_tau(n, i, tau));
            t->set_compose(xs, i, id.at({y, perm_rank(tau)}), id.at({r, perm_rank(rho)}));
          }
        }
    }
  }
  return t;
}

// ---------------------------------------------------------------- maps

bool is_operad_map(const ColoredOperad& p, const ColoredOperad& q, const OperadMap& f, std::string* why) {
  auto fail = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  if (static_cast<int>(f.colour_map.size()) != p.colour_count()) return fail("colour-map-size");
  const auto ops = p.all_ops();
  auto img = [&](OpId x) {
    auto it = f.op_map.find(x);
    return it == f.op_map.end() ? -1 : it->second;
  };
  for (OpId x : ops) {
    OpId y = img(x);
    if (y < 0) return fail("op-unmapped " + p.op_name(x));
    if (q.output(y) != f.colour_map[p.output(x)] || q.arity(y) != p.arity(x)) return fail("op-typing " + p.op_name(x));
    for (int k = 0; k < p.arity(x); ++k)
      if (q.inputs(y)[k] != f.colour_map[p.inputs(x)[k]]) return fail("op-typing " + p.op_name(x));
  }
  for (int c = 0; c < p.colour_count(); ++c)
    if (img(p.unit(c)) != q.unit(f.colour_map[c])) return fail("unit " + p.colour_name(c));
  for (OpId x : ops)
    for (int i = 0; i < p.arity(x); ++i)
      for (OpId y : ops) {
        OpId r = p.compose(x, i, y);
        if (r < 0) continue;
        if (img(r) != q.compose(img(x), i, img(y))) return fail("compose " + p.op_name(x) + " o" + std::to_string(i) + " " + p.op_name(y));
      }
  if (p.symmetric()) {
    if (!q.symmetric()) return fail("planar-target");
    for (OpId x : ops)
      for (const auto& s : all_perms(p.arity(x)))
        if (img(p.act(x, s)) != q.act(img(x), s)) return fail("act " + p.op_name(x));
  }
  return true;
}

namespace {

// Backtracking search for operad maps. Units are fixed by the colour map;
// other ops are branched in an order that puts generators first, and
// every assignment is propagated through composition and the action.
class HomSearch {
 public:
  HomSearch(const ColoredOperad& p, const ColoredOperad& q, bool injective)
      : p_(p), q_(q), injective_(injective), ops_(p.all_ops()) {
    for (size_t k = 0; k < ops_.size(); ++k) pos_[ops_[k]] = static_cast<int>(k);
    std::vector<char> derived(ops_.size(), 0);
    for (OpId x : ops_) {
      if (p_.is_unit(x)) continue;
      for (int i = 0; i < p_.arity(x); ++i)
        for (OpId y : ops_) {
          if (p_.is_unit(y)) continue;
          OpId r = p_.compose(x, i, y);
          if (r >= 0) derived[pos_.at(r)] = 1;
        }
      if (p_.symmetric())
        for (const auto& s : all_perms(p_.arity(x))) {
          OpId r = p_.act(x, s);
          if (r > x) derived[pos_.at(r)] = 1;
        }
    }
    for (size_t k = 0; k < ops_.size(); ++k)
      if (!derived[k]) order_.push_back(static_cast<int>(k));
    for (size_t k = 0; k < ops_.size(); ++k)
      if (derived[k]) order_.push_back(static_cast<int>(k));
  }

  void run(const std::function<bool(const OperadMap&)>& emit) {
    emit_ = emit;
    stop_ = false;
    colour_.assign(p_.colour_count(), -1);
    colours(0);
  }

 private:
  void colours(int c) {
    if (stop_) return;
    if (c == p_.colour_count()) {
      img_.assign(ops_.size(), -1);
      used_.clear();
      std::vector<int> trail;
      bool ok = true;
      for (int d = 0; d < p_.colour_count() && ok; ++d) ok = assign(pos_.at(p_.unit(d)), q_.unit(colour_[d]), trail);
      if (ok) ops(0);
      return;
    }
    for (int d = 0; d < q_.colour_count(); ++d) {
      if (injective_ && std::find(colour_.begin(), colour_.begin() + c, d) != colour_.begin() + c) continue;
      colour_[c] = d;
      colours(c + 1);
      if (stop_) return;
    }
    colour_[c] = -1;
  }

  void undo(std::vector<int>& trail) {
    for (int k : trail) {
      used_.erase(img_[k]);
      img_[k] = -1;
    }
    trail.clear();
  }

  bool typed(int k, OpId y) const {
    OpId x = ops_[k];
    if (q_.arity(y) != p_.arity(x) || q_.output(y) != colour_[p_.output(x)]) return false;
    for (int j = 0; j < p_.arity(x); ++j)
      if (q_.inputs(y)[j] != colour_[p_.inputs(x)[j]]) return false;
    return true;
  }

  // Assign op k -> y and everything it forces; false on contradiction.
  bool assign(int k0, OpId y0, std::vector<int>& trail) {
    std::vector<std::pair<int, OpId>> work{{k0, y0}};
    while (!work.empty()) {
      auto [k, y] = work.back();
      work.pop_back();
      if (y < 0) return false;
      if (img_[k] >= 0) {
        if (img_[k] != y) return false;
        continue;
      }
      if (!typed(k, y)) return false;
      if (injective_ && used_.count(y)) return false;
      img_[k] = y;
      used_.insert(y);
      trail.push_back(k);
      OpId x = ops_[k];
      for (size_t l = 0; l < ops_.size(); ++l) {
        if (img_[l] < 0) continue;
        OpId z = ops_[l];
        for (int i = 0; i < p_.arity(x); ++i) {
          OpId r = p_.compose(x, i, z);
          if (r >= 0) work.push_back({pos_.at(r), q_.compose(y, i, img_[l])});
        }
        for (int i = 0; i < p_.arity(z); ++i) {
          OpId r = p_.compose(z, i, x);
          if (r >= 0) work.push_back({pos_.at(r), q_.compose(img_[l], i, y)});
        }
      }
      if (p_.symmetric()) {
        if (!q_.symmetric()) return false;
        for (const auto& s : all_perms(p_.arity(x))) work.push_back({pos_.at(p_.act(x, s)), q_.act(y, s)});
      }
    }
    return true;
  }

  void ops(size_t at) {
    if (stop_) return;
    while (at < order_.size() && img_[order_[at]] >= 0) ++at;
    if (at == order_.size()) {
      OperadMap f{colour_, {}};
      for (size_t k = 0; k < ops_.size(); ++k) f.op_map[ops_[k]] = img_[k];
      if (!emit_(f)) stop_ = true;
      return;
    }
    const int k = order_[at];
    OpId x = ops_[k];
    for (OpId y : q_.ops_with(colour_[p_.output(x)], p_.arity(x))) {
      if (!typed(k, y)) continue;
      std::vector<int> trail;
      if (assign(k, y, trail)) ops(at + 1);
      undo(trail);
      if (stop_) return;
    }
  }

  const ColoredOperad& p_;
  const ColoredOperad& q_;
  bool injective_;
  std::vector<OpId> ops_;
  std::map<OpId, int> pos_;
  std::vector<int> order_;
  std::vector<ColourId> colour_;
  std::vector<OpId> img_;
  std::set<OpId> used_;
  std::function<bool(const OperadMap&)> emit_;
  bool stop_ = false;
};

}  // namespace

std::vector<OperadMap> hom_operads(const ColoredOperad& p, const ColoredOperad& q, size_t limit) {
  std::vector<OperadMap> out;
  HomSearch h(p, q, false);
  h.run([&](const OperadMap& f) {
    out.push_back(f);
    return limit == 0 || out.size() < limit;
  });
  return out;
}

std::optional<OperadMap> find_isomorphism(const ColoredOperad& p, const ColoredOperad& q) {
  if (p.colour_count() != q.colour_count() || p.symmetric() != q.symmetric()) return std::nullopt;
  if (p.all_ops().size() != q.all_ops().size()) return std::nullopt;
  std::optional<OperadMap> r;
  HomSearch h(p, q, true);
  h.run([&](const OperadMap& f) {
    r = f;
    return false;
  });
  return r;
}

// ---------------------------------------------------------------- json

std::shared_ptr<TableOperad> operad_from_json(const nlohmann::json& j) {
  std::vector<std::string> colours = j.at("colours").get<std::vector<std::string>>();
  std::vector<OpSpec> ops;
  for (const auto& o : j.at("ops"))
    ops.push_back({o.at("name").get<std::string>(), o.at("inputs").get<std::vector<std::string>>(),
                   o.at("output").get<std::string>()});
  auto t = std::make_shared<TableOperad>(colours, ops, j.value("symmetric", true));
  for (auto it = j.at("units").begin(); it != j.at("units").end(); ++it) t->set_unit(it.key(), it.value().get<std::string>());
  if (j.contains("compose"))
    for (const auto& c : j.at("compose"))
      t->set_compose(c.at("p").get<std::string>(), c.at("i").get<int>(), c.at("q").get<std::string>(),
                     c.at("r").get<std::string>());
  if (j.contains("act"))
    for (const auto& a : j.at("act"))
      t->set_act(a.at("p").get<std::string>(), a.at("perm").get<Perm>(), a.at("r").get<std::string>());
  return t;
}

nlohmann::json operad_to_json(const ColoredOperad& p) {
  nlohmann::json j;
  std::vector<std::string> colours;
  for (int c = 0; c < p.colour_count(); ++c) colours.push_back(p.colour_name(c));
  j["colours"] = colours;
  j["symmetric"] = p.symmetric();
  const auto ops = p.all_ops();
  j["ops"] = nlohmann::json::array();
  for (OpId x : ops) {
    std::vector<std::string> in;
    for (ColourId c : p.inputs(x)) in.push_back(p.colour_name(c));
    j["ops"].push_back({{"name", p.op_name(x)}, {"inputs", in}, {"output", p.colour_name(p.output(x))}});
  }
  j["units"] = nlohmann::json::object();
  for (int c = 0; c < p.colour_count(); ++c) j["units"][p.colour_name(c)] = p.op_name(p.unit(c));
  j["compose"] = nlohmann::json::array();
  for (OpId x : ops)
    for (int i = 0; i < p.arity(x); ++i)
      for (OpId y : ops) {
        if (p.is_unit(x) || p.is_unit(y)) continue;  // implied by the unit laws
        OpId r = p.compose(x, i, y);
        if (r >= 0) j["compose"].push_back({{"p", p.op_name(x)}, {"i", i}, {"q", p.op_name(y)}, {"r", p.op_name(r)}});
      }
  j["act"] = nlohmann::json::array();
  if (p.symmetric())
    for (OpId x : ops)
      for (const auto& s : all_perms(p.arity(x))) {
        if (is_identity(s)) continue;
        OpId r = p.act(x, s);
        if (r >= 0) j["act"].push_back({{"p", p.op_name(x)}, {"perm", s}, {"r", p.op_name(r)}});
      }
  j["sigma_free"] = sigma_free(p);
  return j;
}

}  // namespace dendro
