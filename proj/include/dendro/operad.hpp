#pragma once

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dendro/perm.hpp"
#include "dendro/tree.hpp"

namespace dendro {

using OpId = int;
using ColourId = int;

// A finite coloured operad, possibly planar (no symmetric action). Ops are
// identified by dense ids; implementations may create ids lazily.
class ColoredOperad {
 public:
  virtual ~ColoredOperad() = default;

  virtual int colour_count() const = 0;
  virtual const std::string& colour_name(ColourId c) const = 0;
  virtual bool symmetric() const = 0;

  virtual OpId unit(ColourId c) const = 0;
  virtual const std::vector<ColourId>& inputs(OpId p) const = 0;
  virtual ColourId output(OpId p) const = 0;
  virtual std::string op_name(OpId p) const = 0;
  int arity(OpId p) const { return static_cast<int>(inputs(p).size()); }

  // Ops with the given output colour and arity (any input colours).
  virtual std::vector<OpId> ops_with(ColourId out, int arity) const = 0;
  // p o_i q, or -1 when the colours do not match.
  virtual OpId compose(OpId p, int i, OpId q) const = 0;
  // p . s; only meaningful when symmetric().
  virtual OpId act(OpId p, const Perm& s) const = 0;
  // Every op, in id order. May be expensive for implicit operads.
  virtual std::vector<OpId> all_ops() const = 0;

  ColourId colour_id(const std::string& name) const;  // throws Error("unknown-colour")
  bool is_unit(OpId p) const { return arity(p) == 1 && unit(output(p)) == p; }
};

struct OpSpec {
  std::string name;
  std::vector<std::string> inputs;
  std::string output;
};

// Operad given by explicit tables.
class TableOperad : public ColoredOperad {
 public:
  TableOperad(std::vector<std::string> colours, std::vector<OpSpec> ops, bool symmetric);

  // Table entries; missing entries are reported by validate().
  void set_unit(const std::string& colour, const std::string& op);
  void set_compose(const std::string& p, int i, const std::string& q, const std::string& r);
  void set_act(const std::string& p, const Perm& s, const std::string& r);
  void set_compose(OpId p, int i, OpId q, OpId r);
  void set_act(OpId p, const Perm& s, OpId r);
  OpId op_id(const std::string& name) const;  // throws Error("unknown-op")
  int op_count() const { return static_cast<int>(ops_.size()); }

  int colour_count() const override { return static_cast<int>(colours_.size()); }
  const std::string& colour_name(ColourId c) const override { return colours_[c]; }
  bool symmetric() const override { return symmetric_; }
  OpId unit(ColourId c) const override { return units_[c]; }
  const std::vector<ColourId>& inputs(OpId p) const override { return ops_[p].in; }
  ColourId output(OpId p) const override { return ops_[p].out; }
  std::string op_name(OpId p) const override { return ops_[p].name; }
  std::vector<OpId> ops_with(ColourId out, int arity) const override;
  OpId compose(OpId p, int i, OpId q) const override;
  OpId act(OpId p, const Perm& s) const override;
  std::vector<OpId> all_ops() const override;

 private:
  struct Op {
    std::string name;
    std::vector<ColourId> in;
    ColourId out;
  };
  uint64_t key(OpId p, int i, OpId q) const;

  std::vector<std::string> colours_;
  std::vector<Op> ops_;
  bool symmetric_;
  std::vector<OpId> units_;
  std::unordered_map<std::string, OpId> by_name_;
  std::unordered_map<uint64_t, OpId> compose_;
  std::vector<std::vector<OpId>> act_;  // by permutation rank
  std::map<std::pair<ColourId, int>, std::vector<OpId>> by_out_arity_;
  int max_arity_ = 0;
};

// Omega(T): colours are the edges of t, ops are units and realizable
// signatures with every ordering of their inputs (only the planar one
// when planar). Ops are interned on first use.
class OmegaOperad : public ColoredOperad {
 public:
  explicit OmegaOperad(Tree t, bool planar = false);

  const Tree& tree() const { return tree_; }
  // Op with the given ordered inputs and output (edge names), or -1.
  OpId op_for(const Signature& sig) const;
  Signature signature(OpId p) const;

  int colour_count() const override { return tree_.edge_count(); }
  const std::string& colour_name(ColourId c) const override { return tree_.edge(c); }
  bool symmetric() const override { return !planar_; }
  OpId unit(ColourId c) const override;
  const std::vector<ColourId>& inputs(OpId p) const override;
  ColourId output(OpId p) const override;
  std::string op_name(OpId p) const override;
  std::vector<OpId> ops_with(ColourId out, int arity) const override;
  OpId compose(OpId p, int i, OpId q) const override;
  OpId act(OpId p, const Perm& s) const override;
  std::vector<OpId> all_ops() const override;

 private:
  OpId intern(const std::vector<ColourId>& in, ColourId out) const;
  bool admissible(const std::vector<ColourId>& in, ColourId out) const;

  Tree tree_;
  bool planar_;
  // planar leaf tuples of the subtrees at each edge, by leaf count
  std::vector<std::vector<std::vector<std::vector<int>>>> subtrees_;  // by edge, leaf count
  mutable std::mutex mu_;
  mutable std::deque<std::vector<ColourId>> in_;
  mutable std::vector<ColourId> out_;
  mutable std::map<std::vector<int>, OpId> ids_;
};

struct OperadMap {
  std::vector<ColourId> colour_map;
  std::map<OpId, OpId> op_map;
};

struct Violation {
  std::string law;
  std::string detail;
};

// Unit, associativity, Sigma-equivariance and typing checks over all
// instances. Empty iff the tables define an operad.
std::vector<Violation> validate(const ColoredOperad& p);
bool sigma_free(const ColoredOperad& p);

std::shared_ptr<TableOperad> to_table(const ColoredOperad& p);
std::shared_ptr<TableOperad> symmetrize(const ColoredOperad& planar);

// All operad maps p -> q (p finite and enumerable), deterministic order.
std::vector<OperadMap> hom_operads(const ColoredOperad& p, const ColoredOperad& q, size_t limit = 0);
bool is_operad_map(const ColoredOperad& p, const ColoredOperad& q, const OperadMap& f, std::string* why = nullptr);
// An isomorphism p -> q if one exists.
std::optional<OperadMap> find_isomorphism(const ColoredOperad& p, const ColoredOperad& q);

std::shared_ptr<TableOperad> operad_from_json(const nlohmann::json& j);
nlohmann::json operad_to_json(const ColoredOperad& p);

}  // namespace dendro
