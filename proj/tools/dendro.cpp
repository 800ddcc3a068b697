// dendro: command-line front end for the tree, operad, dendroidal set,
// tensor, anodyne and Grothendieck engines.
//
// Exit codes: 0 ok, 1 usage or bad input, 2 Kan failure, 3 strictness
// failure, 4 invalid certificate.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dendro/anodyne.hpp"
#include "dendro/corpus.hpp"
#include "dendro/grothendieck.hpp"
#include "dendro/kan.hpp"
#include "dendro/percolation.hpp"

using namespace dendro;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kUsage = 1, kNotKan = 2, kNotStrict = 3, kBadCertificate = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Runs f on parsed input, turning shape errors into usage errors tagged with the path.
template <class F>
auto with_input(const std::string& path, F f) {
  json j = read_json(path);
  try {
    return f(j);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Tree load_tree(const std::string& path) {
  return with_input(path, [](const json& j) { return tree_from_json(j); });
}

std::shared_ptr<const ColoredOperad> load_operad(const std::string& path) {
  return with_input(path, [&](const json& j) -> std::shared_ptr<const ColoredOperad> {
    auto p = operad_from_json(j);
    auto bad = validate(*p);
    if (!bad.empty()) throw Error("not an operad (" + bad[0].law + ": " + bad[0].detail + ")");
    return p;
  });
}

// A presheaf description: {"kind": "nerve", "operad", "bound", "valence"},
// {"kind": "representable", "tree", "bound", "valence"} or a table dump
// (dset_to_json of anything).
std::shared_ptr<const DendroidalSet> dset_from_description(const json& j, int bound, int valence) {
  std::string kind = j.value("kind", "table");
  auto b = [&] { return bound > 0 ? bound : j.at("bound").get<int>(); };
  auto v = [&] { return valence > 0 ? valence : j.at("valence").get<int>(); };
  if (kind == "nerve") {
    auto p = operad_from_json(j.at("operad"));
    if (!validate(*p).empty()) throw Error("not-an-operad");
    return std::make_shared<Nerve>(p, b(), v());
  }
  if (kind == "representable") return std::make_shared<Representable>(tree_from_json(j.at("tree")), b(), v());
  if (j.contains("shapes") && j.contains("actions")) return dset_from_json(j);
  throw Error("unknown-kind " + kind);
}

std::shared_ptr<const DendroidalSet> load_dset(const std::string& path, int bound, int valence) {
  return with_input(path, [&](const json& j) { return dset_from_description(j, bound, valence); });
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json counts_json(const DendroidalSet& x) {
  json a = json::array();
  for (const auto& t : x.shapes())
    if (x.covers(t)) a.push_back({{"shape", canonical_code(t)}, {"count", x.dendrices(t).size()}});
  return a;
}

void print_counts(const DendroidalSet& x) {
  for (const auto& t : x.shapes())
    if (x.covers(t)) std::cout << canonical_code(t) << "\t" << x.dendrices(t).size() << "\n";
}

int kan_exit(const KanReport& r, bool strict) {
  if (!r.inner_kan()) return kNotKan;
  if (strict && !r.strict()) return kNotStrict;
  return kOk;
}

void print_kan(const KanReport& r, bool strict) {
  std::cout << "horns checked: " << r.checked_horns << ", skipped: " << r.skipped
            << ", without filler: " << r.failures.size();
  if (strict) std::cout << ", with several fillers: " << r.strictness_failures.size();
  std::cout << "\n";
}

std::set<Edge> parse_edges(const std::string& s) {
  json j;
  try {
    j = json::parse(s);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("--edges: ") + e.what());
  }
  if (!j.is_array()) throw UsageError("--edges: expected a JSON array of edge names");
  std::set<Edge> r;
  for (const auto& e : j) {
    if (!e.is_string()) throw UsageError("--edges: expected a JSON array of edge names");
    r.insert(e.get<std::string>());
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trees, dendroidal sets and their Kan conditions"};
  app.require_subcommand(1);

  bool as_json = false, as_dot = false, strict = false;
  int max_vertices = 3, max_valence = -1, bound = -1;
  uint64_t seed = 1;
  app.add_flag("--json", as_json, "Emit the full JSON document");

  // trees
  auto* trees = app.add_subcommand("trees", "Enumerate trees up to isomorphism");
  trees->add_option("--max-vertices", max_vertices, "Vertex bound")->check(CLI::Range(0, 8));
  trees->add_option("--max-valence", max_valence, "Valence bound (default 3)");
  trees->add_flag("--dot", as_dot, "Emit DOT graphs");
  trees->add_flag("--json", as_json);

  // omega
  std::string s_path, t_path, tree_path;
  auto* omega = app.add_subcommand("omega", "Arrows and faces in Omega");
  omega->require_subcommand(1);
  auto* arrows = omega->add_subcommand("arrows", "All arrows S -> T");
  arrows->add_option("--s", s_path)->required();
  arrows->add_option("--t", t_path)->required();
  arrows->add_flag("--json", as_json);
  auto* faces = omega->add_subcommand("faces", "All faces of a tree, itself included");
  faces->add_option("--tree", tree_path)->required();
  faces->add_flag("--json", as_json);

  // operad
  std::string operad_path;
  auto* operad = app.add_subcommand("operad", "Operad tables");
  operad->require_subcommand(1);
  auto* validate_cmd = operad->add_subcommand("validate", "Check the operad axioms");
  validate_cmd->add_option("--operad", operad_path)->required();
  validate_cmd->add_flag("--json", as_json);
  auto* omega_op = operad->add_subcommand("omega", "Omega(T) as an operad table");
  omega_op->add_option("--tree", tree_path)->required();

  // nerve
  auto* nerve = app.add_subcommand("nerve", "Dendrex counts of N_d(P)");
  nerve->add_option("--operad", operad_path)->required();
  nerve->add_option("--bound", bound, "Degree bound (default 3)");
  nerve->add_option("--max-valence", max_valence, "Valence bound (default 3)");
  nerve->add_flag("--json", as_json, "Emit a presheaf description usable as --dset");

  // kan
  std::string dset_path;
  auto* kan = app.add_subcommand("kan", "Inner Kan conditions");
  kan->require_subcommand(1);
  auto* kan_check = kan->add_subcommand("check", "Check every inner horn");
  kan_check->add_option("--dset", dset_path)->required();
  kan_check->add_flag("--strict", strict, "Also require unique fillers");
  kan_check->add_option("--bound", bound);
  kan_check->add_option("--max-valence", max_valence);
  kan_check->add_flag("--json", as_json);

  // ho
  int max_arity = -1;
  auto* ho = app.add_subcommand("ho", "Homotopy operad of an inner Kan presheaf");
  ho->add_option("--dset", dset_path)->required();
  ho->add_option("--bound", bound);
  ho->add_option("--max-valence", max_valence);
  ho->add_option("--max-arity", max_arity);
  ho->add_flag("--json", as_json);

  // tensor
  auto* tensor = app.add_subcommand("tensor", "Boardman-Vogt tensor of representables");
  tensor->require_subcommand(1);
  auto* percolate = tensor->add_subcommand("percolate", "Percolation schemes of S and T");
  percolate->add_option("--s", s_path)->required();
  percolate->add_option("--t", t_path)->required();
  percolate->add_flag("--dot", as_dot, "Emit the Hasse diagram as DOT");
  percolate->add_flag("--json", as_json);

  // anodyne
  std::string kind, edges, leaf, edge, cert_path;
  auto* anodyne = app.add_subcommand("anodyne", "Anodyne certificates");
  anodyne->require_subcommand(1);
  auto* certify = anodyne->add_subcommand("certify", "Build a certificate");
  certify->add_option("--kind", kind)->required()->check(CLI::IsMember({"multi-horn", "grafting", "tensor"}));
  certify->add_option("--tree", tree_path, "multi-horn: the tree");
  certify->add_option("--edges", edges, "multi-horn: JSON array of inner edges");
  certify->add_option("--s", s_path, "grafting: the upper tree; tensor: S");
  certify->add_option("--t", t_path, "grafting: the lower tree; tensor: T");
  certify->add_option("--leaf", leaf, "grafting: leaf of the lower tree");
  certify->add_option("--edge", edge, "tensor: inner edge of S");
  auto* verify = anodyne->add_subcommand("verify", "Replay a certificate");
  verify->add_option("--cert", cert_path)->required();
  verify->add_option("--tree", tree_path, "Representable ambient");
  verify->add_option("--s", s_path, "Tensor ambient: S");
  verify->add_option("--t", t_path, "Tensor ambient: T");
  verify->add_flag("--json", as_json);

  // integrate
  std::string diagram_path;
  auto* integrate_cmd = app.add_subcommand("integrate", "Grothendieck construction of a diagram of nerves");
  integrate_cmd->add_option("--diagram", diagram_path)->required();
  integrate_cmd->add_option("--bound", bound, "Degree bound (default 3)");
  integrate_cmd->add_option("--max-valence", max_valence, "Valence bound (default 2)");
  integrate_cmd->add_flag("--strict", strict);
  integrate_cmd->add_flag("--json", as_json);

  // corpus
  int budget = 0;
  auto* corpus = app.add_subcommand("corpus", "Seeded fixture bundle");
  corpus->add_option("--seed", seed, "Random seed (default 1)");
  corpus->add_option("--budget", budget, "Random additions")->check(CLI::Range(0, 1000));
  corpus->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  auto or_default = [](int v, int d) { return v > 0 ? v : d; };
  try {
    if (trees->parsed()) {
      auto ts = enumerate_trees(max_vertices, or_default(max_valence, 3));
      if (as_dot) {
        for (size_t k = 0; k < ts.size(); ++k) std::cout << tree_to_dot(ts[k], "T" + std::to_string(k + 1));
      } else if (as_json) {
        json a = json::array();
        for (const auto& t : ts) a.push_back(tree_to_json(t));
        emit(a);
      } else {
        for (const auto& t : ts) std::cout << t.str() << "\n";
      }
      return kOk;
    }

    if (arrows->parsed()) {
      Tree s = load_tree(s_path), t = load_tree(t_path);
      auto as = arrows_between(s, t);
      if (as_json) {
        json a = json::array();
        for (const auto& f : as) a.push_back(arrow_to_json(f));
        emit(a);
      } else {
        for (const auto& f : as) {
          for (int i = 0; i < s.edge_count(); ++i) std::cout << (i ? " " : "") << s.edge(i) << "->" << t.edge(f.map[i]);
          std::cout << "\n";
        }
      }
      return kOk;
    }

    if (faces->parsed()) {
      auto fs = all_faces(load_tree(tree_path));
      if (as_json) {
        json a = json::array();
        for (const auto& f : fs) a.push_back(tree_to_json(f));
        emit(a);
      } else {
        for (const auto& f : fs) std::cout << f.str() << "\n";
      }
      return kOk;
    }

    if (validate_cmd->parsed()) {
      auto p = with_input(operad_path, [](const json& j) { return operad_from_json(j); });
      auto bad = validate(*p);
      if (as_json) {
        json a = json::array();
        for (const auto& v : bad) a.push_back({{"law", v.law}, {"detail", v.detail}});
        emit({{"valid", bad.empty()}, {"violations", a}});
      } else {
        for (const auto& v : bad) std::cout << v.law << ": " << v.detail << "\n";
        if (bad.empty()) std::cout << "valid\n";
      }
      return bad.empty() ? kOk : kUsage;
    }

    if (omega_op->parsed()) {
      emit(operad_to_json(*to_table(OmegaOperad(load_tree(tree_path)))));
      return kOk;
    }

    if (nerve->parsed()) {
      auto p = load_operad(operad_path);
      Nerve x(p, or_default(bound, 3), or_default(max_valence, 3));
      if (as_json)
        emit({{"kind", "nerve"}, {"operad", operad_to_json(*p)}, {"bound", x.bound()}, {"valence", x.valence()},
              {"counts", counts_json(x)}});
      else
        print_counts(x);
      return kOk;
    }

    if (kan_check->parsed()) {
      auto x = load_dset(dset_path, bound, max_valence);
      KanReport r = check_inner_kan(*x, strict);
      if (as_json)
        emit(kan_report_to_json(r));
      else
        print_kan(r, strict);
      return kan_exit(r, strict);
    }

    if (ho->parsed()) {
      auto x = load_dset(dset_path, bound, max_valence);
      HoOperad h;
      try {
        h = ho_operad(*x, max_arity);
      } catch (const Error& e) {
        if (std::string(e.what()) != "not-inner-kan") throw;
        std::cerr << "ho: " << e.what() << "\n";
        return kNotKan;
      }
      if (as_json) {
        emit(operad_to_json(*h.op));
      } else {
        for (OpId p : h.op->all_ops()) {
          std::cout << h.op->op_name(p) << ": (";
          const auto& in = h.op->inputs(p);
          for (size_t k = 0; k < in.size(); ++k) std::cout << (k ? "," : "") << h.op->colour_name(in[k]);
          std::cout << ";" << h.op->colour_name(h.op->output(p)) << ")\n";
        }
      }
      return kOk;
    }

    if (percolate->parsed()) {
      Tree s = load_tree(s_path), t = load_tree(t_path);
      SchemePoset p = enumerate_schemes(s, t);
      if (as_dot)
        std::cout << poset_to_dot(p);
      else if (as_json)
        emit(poset_to_json(p));
      else
        std::cout << p.schemes.size() << " schemes, " << p.covering.size() << " covering pairs\n";
      return kOk;
    }

    if (certify->parsed()) {
      AnodyneCertificate c;
      auto need = [](const std::string& v, const char* flag) {
        if (v.empty()) throw UsageError(std::string("--kind needs ") + flag);
      };
      try {
        if (kind == "multi-horn") {
          need(tree_path, "--tree");
          need(edges, "--edges");
          auto a = parse_edges(edges);
          if (a.empty()) throw UsageError("--edges: at least one inner edge is required");
          c = certify_multi_horn(load_tree(tree_path), a);
        } else if (kind == "grafting") {
          need(t_path, "--t");
          need(s_path, "--s");
          need(leaf, "--leaf");
          c = certify_grafting(load_tree(t_path), leaf, load_tree(s_path));
        } else {
          need(s_path, "--s");
          need(t_path, "--t");
          need(edge, "--edge");
          c = certify_tensor_extension(load_tree(s_path), edge, load_tree(t_path));
        }
      } catch (const Error& e) {
        std::string w = e.what();
        if (w == "certificate-invalid") {
          std::cerr << "certify: " << w << "\n";
          return kBadCertificate;
        }
        throw UsageError(w);
      }
      emit(certificate_to_json(c));
      return kOk;
    }

    if (verify->parsed()) {
      auto c = with_input(cert_path, [](const json& j) { return certificate_from_json(j); });
      Subobject ambient;
      if (!tree_path.empty()) {
        ambient = representable_ambient(load_tree(tree_path));
      } else if (!s_path.empty() && !t_path.empty()) {
        ambient = tensor_ambient(enumerate_schemes(load_tree(s_path), load_tree(t_path)));
      } else {
        if (!s_path.empty() || !t_path.empty()) throw UsageError("tensor ambient needs both --s and --t");
        std::cerr << "verify: no ambient given, using the closure of the certificate's end\n";
        ambient = closure(c.end);
      }
      VerifyResult r = verify_certificate(c, ambient);
      if (as_json)
        emit({{"ok", r.ok}, {"step", r.step}, {"reason", r.reason}, {"detail", r.detail}});
      else if (r.ok)
        std::cout << "valid: " << c.steps.size() << " steps\n";
      else
        std::cout << "invalid at step " << r.step << ": " << r.reason << " " << r.detail << "\n";
      return r.ok ? kOk : kBadCertificate;
    }

    if (integrate_cmd->parsed()) {
      auto spec = with_input(diagram_path, [](const json& j) { return diagram_spec_from_json(j); });
      auto bad = validate_spec(spec);
      if (!bad.empty()) throw UsageError(diagram_path + ": " + bad[0]);
      const int b = or_default(bound, 3), v = or_default(max_valence, 2);
      auto x = integrate(realize(spec, b, v), spec.category, b, v);
      KanReport r = check_inner_kan(*x, strict);
      if (as_json) {
        emit({{"counts", counts_json(*x)}, {"kan", kan_report_to_json(r)}});
      } else {
        print_counts(*x);
        print_kan(r, strict);
      }
      return kan_exit(r, strict);
    }

    if (corpus->parsed()) {
      auto bundle = corpus_bundle(seed, budget);
      if (as_json) {
        json j = bundle_to_json(bundle);
        j["hash"] = bundle_hash(bundle);
        emit(j);
      } else {
        std::cout << "hash " << bundle_hash(bundle) << "\n"
                  << bundle.trees.size() << " trees, " << bundle.operads.size() << " operads, "
                  << bundle.diagrams.size() << " diagrams\n";
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
