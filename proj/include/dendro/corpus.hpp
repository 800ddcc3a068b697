#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dendro/dset.hpp"
#include "dendro/grothendieck.hpp"
#include "dendro/operad.hpp"
#include "dendro/tree.hpp"

namespace dendro {

struct NamedOperad {
  std::string name;
  std::shared_ptr<const ColoredOperad> op;
};

// Small finite operads used by tests, the acceptance run and the CLI.
std::vector<NamedOperad> operad_corpus();
std::shared_ptr<TableOperad> commutative_fixture();  // m:(a,a;b) fixed by the swap
std::shared_ptr<TableOperad> z2_fixture();           // unary group of order 2
std::shared_ptr<TableOperad> idempotent_fixture();   // unary e with e o e = e
std::shared_ptr<TableOperad> alternating_fixture();  // t:(a,a,a;b), orbit {t, t'}
std::shared_ptr<TableOperad> planar_binary_fixture();  // planar b:(x,y;z)
std::shared_ptr<TableOperad> nullary_fixture();      // z:(;a)

// Two objects a, b with parallel arrows f, g: a -> b and every triangle
// whose edges fit, on linear shapes of degree <= 2. Inner Kan up to its
// bound but not strict: f ~ g.
std::shared_ptr<TableSet> parallel_arrows_fixture();

// The two trees of the fourteen-scheme tensor example.
Tree tensor_example_s();
Tree tensor_example_t();

// X(1) = N_d(idempotent), X(0) = N_d(z2) over 0 -> 1, restricting along
// e -> 1. Strict components, non-injective restriction.
NerveDiagramSpec collapsing_diagram_spec();

struct NamedTree {
  std::string name;
  Tree tree;
};
struct NamedDiagram {
  std::string name;
  NerveDiagramSpec spec;
};
struct CorpusBundle {
  uint64_t seed = 0;
  int budget = 0;
  std::vector<NamedTree> trees;
  std::vector<NamedOperad> operads;
  std::vector<NamedDiagram> diagrams;
};

// Budget 0: the fixed trees (eta, C1, C2, i[2], the example tree, the
// tensor pair), the operad corpus and the collapsing diagram. Each unit of
// budget adds a random tree with at most 4 vertices, valence 3 and 3 leaves, its
// Omega operad, and a constant diagram over the two-object category.
CorpusBundle corpus_bundle(uint64_t seed, int budget);
nlohmann::json bundle_to_json(const CorpusBundle& b);
// FNV-1a of the compact JSON dump, as 16 hex digits.
std::string bundle_hash(const CorpusBundle& b);

}  // namespace dendro
