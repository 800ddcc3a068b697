#pragma once

#include <vector>

namespace dendro {

// A permutation of {0..n-1}, p[k] = image of k. Acting on an operation,
// (x . p).inputs[k] = x.inputs[p[k]].
using Perm = std::vector<int>;

Perm identity_perm(int n);
bool is_identity(const Perm& p);
Perm compose_perm(const Perm& a, const Perm& b);  // (a o b)(k) = a(b(k))
Perm inverse_perm(const Perm& p);
int perm_rank(const Perm& p);  // lexicographic rank
Perm perm_unrank(int n, int rank);
int factorial(int n);
std::vector<Perm> all_perms(int n);  // lexicographic

// Block permutations for the equivariance axioms of o_i, with m the arity
// of the inserted operation.
Perm block_sigma(const Perm& sigma, int i, int m);       // sigma' in (p.s) o_i q = (p o_s(i) q) . s'
Perm block_tau(int n, int i, const Perm& tau);          // id + tau + id

}  // namespace dendro
