#include "dendro/perm.hpp"

#include <algorithm>
#include <numeric>

namespace dendro {

Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool is_identity(const Perm& p) {
  for (int k = 0; k < static_cast<int>(p.size()); ++k)
    if (p[k] != k) return false;
  return true;
}

Perm compose_perm(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (size_t k = 0; k < b.size(); ++k) r[k] = a[b[k]];
  return r;
}

Perm inverse_perm(const Perm& p) {
  Perm r(p.size());
  for (size_t k = 0; k < p.size(); ++k) r[p[k]] = static_cast<int>(k);
  return r;
}

int factorial(int n) {
  int f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

int perm_rank(const Perm& p) {
  const int n = static_cast<int>(p.size());
  int r = 0;
  for (int k = 0; k < n; ++k) {
    int smaller = 0;
    for (int j = k + 1; j < n; ++j) smaller += p[j] < p[k];
    r += smaller * factorial(n - 1 - k);
  }
  return r;
}

Perm perm_unrank(int n, int rank) {
  std::vector<int> pool = identity_perm(n);
  Perm p;
  for (int k = n - 1; k >= 0; --k) {
    int f = factorial(k);
    int j = rank / f;
    rank %= f;
    p.push_back(pool[j]);
    pool.erase(pool.begin() + j);
  }
  return p;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> r;
  Perm p = identity_perm(n);
  do r.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return r;
}

Perm block_sigma(const Perm& sigma, int i, int m) {
  const int n = static_cast<int>(sigma.size());
  const int s = sigma[i];
  auto shift = [&](int x) { return x < s ? x : x + m - 1; };
  Perm r;
  for (int k = 0; k < i; ++k) r.push_back(shift(sigma[k]));
  for (int k = 0; k < m; ++k) r.push_back(s + k);
  for (int k = i + 1; k < n; ++k) r.push_back(shift(sigma[k]));
  return r;
}

Perm block_tau(int n, int i, const Perm& tau) {
  const int m = static_cast<int>(tau.size());
  Perm r;
  for (int k = 0; k < i; ++k) r.push_back(k);
  for (int k = 0; k < m; ++k) r.push_back(i + tau[k]);
  for (int k = i + 1; k < n; ++k) r.push_back(k + m - 1);
  return r;
}

}  // namespace dendro
