#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "torsor/config.hpp"
#include "torsor/errors.hpp"
#include "torsor/finite_group.hpp"

namespace torsor {

bool Subgroup::contains(int g) const { return std::binary_search(elements.begin(), elements.end(), g); }

int Subgroup::position(int g) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), g);
  if (it == elements.end() || *it != g) return -1;
  return static_cast<int>(it - elements.begin());
}

GroupPtr Subgroup::as_group() const {
  const int n = order();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[i][j] = position(parent->mul(elements[i], elements[j]));
  return FiniteGroup::from_table(table, describe());
}

std::vector<int> Subgroup::generators() const {
  auto sub = as_group();
  std::vector<int> gens;
  for (int k : sub->generators()) gens.push_back(elements[k]);
  return gens;
}

std::string Subgroup::describe() const {
  std::ostringstream os;
  os << parent->name() << "{";
  for (std::size_t i = 0; i < elements.size(); ++i) os << (i ? "," : "") << elements[i];
  os << "}";
  return os.str();
}

const char* kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::cyclic: return "cyclic";
    case GroupKind::dihedral: return "dihedral";
    case GroupKind::generalized_quaternion: return "generalized_quaternion";
    case GroupKind::other: return "other";
  }
  return "other";
}

Subgroup closure(const GroupPtr& g, const std::vector<int>& generators) {
  std::vector<char> in(g->order(), 0);
  std::vector<int> queue{0};
  in[0] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (int s : generators) {
      int y = g->mul(queue[q], s);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  std::sort(queue.begin(), queue.end());
  return {g, std::move(queue)};
}

Subgroup whole_group(const GroupPtr& g) {
  std::vector<int> all(g->order());
  for (int i = 0; i < g->order(); ++i) all[i] = i;
  return {g, std::move(all)};
}

Subgroup trivial_subgroup(const GroupPtr& g) { return {g, {0}}; }

bool is_subgroup(const GroupPtr& g, const std::vector<int>& elements) {
  if (elements.empty() || !std::is_sorted(elements.begin(), elements.end())) return false;
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) return false;
  for (int x : elements)
    if (x < 0 || x >= g->order()) return false;
  if (elements.front() != 0) return false;
  if (g->order() % static_cast<int>(elements.size()) != 0) return false;
  for (int a : elements) {
    if (!std::binary_search(elements.begin(), elements.end(), g->inv(a))) return false;
    for (int b : elements)
      if (!std::binary_search(elements.begin(), elements.end(), g->mul(a, b))) return false;
  }
  return true;
}

namespace {

bool subgroup_less(const Subgroup& a, const Subgroup& b) {
  if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
  return a.elements < b.elements;
}

}  // namespace

std::vector<Subgroup> cyclic_subgroups(const GroupPtr& g) {
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> out;
  for (int x = 0; x < g->order(); ++x) {
    auto c = closure(g, {x});
    if (seen.insert(c.elements).second) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g) { return all_subgroups(g, current_guards().subgroup_enumeration); }

std::vector<Subgroup> all_subgroups(const GroupPtr& g, int cap) {
  if (g->order() > cap)
    fail(ErrorCode::guard, "subgroup enumeration guard: |G| = " + std::to_string(g->order()) + " exceeds " +
                               std::to_string(cap) + " (override with TORSOR_MAX_ORDER)");
  // one generator per cyclic subgroup
  std::vector<int> cyclic_gen;
  std::set<std::vector<int>> seen;
  struct Node {
    Subgroup sub;
    std::vector<int> gens;
  };
  std::vector<Node> nodes;
  for (int x = 0; x < g->order(); ++x) {
    auto c = closure(g, {x});
    if (seen.insert(c.elements).second) {
      cyclic_gen.push_back(x);
      nodes.push_back({std::move(c), {x}});
    }
  }
  // BFS over joins with cyclic subgroups
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (int x : cyclic_gen) {
      if (nodes[i].sub.contains(x)) continue;
      std::vector<int> gens = nodes[i].gens;
      gens.push_back(x);
      auto j = closure(g, gens);
      if (seen.insert(j.elements).second) nodes.push_back({std::move(j), std::move(gens)});
    }
  std::vector<Subgroup> out;
  out.reserve(nodes.size());
  for (auto& n : nodes) out.push_back(std::move(n.sub));
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

namespace {

long p_part(long n, long p) {
  long r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

// Generators of a Sylow p-subgroup of Sym([offset, offset + p^k)) as an
// iterated wreath product.
void wreath_generators(int p, int k, int offset, int degree, std::vector<FiniteGroup::Permutation>& out) {
  if (k == 0) return;
  wreath_generators(p, k - 1, offset, degree, out);
  int block = 1;
  for (int i = 0; i < k - 1; ++i) block *= p;
  int span = block * p;
  FiniteGroup::Permutation perm(degree);
  for (int x = 0; x < degree; ++x) perm[x] = x;
  for (int x = 0; x < span; ++x) perm[offset + x] = offset + (x + block) % span;
  out.push_back(std::move(perm));
}

Subgroup symmetric_sylow(const GroupPtr& g, int p) {
  const int degree = static_cast<int>(g->permutations().front().size());
  std::vector<FiniteGroup::Permutation> gens;
  // base-p expansion of the degree
  std::vector<int> digits;
  for (int m = degree; m > 0; m /= p) digits.push_back(m % p);
  int offset = 0;
  for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
    int block = 1;
    for (int i = 0; i < k; ++i) block *= p;
    for (int c = 0; c < digits[k]; ++c) {
      wreath_generators(p, k, offset, degree, gens);
      offset += block;
    }
  }
  std::vector<int> idx;
  for (const auto& perm : gens) {
    int i = g->index_of_permutation(perm);
    ensure(i >= 0, "symmetric Sylow: generator not found in the group");
    idx.push_back(i);
  }
  return closure(g, idx);
}

bool is_power_of(long n, long p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

Subgroup sylow_subgroup(const GroupPtr& g, int p) {
  if (!is_prime(p)) fail(ErrorCode::invalid_argument, "sylow_subgroup: " + std::to_string(p) + " is not prime");
  const long target = p_part(g->order(), p);
  if (target == 1) return trivial_subgroup(g);
  const auto& perms = g->permutations();
  if (!perms.empty()) {
    long fact = 1;
    for (std::size_t i = 2; i <= perms.front().size(); ++i) fact *= static_cast<long>(i);
    if (fact == g->order()) {
      auto s = symmetric_sylow(g, p);
      ensure(s.order() == target, "symmetric Sylow construction has the wrong order");
      return s;
    }
  }
  // Greedy growth: a proper p-subgroup is always normalized by some p-element
  // outside it, so joins reach a Sylow subgroup.
  Subgroup cur = trivial_subgroup(g);
  std::vector<int> gens;
  bool grew = true;
  while (cur.order() < target && grew) {
    grew = false;
    for (int x = 1; x < g->order(); ++x) {
      if (cur.contains(x) || !is_power_of(g->element_order(x), p)) continue;
      auto trial = gens;
      trial.push_back(x);
      auto j = closure(g, trial);
      if (is_power_of(j.order(), p)) {
        cur = std::move(j);
        gens = std::move(trial);
        grew = true;
        break;
      }
    }
  }
  ensure(cur.order() == target, "Sylow search did not reach the full p-part");
  return cur;
}

GroupKind recognize(const FiniteGroup& g) {
  const int n = g.order();
  for (int x = 0; x < n; ++x)
    if (g.element_order(x) == n) return GroupKind::cyclic;
  if (n % 2 == 0 && n >= 4) {
    const int m = n / 2;
    for (int x = 0; x < n; ++x) {
      if (g.element_order(x) != m) continue;
      std::vector<char> in_n(n, 0);
      for (int k = 0, y = 0; k < m; ++k, y = g.mul(y, x)) in_n[y] = 1;
      for (int t = 0; t < n; ++t) {
        if (in_n[t] || g.element_order(t) != 2) continue;
        if (g.conjugate(t, x) == g.inv(x)) return GroupKind::dihedral;
      }
    }
  }
  if (is_power_of(n, 2) && n >= 8) {
    int involutions = 0;
    for (int x = 0; x < n; ++x) involutions += g.element_order(x) == 2;
    if (involutions == 1) return GroupKind::generalized_quaternion;
  }
  return GroupKind::other;
}

GroupKind recognize(const Subgroup& h) { return recognize(*h.as_group()); }

std::vector<std::vector<int>> left_cosets(const Subgroup& h) {
  const auto& g = h.parent;
  std::vector<char> covered(g->order(), 0);
  std::vector<std::vector<int>> out;
  for (int x = 0; x < g->order(); ++x) {
    if (covered[x]) continue;
    std::vector<int> coset;
    for (int e : h.elements) {
      int y = g->mul(x, e);
      covered[y] = 1;
      coset.push_back(y);
    }
    std::sort(coset.begin(), coset.end());
    out.push_back(std::move(coset));
  }
  return out;
}

std::vector<int> right_coset_representatives(const Subgroup& h) {
  const auto& g = h.parent;
  std::vector<char> covered(g->order(), 0);
  std::vector<int> reps;
  for (int t = 0; t < g->order(); ++t) {
    if (covered[t]) continue;
    reps.push_back(t);
    for (int e : h.elements) covered[g->mul(e, t)] = 1;
  }
  return reps;
}

}  // namespace torsor
