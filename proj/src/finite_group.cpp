#include "torsor/finite_group.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <random>
#include <sstream>

#include "torsor/config.hpp"
#include "torsor/errors.hpp"

namespace torsor {

namespace {

std::atomic<int> g_subgroup_guard{64};
std::atomic<int> g_cohomology_guard{16};

constexpr int kMaxTableOrder = 4096;

std::string triple(int a, int b, int c) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

}  // namespace

Guards current_guards() { return {g_subgroup_guard.load(), g_cohomology_guard.load()}; }

void set_guards(const Guards& g) {
  g_subgroup_guard = g.subgroup_enumeration;
  g_cohomology_guard = g.cohomology;
}

bool apply_guard_environment() {
  const char* env = std::getenv("TORSOR_MAX_ORDER");
  if (!env || !*env) return false;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > kMaxTableOrder)
    fail(ErrorCode::invalid_argument, std::string("TORSOR_MAX_ORDER must be an integer in [1, 4096], got '") + env + "'");
  set_guards({static_cast<int>(v), static_cast<int>(v)});
  return true;
}

void require_cohomology_guard(int order, const std::string& what) {
  const int cap = g_cohomology_guard.load();
  if (order > cap)
    fail(ErrorCode::guard, what + ": cohomology guard: group order " + std::to_string(order) + " exceeds " +
                               std::to_string(cap) + " (override with TORSOR_MAX_ORDER)");
}

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<int>>& table, std::string name,
                                 std::vector<Permutation> permutations) {
  const int n = static_cast<int>(table.size());
  if (n < 1) fail(ErrorCode::parse, "Cayley table is empty");
  if (n > kMaxTableOrder) fail(ErrorCode::invalid_argument, "group order exceeds 4096");
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->order_ = n;
  g->name_ = std::move(name);
  g->table_.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n)
      fail(ErrorCode::parse, "Cayley table row " + std::to_string(i) + " has wrong length");
    for (int j = 0; j < n; ++j) {
      int v = table[i][j];
      if (v < 0 || v >= n)
        fail(ErrorCode::parse, "Cayley table entry (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
      g->table_[static_cast<std::size_t>(i) * n + j] = v;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (g->mul(0, i) != i || g->mul(i, 0) != i)
      fail(ErrorCode::parse, "element 0 is not the identity (fails at element " + std::to_string(i) + ")");
  }
  std::vector<char> seen(n);
  for (int i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < n; ++j) {
      if (seen[g->mul(i, j)]) fail(ErrorCode::parse, "row " + std::to_string(i) + " is not a permutation");
      seen[g->mul(i, j)] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < n; ++j) {
      if (seen[g->mul(j, i)]) fail(ErrorCode::parse, "column " + std::to_string(i) + " is not a permutation");
      seen[g->mul(j, i)] = 1;
    }
  }
  auto check = [&](int a, int b, int c) {
    if (g->mul(g->mul(a, b), c) != g->mul(a, g->mul(b, c)))
      fail(ErrorCode::parse, "associativity fails for triple " + triple(a, b, c));
  };
  if (n <= 16) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937 rng(0x5eed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int k = 0; k < 4096; ++k) check(pick(rng), pick(rng), pick(rng));
  }
  g->inverse_.assign(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g->mul(i, j) == 0) {
        if (g->mul(j, i) != 0) fail(ErrorCode::parse, "element " + std::to_string(i) + " has no two-sided inverse");
        g->inverse_[i] = j;
        break;
      }
  g->element_order_.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    int k = 1, x = i;
    while (x != 0) {
      x = g->mul(x, i);
      ++k;
    }
    g->element_order_[i] = k;
  }
  if (!permutations.empty()) {
    if (static_cast<int>(permutations.size()) != n) fail(ErrorCode::parse, "permutation list has wrong size");
    g->permutations_ = std::move(permutations);
  }
  // greedy generating set, large orders first
  std::vector<int> cand(n > 0 ? n - 1 : 0);
  for (int i = 1; i < n; ++i) cand[i - 1] = i;
  std::stable_sort(cand.begin(), cand.end(),
                   [&](int a, int b) { return g->element_order_[a] > g->element_order_[b]; });
  std::vector<char> in(n, 0);
  in[0] = 1;
  std::vector<int> members{0};
  for (int c : cand) {
    if (in[c]) continue;
    g->generators_.push_back(c);
    // extend the closure by right multiplication with all generators
    std::vector<int> queue = members;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (int s : g->generators_) {
        int y = g->mul(queue[q], s);
        if (!in[y]) {
          in[y] = 1;
          queue.push_back(y);
        }
      }
    members = queue;
  }
  return g;
}

int FiniteGroup::power(int a, long k) const {
  long ord = element_order_[a];
  k %= ord;
  if (k < 0) k += ord;
  int x = 0;
  for (long i = 0; i < k; ++i) x = mul(x, a);
  return x;
}

int FiniteGroup::index_of_permutation(const Permutation& p) const {
  auto it = std::find(permutations_.begin(), permutations_.end(), p);
  return it == permutations_.end() ? -1 : static_cast<int>(it - permutations_.begin());
}

std::vector<std::vector<int>> FiniteGroup::table_rows() const {
  std::vector<std::vector<int>> rows(order_, std::vector<int>(order_));
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) rows[i][j] = mul(i, j);
  return rows;
}

bool FiniteGroup::is_abelian() const {
  for (int i = 0; i < order_; ++i)
    for (int j = i + 1; j < order_; ++j)
      if (mul(i, j) != mul(j, i)) return false;
  return true;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<long, int>> factorize(long n) {
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::optional<long> prime_power_base(long n) {
  auto f = factorize(n);
  if (f.size() != 1) return std::nullopt;
  return f[0].first;
}

long gcd_long(long a, long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace torsor
