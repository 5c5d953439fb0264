#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace torsor {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite group as a validated Cayley table. Element 0 is the identity and
/// table[i][j] is the index of g_i * g_j.
class FiniteGroup {
 public:
  using Permutation = std::vector<int>;

  /// Validates the table and throws Error(parse) naming the first failure.
  static GroupPtr from_table(const std::vector<std::vector<int>>& table, std::string name,
                             std::vector<Permutation> permutations = {});

  int order() const noexcept { return order_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  int power(int a, long k) const;
  int element_order(int a) const { return element_order_[a]; }
  int conjugate(int g, int x) const { return mul(mul(g, x), inv(g)); }
  const std::string& name() const noexcept { return name_; }

  /// Permutation images when the group was built as a permutation group
  /// (symmetric groups); empty otherwise.
  const std::vector<Permutation>& permutations() const noexcept { return permutations_; }
  int index_of_permutation(const Permutation& p) const;

  /// Deterministic small generating set (greedy, large element orders first).
  const std::vector<int>& generators() const noexcept { return generators_; }

  std::vector<std::vector<int>> table_rows() const;
  bool same_table(const FiniteGroup& other) const { return table_ == other.table_; }
  bool is_abelian() const;

 private:
  FiniteGroup() = default;

  int order_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> element_order_;
  std::vector<int> generators_;
  std::vector<Permutation> permutations_;
  std::string name_;
};

/// Sorted list of element indices closed under the parent's operation.
struct Subgroup {
  GroupPtr parent;
  std::vector<int> elements;

  int order() const noexcept { return static_cast<int>(elements.size()); }
  bool contains(int g) const;
  /// The subgroup as an abstract group: element k corresponds to elements[k].
  GroupPtr as_group() const;
  /// Index in elements, or -1.
  int position(int g) const;
  std::vector<int> generators() const;
  std::string describe() const;
};

enum class GroupKind { cyclic, dihedral, generalized_quaternion, other };

const char* kind_name(GroupKind k);

Subgroup closure(const GroupPtr& g, const std::vector<int>& generators);
Subgroup whole_group(const GroupPtr& g);
Subgroup trivial_subgroup(const GroupPtr& g);
bool is_subgroup(const GroupPtr& g, const std::vector<int>& elements);

/// Complete duplicate-free subgroup list sorted by size, then lexicographically.
/// Throws Error(guard) when |G| exceeds the enumeration guard.
std::vector<Subgroup> all_subgroups(const GroupPtr& g);
std::vector<Subgroup> all_subgroups(const GroupPtr& g, int cap);
/// Distinct cyclic subgroups <g>, sorted like all_subgroups.
std::vector<Subgroup> cyclic_subgroups(const GroupPtr& g);

/// A Sylow p-subgroup (trivial when p does not divide |G|). Symmetric groups
/// use explicit iterated wreath-product generators.
Subgroup sylow_subgroup(const GroupPtr& g, int p);

GroupKind recognize(const FiniteGroup& g);
GroupKind recognize(const Subgroup& h);

/// Left cosets gH, each sorted, ordered by smallest element (H itself first).
std::vector<std::vector<int>> left_cosets(const Subgroup& h);
/// Representatives t of the right cosets Ht, with t = 0 for H itself.
std::vector<int> right_coset_representatives(const Subgroup& h);

// number theory helpers
bool is_prime(long n);
std::vector<std::pair<long, int>> factorize(long n);
/// The prime p when n = p^k with k >= 1.
std::optional<long> prime_power_base(long n);
long gcd_long(long a, long b);

}  // namespace torsor
