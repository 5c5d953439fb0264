#pragma once

#include <string>
#include <vector>

#include "torsor/finite_group.hpp"

namespace torsor {

GroupPtr cyclic_group(int n);
/// Dihedral group of order n (n even); D2 = C2 as a table, D4 = Klein four group.
GroupPtr dihedral_group(int n);
/// Generalized quaternion group of order n = 2^k >= 8.
GroupPtr quaternion_group(int n);
GroupPtr elementary_abelian_group(int p, int k);
/// Symmetric group on n <= 6 points, permutations in lexicographic order.
GroupPtr symmetric_group(int n);
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);

/// Grammar: C<n> | D<n> | Q<n> | E<p>^<k> | S<n> | <spec>x<spec> | file:<path>
GroupPtr parse_group_spec(const std::string& text);

/// Cayley-table JSON: {"order": n, "table": [[...], ...]}, identity at index 0.
GroupPtr group_from_json(const std::string& json_text, const std::string& name);
GroupPtr load_group_file(const std::string& path);
std::string group_to_json(const FiniteGroup& g);

/// The built-in p-groups of order <= 16 used by sweeps and golden tables.
std::vector<std::string> builtin_p_group_specs();

}  // namespace torsor
