#include "torsor/group_library.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "torsor/errors.hpp"

namespace torsor {

namespace {

using Table = std::vector<std::vector<int>>;

int parse_positive(const std::string& digits, const std::string& context) {
  if (digits.empty() || digits.size() > 6 ||
      !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
    fail(ErrorCode::parse, "group spec '" + context + "': expected a positive integer, got '" + digits + "'");
  int v = std::stoi(digits);
  if (v < 1) fail(ErrorCode::parse, "group spec '" + context + "': order must be positive");
  return v;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

GroupPtr parse_factor(const std::string& s) {
  if (s.size() < 2) fail(ErrorCode::parse, "group spec '" + s + "' is too short");
  const char kind = s[0];
  const std::string rest = s.substr(1);
  switch (kind) {
    case 'C': return cyclic_group(parse_positive(rest, s));
    case 'D': {
      int n = parse_positive(rest, s);
      if (n % 2 != 0) fail(ErrorCode::parse, "dihedral order must be even: '" + s + "'");
      return dihedral_group(n);
    }
    case 'Q': {
      int n = parse_positive(rest, s);
      if (n < 8 || !is_power_of_two(n))
        fail(ErrorCode::parse, "generalized quaternion order must be a power of two >= 8: '" + s + "'");
      return quaternion_group(n);
    }
    case 'E': {
      auto caret = rest.find('^');
      if (caret == std::string::npos) fail(ErrorCode::parse, "elementary abelian spec needs E<p>^<k>: '" + s + "'");
      int p = parse_positive(rest.substr(0, caret), s);
      int k = parse_positive(rest.substr(caret + 1), s);
      if (!is_prime(p)) fail(ErrorCode::parse, "E<p>^<k> needs a prime p: '" + s + "'");
      return elementary_abelian_group(p, k);
    }
    case 'S': {
      int n = parse_positive(rest, s);
      if (n > 6) fail(ErrorCode::parse, "symmetric groups are limited to S6: '" + s + "'");
      return symmetric_group(n);
    }
    default:
      fail(ErrorCode::parse, "unknown group family in '" + s + "' (expected C, D, Q, E, S or file:)");
  }
}

long checked_order(long a, long b) {
  if (a * b > 4096) fail(ErrorCode::invalid_argument, "group order exceeds 4096");
  return a * b;
}

}  // namespace

GroupPtr cyclic_group(int n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "cyclic group order must be positive");
  checked_order(n, 1);
  Table t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return FiniteGroup::from_table(t, "C" + std::to_string(n));
}

GroupPtr dihedral_group(int n) {
  if (n < 2 || n % 2) fail(ErrorCode::invalid_argument, "dihedral group order must be even and >= 2");
  checked_order(n, 1);
  const int m = n / 2;
  // element r^i s^j has index i + m*j
  Table t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int i = a % m, j = a / m, k = b % m, l = b / m;
      int rot = ((j ? i - k : i + k) % m + m) % m;
      t[a][b] = rot + m * ((j + l) % 2);
    }
  return FiniteGroup::from_table(t, "D" + std::to_string(n));
}

GroupPtr quaternion_group(int n) {
  if (n < 8 || !is_power_of_two(n))
    fail(ErrorCode::invalid_argument, "generalized quaternion order must be a power of two >= 8");
  checked_order(n, 1);
  const int m = n / 2;
  // a^i b^j -> i + m*j, with a^m = 1, b^2 = a^(m/2), b a b^-1 = a^-1
  Table t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int i = x % m, j = x / m, k = y % m, l = y / m;
      int e, b;
      if (j == 0) {
        e = i + k;
        b = l;
      } else if (l == 0) {
        e = i - k;
        b = 1;
      } else {
        e = i - k + m / 2;
        b = 0;
      }
      t[x][y] = ((e % m) + m) % m + m * b;
    }
  return FiniteGroup::from_table(t, "Q" + std::to_string(n));
}

GroupPtr elementary_abelian_group(int p, int k) {
  if (!is_prime(p) || k < 1) fail(ErrorCode::invalid_argument, "elementary abelian group needs prime p and k >= 1");
  GroupPtr g = cyclic_group(p);
  for (int i = 1; i < k; ++i) g = direct_product(g, cyclic_group(p));
  auto rows = g->table_rows();
  return FiniteGroup::from_table(rows, "E" + std::to_string(p) + "^" + std::to_string(k));
}

GroupPtr symmetric_group(int n) {
  if (n < 1 || n > 6) fail(ErrorCode::invalid_argument, "symmetric groups are limited to 1 <= n <= 6");
  std::vector<FiniteGroup::Permutation> perms;
  FiniteGroup::Permutation p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int order = static_cast<int>(perms.size());
  auto rank = [&](const FiniteGroup::Permutation& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  Table t(order, std::vector<int>(order));
  FiniteGroup::Permutation c(n);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      // (a*b)(x) = a(b(x))
      for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = rank(c);
    }
  return FiniteGroup::from_table(t, "S" + std::to_string(n), perms);
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
  const int n = static_cast<int>(checked_order(a->order(), b->order()));
  const int nb = b->order();
  Table t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = a->mul(x / nb, y / nb) * nb + b->mul(x % nb, y % nb);
  return FiniteGroup::from_table(t, a->name() + "x" + b->name());
}

GroupPtr parse_group_spec(const std::string& text) {
  if (text.rfind("file:", 0) == 0) return load_group_file(text.substr(5));
  if (text.empty()) fail(ErrorCode::parse, "empty group spec");
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == 'x') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  GroupPtr g;
  for (const auto& part : parts) {
    if (part.empty()) fail(ErrorCode::parse, "group spec '" + text + "' has an empty factor");
    GroupPtr f = parse_factor(part);
    g = g ? direct_product(g, f) : f;
  }
  return g;
}

GroupPtr group_from_json(const std::string& json_text, const std::string& name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, std::string("Cayley-table JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("order") || !j.contains("table"))
    fail(ErrorCode::parse, "Cayley-table JSON must be an object with 'order' and 'table'");
  if (!j["order"].is_number_integer()) fail(ErrorCode::parse, "Cayley-table JSON: 'order' must be an integer");
  const long order = j["order"].get<long>();
  const auto& jt = j["table"];
  if (!jt.is_array() || static_cast<long>(jt.size()) != order)
    fail(ErrorCode::parse, "Cayley-table JSON: 'table' must have 'order' rows");
  Table t;
  for (const auto& row : jt) {
    if (!row.is_array() || static_cast<long>(row.size()) != order)
      fail(ErrorCode::parse, "Cayley-table JSON: every row must have 'order' entries");
    std::vector<int> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) fail(ErrorCode::parse, "Cayley-table JSON: entries must be integers");
      r.push_back(v.get<int>());
    }
    t.push_back(std::move(r));
  }
  return FiniteGroup::from_table(t, name);
}

GroupPtr load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::parse, "cannot open Cayley-table file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return group_from_json(ss.str(), "file:" + path);
}

std::string group_to_json(const FiniteGroup& g) {
  nlohmann::json j;
  j["order"] = g.order();
  j["table"] = g.table_rows();
  return j.dump();
}

std::vector<std::string> builtin_p_group_specs() {
  return {"C2", "C3", "C4", "E2^2", "C8", "C4xC2", "E2^3", "D8", "Q8", "C9", "E3^2",
          "C16", "C4xC4", "C8xC2", "E2^4", "D16", "Q16"};
}

}  // namespace torsor
