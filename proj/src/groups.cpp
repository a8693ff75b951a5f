#include "pact/groups.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "pact/error.hpp"

namespace pact {

namespace {

std::string fmt_triple(int a, int b, int c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

}  // namespace

FiniteGroup FiniteGroup::make(Table table, std::string name, std::string family,
                              int parameter, int max_order) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error(ErrorCode::NoIdentity, "empty table");
  if (n > max_order) {
    throw Error(ErrorCode::OrderTooLarge,
                "order " + std::to_string(n) + " exceeds cap " + std::to_string(max_order),
                {n});
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n) {
      throw Error(ErrorCode::ElementOutOfRange, "row " + std::to_string(i) + " has wrong length",
                  {i});
    }
    for (int j = 0; j < n; ++j) {
      if (table[i][j] < 0 || table[i][j] >= n) {
        throw Error(ErrorCode::ElementOutOfRange,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") out of range",
                    {i, j});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (table[0][i] != i || table[i][0] != i) {
      throw Error(ErrorCode::NoIdentity, "element 0 is not a two-sided identity at " +
                                             std::to_string(i),
                  {i});
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error(ErrorCode::NonAssociative, "(ab)c != a(bc) at " + fmt_triple(a, b, c),
                      {a, b, c});
  std::vector<int> inverse(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (table[a][b] == 0 && table[b][a] == 0) {
        inverse[a] = b;
        break;
      }
    }
    if (inverse[a] < 0)
      throw Error(ErrorCode::NoInverse, "element " + std::to_string(a) + " has no inverse", {a});
  }
  auto data = std::make_shared<Data>();
  data->table = std::move(table);
  data->inverse = std::move(inverse);
  data->name = std::move(name);
  data->family = std::move(family);
  data->parameter = parameter;
  return FiniteGroup(std::move(data));
}

FiniteGroup FiniteGroup::from_table(Table table, std::string name, int max_order) {
  return make(std::move(table), std::move(name), "table", 0, max_order);
}

FiniteGroup FiniteGroup::cyclic(int n, int max_order) {
  if (n < 1) throw Error(ErrorCode::UnknownFamily, "cyclic order must be positive");
  if (n > max_order) throw Error(ErrorCode::OrderTooLarge, "cyclic(" + std::to_string(n) + ")");
  Table t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return make(std::move(t), "cyclic(" + std::to_string(n) + ")", "cyclic", n, max_order);
}

FiniteGroup FiniteGroup::dihedral(int n, int max_order) {
  if (n < 1) throw Error(ErrorCode::UnknownFamily, "dihedral parameter must be positive");
  if (2 * n > max_order)
    throw Error(ErrorCode::OrderTooLarge, "dihedral(" + std::to_string(n) + ")");
  // element f*n + k acts on Z_n by x -> s*x + k with s = (-1)^f
  const int order = 2 * n;
  Table t(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a) {
    const int fa = a / n, ka = a % n, sa = fa ? -1 : 1;
    for (int b = 0; b < order; ++b) {
      const int fb = b / n, kb = b % n;
      const int k = (((sa * kb + ka) % n) + n) % n;
      t[a][b] = ((fa ^ fb) * n) + k;
    }
  }
  return make(std::move(t), "dihedral(" + std::to_string(n) + ")", "dihedral", n, max_order);
}

FiniteGroup FiniteGroup::symmetric(int n, int max_order) {
  if (n < 1) throw Error(ErrorCode::UnknownFamily, "symmetric degree must be positive");
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(p);
    if (static_cast<int>(perms.size()) > max_order)
      throw Error(ErrorCode::OrderTooLarge, "symmetric(" + std::to_string(n) + ")");
  } while (std::next_permutation(p.begin(), p.end()));
  const int order = static_cast<int>(perms.size());
  Table t(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = static_cast<int>(std::lower_bound(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return make(std::move(t), "symmetric(" + std::to_string(n) + ")", "symmetric", n, max_order);
}

FiniteGroup FiniteGroup::klein4() {
  Table t(4, std::vector<int>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[i][j] = i ^ j;
  return make(std::move(t), "klein4", "klein4", 4, 4);
}

FiniteGroup FiniteGroup::named(const std::string& family, int n, int max_order) {
  if (family == "cyclic") return cyclic(n, max_order);
  if (family == "dihedral") return dihedral(n, max_order);
  if (family == "symmetric") return symmetric(n, max_order);
  if (family == "klein4") return klein4();
  throw Error(ErrorCode::UnknownFamily, "unknown group family '" + family + "'");
}

bool Subgroup::contains(int g) const {
  return std::binary_search(members.begin(), members.end(), g);
}

Subgroup subgroup_closure(const FiniteGroup& group, const std::vector<int>& seed) {
  std::vector<char> in(group.order(), 0);
  std::vector<int> members{0};
  in[0] = 1;
  for (int s : seed) {
    if (!group.contains(s))
      throw Error(ErrorCode::ElementOutOfRange, "seed element " + std::to_string(s), {s});
    if (!in[s]) {
      in[s] = 1;
      members.push_back(s);
    }
  }
  // In a finite group, closure under products already gives inverses.
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (int p : {group.mul(members[i], members[j]), group.mul(members[j], members[i])}) {
        if (!in[p]) {
          in[p] = 1;
          members.push_back(p);
        }
      }
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup{group, std::move(members)};
}

Subgroup make_subgroup(const FiniteGroup& group, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty() || members.front() != 0)
    throw Error(ErrorCode::NotASubgroup, "subgroup must contain the identity");
  for (int m : members)
    if (!group.contains(m))
      throw Error(ErrorCode::ElementOutOfRange, "member " + std::to_string(m), {m});
  Subgroup h{group, std::move(members)};
  for (int a : h.members) {
    if (!h.contains(group.inv(a)))
      throw Error(ErrorCode::NotASubgroup, "not closed under inverse at " + std::to_string(a),
                  {a});
    for (int b : h.members)
      if (!h.contains(group.mul(a, b)))
        throw Error(ErrorCode::NotASubgroup,
                    "not closed under product at (" + std::to_string(a) + "," +
                        std::to_string(b) + ")",
                    {a, b});
  }
  return h;
}

std::vector<std::vector<int>> coset_decomposition(const Subgroup& subgroup, CosetSide side) {
  const FiniteGroup& g = subgroup.parent;
  // re-validate: callers may have built the struct by hand
  make_subgroup(g, subgroup.members);
  std::vector<char> seen(g.order(), 0);
  std::vector<std::vector<int>> blocks;
  for (int x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::vector<int> block;
    for (int h : subgroup.members) {
      const int y = side == CosetSide::Left ? g.mul(x, h) : g.mul(h, x);
      block.push_back(y);
      seen[y] = 1;
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& group) {
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> frontier;
  auto add = [&](const Subgroup& s) {
    if (found.insert(s.members).second) frontier.push_back(s.members);
  };
  add(subgroup_closure(group, {}));
  // every subgroup is generated by adding one element at a time
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const auto base = frontier[i];
    for (int g = 0; g < group.order(); ++g) {
      if (std::binary_search(base.begin(), base.end(), g)) continue;
      auto seed = base;
      seed.push_back(g);
      add(subgroup_closure(group, seed));
    }
  }
  std::vector<Subgroup> out;
  for (const auto& m : found) out.push_back(Subgroup{group, m});
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return out;
}

SubgroupAsGroup as_group(const Subgroup& subgroup) {
  const auto& m = subgroup.members;
  const int n = subgroup.order();
  FiniteGroup::Table t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int p = subgroup.parent.mul(m[i], m[j]);
      t[i][j] = static_cast<int>(std::lower_bound(m.begin(), m.end(), p) - m.begin());
    }
  }
  return {FiniteGroup::from_table(std::move(t), "subgroup of " + subgroup.parent.name(),
                                  subgroup.parent.order()),
          m};
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::ElementOutOfRange: return "ElementOutOfRange";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::IdentityDomainNotFull: return "IdentityDomainNotFull";
    case ErrorCode::IdentityMapNotIdentity: return "IdentityMapNotIdentity";
    case ErrorCode::NotBijective: return "NotBijective";
    case ErrorCode::InverseMismatch: return "InverseMismatch";
    case ErrorCode::CompositionViolation: return "CompositionViolation";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::PointOutOfRange: return "PointOutOfRange";
    case ErrorCode::NOutOfRange: return "NOutOfRange";
    case ErrorCode::TupleNotInSpace: return "TupleNotInSpace";
    case ErrorCode::NotDecomposable: return "NotDecomposable";
    case ErrorCode::EmptyStratum: return "EmptyStratum";
    case ErrorCode::NotSemisimpleOrDegenerate: return "NotSemisimpleOrDegenerate";
    case ErrorCode::IntegralityFailure: return "IntegralityFailure";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BadDelta: return "BadDelta";
    case ErrorCode::OddGrid: return "OddGrid";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace pact
