#pragma once

#include <memory>
#include <string>
#include <vector>

namespace pact {

inline constexpr int kDefaultMaxGroupOrder = 24;

/// Finite group given by its multiplication table. Elements are the dense
/// indices 0..order-1 and 0 is the identity. Copies share the table.
class FiniteGroup {
 public:
  using Table = std::vector<std::vector<int>>;

  /// Validates group axioms; throws Error(NonAssociative / NoIdentity /
  /// NoInverse) naming the offending triple or element.
  static FiniteGroup from_table(Table table, std::string name = "table",
                                int max_order = kDefaultMaxGroupOrder);

  /// Named families with canonical element order:
  ///   cyclic(n)    residues 0..n-1 under addition
  ///   dihedral(n)  symmetries of the n-gon (order 2n): x -> x+k are 0..n-1,
  ///                x -> -x+k are n..2n-1
  ///   symmetric(n) permutations of {0..n-1} in lexicographic order, product
  ///                is composition (pq)(i) = p(q(i))
  ///   klein4       Z2 x Z2 with bitwise xor
  static FiniteGroup cyclic(int n, int max_order = kDefaultMaxGroupOrder);
  static FiniteGroup dihedral(int n, int max_order = kDefaultMaxGroupOrder);
  static FiniteGroup symmetric(int n, int max_order = kDefaultMaxGroupOrder);
  static FiniteGroup klein4();
  static FiniteGroup named(const std::string& family, int n,
                           int max_order = kDefaultMaxGroupOrder);

  int order() const { return static_cast<int>(data_->table.size()); }
  int mul(int a, int b) const { return data_->table[a][b]; }
  int inv(int a) const { return data_->inverse[a]; }
  const Table& table() const { return data_->table; }
  const std::string& name() const { return data_->name; }
  /// Family and parameter as accepted by named(); family is "table" for
  /// explicit tables.
  const std::string& family() const { return data_->family; }
  int family_parameter() const { return data_->parameter; }

  bool contains(int g) const { return g >= 0 && g < order(); }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.data_ == b.data_ || a.table() == b.table();
  }

 private:
  struct Data {
    Table table;
    std::vector<int> inverse;
    std::string name;
    std::string family;
    int parameter = 0;
  };
  explicit FiniteGroup(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  static FiniteGroup make(Table table, std::string name, std::string family,
                          int parameter, int max_order);

  std::shared_ptr<const Data> data_;
};

/// Subset of a group closed under products and inverses; members sorted.
struct Subgroup {
  FiniteGroup parent;
  std::vector<int> members;

  int order() const { return static_cast<int>(members.size()); }
  bool contains(int g) const;
  bool is_trivial() const { return members.size() == 1; }
};

Subgroup subgroup_closure(const FiniteGroup& group, const std::vector<int>& seed);

/// Throws NotASubgroup unless members is a subgroup of group.
Subgroup make_subgroup(const FiniteGroup& group, std::vector<int> members);

enum class CosetSide { Left, Right };

/// Cosets gH (left) or Hg (right) as sorted blocks; the block containing 0
/// comes first, the rest ordered by their least element.
std::vector<std::vector<int>> coset_decomposition(const Subgroup& subgroup,
                                                  CosetSide side);

/// Every subgroup of the group, ordered by (order, members).
std::vector<Subgroup> all_subgroups(const FiniteGroup& group);

/// The subgroup as an abstract group with elements renumbered 0..|H|-1 in
/// the order of members (member 0 is the identity). `to_parent[i]` is the
/// parent index of element i.
struct SubgroupAsGroup {
  FiniteGroup group;
  std::vector<int> to_parent;
};
SubgroupAsGroup as_group(const Subgroup& subgroup);

}  // namespace pact
