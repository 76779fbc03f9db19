#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace divsub {

// An element of a finite abelian group, encoded as a mixed-radix integer over
// the group's cyclic factors. The first factor is the most significant digit, so
// numeric order of codes is lexicographic order of residue vectors.
class Element {
 public:
  constexpr Element() = default;
  constexpr explicit Element(std::uint32_t code) : code_(code) {}

  [[nodiscard]] constexpr std::uint32_t code() const { return code_; }

  constexpr auto operator<=>(const Element&) const = default;

 private:
  std::uint32_t code_ = 0;
};

// Direct sum Z_{d_1} + ... + Z_{d_k} of cyclic groups. Immutable.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<std::uint32_t> cyclic_factors);

  [[nodiscard]] const std::vector<std::uint32_t>& factors() const { return factors_; }
  [[nodiscard]] std::size_t rank() const { return factors_.size(); }
  [[nodiscard]] std::uint32_t order() const { return order_; }

  [[nodiscard]] Element zero() const { return Element{0}; }
  [[nodiscard]] bool contains(Element a) const { return a.code() < order_; }

  // Builds an element from residues, reducing each modulo its factor.
  [[nodiscard]] Element element(std::span<const std::int64_t> residues) const;
  [[nodiscard]] Element element(std::initializer_list<std::int64_t> residues) const;
  [[nodiscard]] std::vector<std::uint32_t> residues(Element a) const;

  // The element with residue 1 in every factor.
  [[nodiscard]] Element unit() const;

  [[nodiscard]] Element add(Element a, Element b) const;
  [[nodiscard]] Element neg(Element a) const;
  [[nodiscard]] Element sub(Element a, Element b) const { return add(a, neg(b)); }
  [[nodiscard]] Element twice(Element a) const { return add(a, a); }
  [[nodiscard]] Element multiple(Element a, std::int64_t k) const;

  [[nodiscard]] std::vector<Element> elements() const;

  // "Z_2 x Z_3"; the trivial group is "Z_1".
  [[nodiscard]] std::string to_string() const;
  // "(1,2)"
  [[nodiscard]] std::string format(Element a) const;

  bool operator==(const FiniteAbelianGroup& other) const { return factors_ == other.factors_; }

 private:
  void check(Element a) const;
  [[nodiscard]] Element add_digits(Element a, Element b) const;

  std::vector<std::uint32_t> factors_;
  std::vector<std::uint32_t> strides_;
  std::uint32_t order_ = 1;
  std::vector<std::uint32_t> add_table_;  // order^2 entries when small enough
  std::vector<std::uint32_t> neg_table_;
};

using GroupPtr = std::shared_ptr<const FiniteAbelianGroup>;

GroupPtr make_group(std::vector<std::uint32_t> cyclic_factors);

// Accepts "Z_q", "Zq", "Z_a x Z_b x ...", and "Z2^d" / "Z_2^d" for d copies of Z_2.
GroupPtr parse_group(std::string_view spec);

// A subgroup stored as an explicit sorted element set plus the generators it was
// built from.
class Subgroup {
 public:
  // Closure of `generators` inside `parent`.
  Subgroup(GroupPtr parent, std::vector<Element> generators);

  static Subgroup trivial(GroupPtr parent);
  static Subgroup whole(GroupPtr parent);
  // Wraps a set already known to be closed; the set doubles as generator list.
  static Subgroup from_closed_set(GroupPtr parent, std::vector<Element> elements);
  static Subgroup from_closed_set(GroupPtr parent, std::vector<Element> elements, std::vector<Element> generators);

  [[nodiscard]] const GroupPtr& parent() const { return parent_; }
  [[nodiscard]] const FiniteAbelianGroup& group() const { return *parent_; }
  [[nodiscard]] const std::vector<Element>& elements() const { return elements_; }
  [[nodiscard]] const std::vector<Element>& generators() const { return generators_; }
  [[nodiscard]] std::size_t size() const { return elements_.size(); }
  [[nodiscard]] bool contains(Element a) const {
    return a.code() < member_.size() && member_[a.code()] != 0;
  }
  [[nodiscard]] bool is_subset_of(const Subgroup& other) const;
  [[nodiscard]] bool is_trivial() const { return elements_.size() == 1; }
  [[nodiscard]] std::string to_string() const;

  bool operator==(const Subgroup& other) const { return elements_ == other.elements_; }

 private:
  Subgroup(GroupPtr parent, std::vector<Element> generators, std::vector<Element> elements);

  GroupPtr parent_;
  std::vector<Element> generators_;
  std::vector<Element> elements_;
  std::vector<char> member_;
};

// Coset decomposition of numerator / denominator. Cosets are ordered by label,
// the label being the smallest element code in the coset.
struct QuotientView {
  Subgroup numerator;
  Subgroup denominator;
  std::vector<std::vector<Element>> cosets;
  std::vector<Element> labels;
  std::vector<std::uint32_t> index_of;  // element code -> coset index, or npos

  static constexpr std::uint32_t npos = 0xffffffffu;

  [[nodiscard]] std::size_t size() const { return cosets.size(); }
  // Index of the coset containing `a`; `a` must lie in the numerator.
  [[nodiscard]] std::size_t coset_of(Element a) const;
};

inline constexpr std::uint32_t kDefaultSubgroupCap = 512;

Subgroup generate_subgroup(const GroupPtr& group, std::span<const Element> generators);

// {a_1 + ... + a_k : a_i in parts[i]}; the empty list sums to {0}. Sorted output.
std::vector<Element> sumset(const FiniteAbelianGroup& group,
                            std::span<const std::vector<Element>> parts);

// Every subgroup exactly once, ordered by size then lexicographically by element
// set. Computed as the closure of the cyclic subgroups under joins.
std::vector<Subgroup> enumerate_subgroups(const GroupPtr& group,
                                          std::uint32_t order_cap = kDefaultSubgroupCap);

// {a : 2a in B}. Always a subgroup containing B.
Subgroup halving_preimage(const GroupPtr& group, const Subgroup& b);

// max over subgroups B of [halving_preimage(B) : B].
std::uint64_t sigma(const GroupPtr& group, std::uint32_t order_cap = kDefaultSubgroupCap);

QuotientView quotient(const Subgroup& numerator, const Subgroup& denominator);

// {t in A : S + t is contained in S}. A subgroup whenever S is nonempty.
Subgroup stabilizer(const GroupPtr& group, std::span<const Element> set);

}  // namespace divsub
