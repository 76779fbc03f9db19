#include "divsub/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <queue>
#include <set>
#include <sstream>

#include "divsub/error.hpp"

namespace divsub {

namespace {

constexpr std::uint32_t kAddTableMaxOrder = 512;
constexpr std::uint64_t kMaxOrder = 1u << 24;
constexpr std::size_t kMaxSubgroups = 200000;

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::uint32_t> cyclic_factors)
    : factors_(std::move(cyclic_factors)) {
  if (factors_.empty()) factors_.push_back(1);
  std::uint64_t order = 1;
  for (auto d : factors_) {
    if (d == 0) throw StructuralError("cyclic factor must be positive");
    order *= d;
    if (order > kMaxOrder) throw ResourceError("group order exceeds " + std::to_string(kMaxOrder));
  }
  order_ = static_cast<std::uint32_t>(order);
  strides_.assign(factors_.size(), 1);
  for (std::size_t j = factors_.size(); j-- > 1;) strides_[j - 1] = strides_[j] * factors_[j];

  neg_table_.resize(order_);
  for (std::uint32_t a = 0; a < order_; ++a) {
    std::uint32_t code = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      auto r = (a / strides_[j]) % factors_[j];
      code += ((factors_[j] - r) % factors_[j]) * strides_[j];
    }
    neg_table_[a] = code;
  }
  if (order_ <= kAddTableMaxOrder) {
    add_table_.resize(static_cast<std::size_t>(order_) * order_);
    for (std::uint32_t a = 0; a < order_; ++a)
      for (std::uint32_t b = 0; b < order_; ++b)
        add_table_[static_cast<std::size_t>(a) * order_ + b] = add_digits(Element{a}, Element{b}).code();
  }
}

void FiniteAbelianGroup::check(Element a) const {
  if (a.code() >= order_)
    throw StructuralError("element code " + std::to_string(a.code()) + " is not in " + to_string());
}

Element FiniteAbelianGroup::element(std::span<const std::int64_t> residues) const {
  if (residues.size() != factors_.size())
    throw StructuralError("expected " + std::to_string(factors_.size()) + " residues for " +
                          to_string() + ", got " + std::to_string(residues.size()));
  std::uint32_t code = 0;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    auto d = static_cast<std::int64_t>(factors_[j]);
    auto r = ((residues[j] % d) + d) % d;
    code += static_cast<std::uint32_t>(r) * strides_[j];
  }
  return Element{code};
}

Element FiniteAbelianGroup::element(std::initializer_list<std::int64_t> residues) const {
  return element(std::span<const std::int64_t>(residues.begin(), residues.size()));
}

std::vector<std::uint32_t> FiniteAbelianGroup::residues(Element a) const {
  check(a);
  std::vector<std::uint32_t> out(factors_.size());
  for (std::size_t j = 0; j < factors_.size(); ++j) out[j] = (a.code() / strides_[j]) % factors_[j];
  return out;
}

Element FiniteAbelianGroup::unit() const {
  std::uint32_t code = 0;
  for (std::size_t j = 0; j < factors_.size(); ++j) code += (1 % factors_[j]) * strides_[j];
  return Element{code};
}

Element FiniteAbelianGroup::add_digits(Element a, Element b) const {
  std::uint32_t code = 0;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    auto ra = (a.code() / strides_[j]) % factors_[j];
    auto rb = (b.code() / strides_[j]) % factors_[j];
    code += ((ra + rb) % factors_[j]) * strides_[j];
  }
  return Element{code};
}

Element FiniteAbelianGroup::add(Element a, Element b) const {
  check(a);
  check(b);
  if (!add_table_.empty()) return Element{add_table_[static_cast<std::size_t>(a.code()) * order_ + b.code()]};
  return add_digits(a, b);
}

Element FiniteAbelianGroup::neg(Element a) const {
  check(a);
  return Element{neg_table_[a.code()]};
}

Element FiniteAbelianGroup::multiple(Element a, std::int64_t k) const {
  check(a);
  if (k < 0) return multiple(neg(a), -k);
  Element acc = zero();
  Element base = a;
  while (k > 0) {
    if (k & 1) acc = add(acc, base);
    base = add(base, base);
    k >>= 1;
  }
  return acc;
}

std::vector<Element> FiniteAbelianGroup::elements() const {
  std::vector<Element> out;
  out.reserve(order_);
  for (std::uint32_t a = 0; a < order_; ++a) out.emplace_back(a);
  return out;
}

std::string FiniteAbelianGroup::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    if (j) out += " x ";
    out += "Z_" + std::to_string(factors_[j]);
  }
  return out;
}

std::string FiniteAbelianGroup::format(Element a) const {
  auto r = residues(a);
  std::string out = "(";
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (j) out += ",";
    out += std::to_string(r[j]);
  }
  return out + ")";
}

GroupPtr make_group(std::vector<std::uint32_t> cyclic_factors) {
  return std::make_shared<const FiniteAbelianGroup>(std::move(cyclic_factors));
}

namespace {

std::uint32_t parse_positive(std::string_view text, std::string_view whole) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0)
    throw ParseError("bad number '" + std::string(text) + "' in group spec '" + std::string(whole) + "'");
  return value;
}

}  // namespace

GroupPtr parse_group(std::string_view spec) {
  std::string compact;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  // "×" arrives as a two-byte UTF-8 sequence; normalise it.
  for (std::size_t pos; (pos = compact.find("\xC3\x97")) != std::string::npos;) compact.replace(pos, 2, "x");
  if (compact.empty()) throw ParseError("empty group spec");

  std::vector<std::uint32_t> factors;
  std::size_t start = 0;
  while (start <= compact.size()) {
    auto end = compact.find_first_of("x*", start);
    if (end == std::string::npos) end = compact.size();
    std::string_view term(compact.data() + start, end - start);
    if (term.size() < 2 || term[0] != 'Z') throw ParseError("bad term '" + std::string(term) + "' in group spec '" + std::string(spec) + "'");
    term.remove_prefix(1);
    if (term.front() == '_') term.remove_prefix(1);
    std::uint32_t copies = 1;
    if (auto caret = term.find('^'); caret != std::string_view::npos) {
      copies = parse_positive(term.substr(caret + 1), spec);
      term = term.substr(0, caret);
    }
    auto q = parse_positive(term, spec);
    for (std::uint32_t i = 0; i < copies; ++i) factors.push_back(q);
    if (end == compact.size()) break;
    start = end + 1;
  }
  return make_group(std::move(factors));
}

// ---------------------------------------------------------------------------

Subgroup::Subgroup(GroupPtr parent, std::vector<Element> generators, std::vector<Element> elements)
    : parent_(std::move(parent)), generators_(std::move(generators)), elements_(std::move(elements)) {
  member_.assign(parent_->order(), 0);
  for (auto e : elements_) member_[e.code()] = 1;
}

Subgroup::Subgroup(GroupPtr parent, std::vector<Element> generators)
    : Subgroup(generate_subgroup(parent, generators)) {}

Subgroup Subgroup::trivial(GroupPtr parent) {
  auto zero = parent->zero();
  return Subgroup(std::move(parent), {}, {zero});
}

Subgroup Subgroup::whole(GroupPtr parent) {
  auto all = parent->elements();
  return Subgroup(std::move(parent), all, all);
}

Subgroup Subgroup::from_closed_set(GroupPtr parent, std::vector<Element> elements) {
  auto gens = elements;
  return from_closed_set(std::move(parent), std::move(elements), std::move(gens));
}

Subgroup Subgroup::from_closed_set(GroupPtr parent, std::vector<Element> elements, std::vector<Element> generators) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return Subgroup(std::move(parent), std::move(generators), std::move(elements));
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
  return std::all_of(elements_.begin(), elements_.end(), [&](Element e) { return other.contains(e); });
}

std::string Subgroup::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) out += ",";
    out += parent_->format(elements_[i]);
  }
  return out + "}";
}

std::size_t QuotientView::coset_of(Element a) const {
  if (a.code() >= index_of.size() || index_of[a.code()] == npos)
    throw DomainError("element is not in the quotient's numerator");
  return index_of[a.code()];
}

// ---------------------------------------------------------------------------

std::vector<Element> sumset(const FiniteAbelianGroup& group, std::span<const std::vector<Element>> parts) {
  std::vector<char> current(group.order(), 0);
  current[0] = 1;
  for (const auto& part : parts) {
    std::vector<char> next(group.order(), 0);
    for (std::uint32_t a = 0; a < group.order(); ++a) {
      if (!current[a]) continue;
      for (auto b : part) next[group.add(Element{a}, b).code()] = 1;
    }
    current.swap(next);
  }
  std::vector<Element> out;
  for (std::uint32_t a = 0; a < group.order(); ++a)
    if (current[a]) out.emplace_back(a);
  return out;
}

Subgroup generate_subgroup(const GroupPtr& group, std::span<const Element> generators) {
  std::vector<Element> gens(generators.begin(), generators.end());
  for (auto g : gens)
    if (!group->contains(g)) throw StructuralError("generator is not an element of " + group->to_string());
  std::vector<Element> current{group->zero()};
  for (auto g : gens) {
    std::vector<Element> cyclic{group->zero()};
    for (auto x = g; x != group->zero(); x = group->add(x, g)) cyclic.push_back(x);
    std::vector<std::vector<Element>> parts{current, cyclic};
    current = sumset(*group, parts);
  }
  return Subgroup::from_closed_set(group, std::move(current), std::move(gens));
}

namespace {

bool subgroup_less(const std::vector<Element>& a, const std::vector<Element>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::vector<Subgroup> enumerate_subgroups(const GroupPtr& group, std::uint32_t order_cap) {
  if (group->order() > order_cap)
    throw ResourceError("subgroup enumeration capped at order " + std::to_string(order_cap) + ", group " +
                        group->to_string() + " has order " + std::to_string(group->order()));
  std::set<std::vector<Element>> cyclic_sets;
  for (auto a : group->elements()) {
    auto g = std::vector<Element>{a};
    cyclic_sets.insert(generate_subgroup(group, g).elements());
  }
  std::vector<std::vector<Element>> cyclic(cyclic_sets.begin(), cyclic_sets.end());

  std::set<std::vector<Element>> known(cyclic.begin(), cyclic.end());
  std::queue<std::vector<Element>> pending;
  for (const auto& c : cyclic) pending.push(c);
  while (!pending.empty()) {
    auto s = std::move(pending.front());
    pending.pop();
    for (const auto& c : cyclic) {
      std::vector<std::vector<Element>> parts{s, c};
      auto joined = sumset(*group, parts);
      if (known.insert(joined).second) {
        if (known.size() > kMaxSubgroups) throw ResourceError("more than " + std::to_string(kMaxSubgroups) + " subgroups");
        pending.push(std::move(joined));
      }
    }
  }
  std::vector<std::vector<Element>> sets(known.begin(), known.end());
  std::sort(sets.begin(), sets.end(), subgroup_less);
  std::vector<Subgroup> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.push_back(Subgroup::from_closed_set(group, std::move(s)));
  return out;
}

Subgroup halving_preimage(const GroupPtr& group, const Subgroup& b) {
  std::vector<Element> out;
  for (auto a : group->elements())
    if (b.contains(group->twice(a))) out.push_back(a);
  return Subgroup::from_closed_set(group, std::move(out));
}

std::uint64_t sigma(const GroupPtr& group, std::uint32_t order_cap) {
  std::uint64_t best = 0;
  for (const auto& b : enumerate_subgroups(group, order_cap)) {
    auto pre = halving_preimage(group, b);
    if (pre.size() % b.size() != 0) throw SoundnessError("halving preimage is not a union of cosets");
    best = std::max<std::uint64_t>(best, pre.size() / b.size());
  }
  return best;
}

QuotientView quotient(const Subgroup& numerator, const Subgroup& denominator) {
  if (!(*numerator.parent() == *denominator.parent())) throw StructuralError("quotient of subgroups of different groups");
  if (!denominator.is_subset_of(numerator))
    throw StructuralError("denominator " + denominator.to_string() + " is not contained in " + numerator.to_string());
  const auto& group = numerator.group();
  QuotientView view{numerator, denominator, {}, {}, std::vector<std::uint32_t>(group.order(), QuotientView::npos)};
  for (auto a : numerator.elements()) {
    if (view.index_of[a.code()] != QuotientView::npos) continue;
    std::vector<Element> coset;
    for (auto b : denominator.elements()) coset.push_back(group.add(a, b));
    std::sort(coset.begin(), coset.end());
    auto idx = static_cast<std::uint32_t>(view.cosets.size());
    for (auto c : coset) view.index_of[c.code()] = idx;
    view.labels.push_back(coset.front());
    view.cosets.push_back(std::move(coset));
  }
  // numerator elements are visited in ascending order, so labels are already ascending
  return view;
}

Subgroup stabilizer(const GroupPtr& group, std::span<const Element> set) {
  if (set.empty()) throw DomainError("stabilizer of the empty set");
  std::vector<char> in(group->order(), 0);
  for (auto s : set) in[s.code()] = 1;
  std::vector<Element> out;
  for (auto t : group->elements()) {
    bool ok = std::all_of(set.begin(), set.end(), [&](Element s) { return in[group->add(s, t).code()] != 0; });
    if (ok) out.push_back(t);
  }
  return Subgroup::from_closed_set(group, std::move(out));
}

}  // namespace divsub
