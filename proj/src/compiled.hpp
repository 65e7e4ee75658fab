// Slot-resolved formula representation and packed tuple sets used by the
// evaluators.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sortlogic/model.hpp"
#include "sortlogic/syntax.hpp"

namespace sortlogic::detail {

enum class Op { Eq, Pred, RelAtom, Not, Or, ExistsInd, ExistsRel, ExistsNew };

struct CNode {
  Op op;
  std::vector<int> args;  // individual slots of an atom
  int pred = -1;
  int slot = -1;  // bound individual slot, or relation slot
  SortId sort = 0;
  std::vector<int> block;
  std::vector<SortId> block_sorts;
  int lhs = -1, rhs = -1;
  std::vector<int> free_rels;  // relation slots free in this subformula
  std::vector<int> free_inds;  // individual slots free in this subformula
};

struct Program {
  std::vector<CNode> nodes;
  int root = -1;
  std::vector<IndVar> inds;
  std::vector<RelVar> rels;
  std::vector<std::string> preds;

  int ind_slot(const IndVar& v) const;
  int rel_slot(const RelVar& v) const;
};

Program compile(const Formula& f);

/// Interns element names as small integers.
class ElementTable {
 public:
  int intern(const Element& name);
  int find(const Element& name) const;
  const Element& name(int id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<Element> names_;
  std::unordered_map<Element, int> ids_;
};

constexpr std::uint64_t kPackBase = 1024;
constexpr std::size_t kMaxPackedArity = 6;

inline std::uint64_t pack_key(const int* ids, std::size_t n) {
  std::uint64_t key = 0;
  for (std::size_t i = n; i-- > 0;) key = key * kPackBase + static_cast<std::uint64_t>(ids[i]);
  return key;
}

/// A relation as a sorted vector of packed tuple keys.
class RelValue {
 public:
  RelValue() = default;
  explicit RelValue(std::vector<std::uint64_t> keys) : keys_(std::move(keys)) {
    std::sort(keys_.begin(), keys_.end());
    keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  }
  bool contains(std::uint64_t key) const { return std::binary_search(keys_.begin(), keys_.end(), key); }
  const std::vector<std::uint64_t>& keys() const { return keys_; }
  bool subset_of(const RelValue& other) const {
    return std::includes(other.keys_.begin(), other.keys_.end(), keys_.begin(), keys_.end());
  }
  friend bool operator==(const RelValue&, const RelValue&) = default;

 private:
  std::vector<std::uint64_t> keys_;
};

using Domains = std::map<SortId, std::vector<int>>;

/// Packed keys of the product of the domains of `sorts`, ascending.
/// Throws if a sort has no domain.
std::vector<std::uint64_t> product_keys(const Domains& domains, const std::vector<SortId>& sorts);

/// Sorted union of every domain.
std::vector<int> union_of(const Domains& domains);

RelValue to_rel_value(ElementTable& table, const TupleSet& tuples);

/// Interns a structure's domains and the program's predicate interpretations.
void load_structure(ElementTable& table, const Structure& m, const Program& p, Domains& domains,
                    std::vector<RelValue>& preds);

}  // namespace sortlogic::detail
