// Index-level enumeration of expansion domains, shared by the public
// enumerator and the evaluators.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace sortlogic::detail {

/// One expansion shape: per block sort, the sorted list of element indices.
/// Indices below `old_count` name existing elements, the rest are fresh.
using Shape = std::vector<std::vector<std::size_t>>;

/// Visits shapes in order of total size, then lexicographically. Each domain
/// is nonempty with at most `bound` elements. Returns false if `visit`
/// stopped the enumeration.
bool for_each_expansion_shape(std::size_t old_count, std::size_t sort_count, std::size_t bound,
                              const std::function<bool(const Shape&)>& visit);

}  // namespace sortlogic::detail
