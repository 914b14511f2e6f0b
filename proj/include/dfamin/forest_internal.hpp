#pragma once

#include <functional>
#include <vector>

#include "dfamin/distance.hpp"

// Internals shared by the forest construction translation units.

namespace dfamin {
namespace internal {

// Phase-by-phase grouping of n items by their key rows.  cur holds one row
// of `width` int32 cells per item.  Cells whose column is flagged in
// merge_col hold item ids and are rewritten when their item merges away
// (largest-counter rule); other cells are opaque key material.  on_phase
// runs at the start of every phase and may update opaque cells, reporting
// the items it changed; it returns true while updates may still come in
// later phases.  Items joined in phase l become siblings under a node of
// level l in the returned forest (leaves are the items).  max_phase bounds
// the phase count; overrunning it reports a precondition failure.
DistanceForest run_phases(
    int32_t n, int32_t width, std::vector<int32_t>& cur,
    const std::vector<char>& merge_col,
    const std::function<bool(int64_t, std::vector<int32_t>&)>& on_phase,
    int64_t max_phase, BuildStats* stats);

DistanceForest build_forest_total(const Dfa& d, BuildStats* stats);
DistanceForest build_forest_partial(const Dfa& d, BuildStats* stats);

}  // namespace internal
}  // namespace dfamin
