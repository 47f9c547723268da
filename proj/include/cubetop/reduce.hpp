#pragma once

#include <deque>
#include <stdexcept>
#include <vector>

#include "cubetop/complex.hpp"
#include "cubetop/morse.hpp"
#include "cubetop/redundancy.hpp"

namespace cubetop {

namespace detail {

template <typename Pred>
void enqueue_neighbors(const Cube& q, std::deque<Cube>& queue, Pred present) {
    for (int i : neighbor_scan_order()) {
        const auto& d = neighbor_offsets[i];
        Cube n{{q.p[0] + d[0], q.p[1] + d[1], q.p[2] + d[2]}};
        if (present(n)) queue.push_back(n);
    }
}

}  // namespace detail

// Shaving: repeatedly removes redundant toplexes until none are left. The
// result is a homotopy equivalent subcomplex; a removed cube's neighbours are
// re-examined through the queue after every neighbourhood change.
inline ToplexSet shave(const ToplexSet& k, const OrderingOptions& opts = {},
                       const RedundancyOracle& oracle = default_redundancy_oracle()) {
    ToplexSet result = k;
    std::vector<Cube> order = result.cubes();
    detail::apply_ordering(order, opts);
    std::deque<Cube> queue;

    auto take = [&](const Cube& q) {
        result.erase(q);
        detail::enqueue_neighbors(q, queue, [&](const Cube& n) { return result.contains(n); });
    };

    bool removed_any = true;
    while (removed_any) {
        removed_any = false;
        for (const Cube& q : order) {
            if (!result.contains(q)) continue;
            if (!oracle.is_redundant(result.neighbor_mask(q))) continue;
            removed_any = true;
            take(q);
            while (!queue.empty()) {
                Cube s = queue.front();
                queue.pop_front();
                if (!result.contains(s)) continue;
                if (oracle.is_redundant(result.neighbor_mask(s))) take(s);
            }
        }
    }
    return result;
}

// Grows a collapsible pure subcomplex from the first toplex in the active
// ordering. A candidate joins when it is redundant relative to the part of
// the subcomplex already built, i.e. its closed cube collapses onto the
// contact with it.
inline ToplexSet collapsible_subset(const ToplexSet& k, const OrderingOptions& opts = {},
                                    const RedundancyOracle& oracle = default_redundancy_oracle()) {
    if (k.empty()) throw std::invalid_argument("collapsible_subset of an empty complex");
    ToplexSet grown = ToplexSet::empty_like(k);
    std::vector<Cube> order = k.cubes();
    detail::apply_ordering(order, opts);

    std::deque<Cube> queue;
    auto absorb = [&](const Cube& q) {
        grown.insert(q);
        detail::enqueue_neighbors(q, queue, [&](const Cube& n) {
            return k.contains(n) && !grown.contains(n);
        });
    };

    absorb(order.front());
    while (!queue.empty()) {
        Cube s = queue.front();
        queue.pop_front();
        if (grown.contains(s)) continue;
        if (oracle.is_redundant(grown.neighbor_mask(s))) absorb(s);
    }
    return grown;
}

}  // namespace cubetop
