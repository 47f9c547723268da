#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cubetop/cstructure.hpp"
#include "cubetop/fpgroup.hpp"
#include "cubetop/knots.hpp"
#include "cubetop/morse.hpp"
#include "cubetop/reduce.hpp"
#include "cubetop/serialize.hpp"

namespace cubetop {

inline constexpr const char* pipeline_version = "cubetop-1";

// ---------------------------------------------------------------------------
// fundGroup
// ---------------------------------------------------------------------------

struct FundGroupOptions {
    OrderingOptions ordering{};
    bool multi_strategy = true;   // retry other orderings on large presentations
    int generator_threshold = 4;  // retry when more generators remain
    TietzeOptions tietze{};
    const RedundancyOracle* oracle = nullptr;
    bool validate_quotient = true;
};

struct FundGroupStats {
    size_t input_cubes = 0, shaved_cubes = 0, collapsible_cubes = 0;
    size_t vertices = 0, edges = 0, faces = 0, vectors = 0;
};

struct FundGroupResult {
    GroupPresentation raw;  // presentation read off the fully collapsed C-structure
    GroupPresentation simplified;
    OrderingOptions ordering_used{};
    FundGroupStats stats;
};

namespace detail {

inline FundGroupResult fund_group_once(const ToplexSet& k, const OrderingOptions& ordering,
                                       const FundGroupOptions& opts) {
    const RedundancyOracle& oracle = opts.oracle ? *opts.oracle : default_redundancy_oracle();
    FundGroupResult result;
    result.ordering_used = ordering;
    result.stats.input_cubes = k.size();

    ToplexSet shaved = shave(k, ordering, oracle);
    result.stats.shaved_cubes = shaved.size();
    ToplexSet a = collapsible_subset(shaved, ordering, oracle);
    result.stats.collapsible_cubes = a.size();

    CStructure c = from_quotient(shaved, a, opts.validate_quotient);
    result.stats.vertices = c.alive_vertices().size();
    result.stats.edges = c.alive_edges().size();
    result.stats.faces = c.alive_faces().size();

    auto field = coreduction_dvf(CStructureView(c), ordering);
    result.stats.vectors = field.vectors.size();
    for (const auto& [tau, sigma] : field.vectors) c.collapse(to_reduction_pair(tau, sigma));

    result.raw = c.presentation();
    result.simplified = tietze_simplify(result.raw, opts.tietze);
    return result;
}

}  // namespace detail

// Full pipeline: shaving, collapsible subcomplex, quotient C-structure,
// coreduction field, collapse of every vector, then Tietze simplification.
// When the simplified presentation keeps more generators than the threshold,
// the other cell orderings are tried and the smallest result kept.
inline FundGroupResult fund_group_full(const ToplexSet& k, const FundGroupOptions& opts = {}) {
    if (k.empty()) throw std::invalid_argument("fundGroup of an empty complex");
    size_t ncomp = k.components(false).size();
    if (ncomp != 1)
        throw std::invalid_argument("complex is disconnected (" + std::to_string(ncomp) +
                                    " components)");
    FundGroupResult best = detail::fund_group_once(k, opts.ordering, opts);
    if (!opts.multi_strategy || best.simplified.generators <= opts.generator_threshold)
        return best;
    auto better = [](const FundGroupResult& x, const FundGroupResult& y) {
        if (x.simplified.generators != y.simplified.generators)
            return x.simplified.generators < y.simplified.generators;
        return x.simplified.total_length() < y.simplified.total_length();
    };
    for (CellOrdering policy : {CellOrdering::lex, CellOrdering::revlex, CellOrdering::random}) {
        if (policy == opts.ordering.policy) continue;
        OrderingOptions alt{policy, opts.ordering.seed};
        FundGroupResult candidate = detail::fund_group_once(k, alt, opts);
        if (better(candidate, best)) best = std::move(candidate);
    }
    return best;
}

inline GroupPresentation fund_group(const ToplexSet& k, const FundGroupOptions& opts = {}) {
    return fund_group_full(k, opts).simplified;
}

// ---------------------------------------------------------------------------
// Invariant cache
// ---------------------------------------------------------------------------

inline uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Disk cache for I^n values, content-addressed by diagram text, level and
// pipeline version. Hits are byte-identical to recomputation.
class InvariantCache {
public:
    explicit InvariantCache(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }

    static std::string key(const GridDiagram& d, int n) {
        std::string payload = d.text() + "|" + pipeline_version + "|" + std::to_string(n);
        std::ostringstream ss;
        ss << std::hex << fnv1a64(payload);
        return ss.str();
    }

    std::optional<InvariantValue> lookup(const GridDiagram& d, int n) const {
        std::ifstream in(dir_ / (key(d, n) + ".json"));
        if (!in) return std::nullopt;
        nlohmann::json j;
        in >> j;
        return invariant_from_json(j);
    }

    void store(const GridDiagram& d, int n, const InvariantValue& value) const {
        auto path = dir_ / (key(d, n) + ".json");
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            out << to_json(value) << '\n';
        }
        std::filesystem::rename(tmp, path);
    }

private:
    std::filesystem::path dir_;
};

// ---------------------------------------------------------------------------
// Knot invariants and classification
// ---------------------------------------------------------------------------

struct KnotPipelineOptions {
    int pad = 2;
    FundGroupOptions fund_group{};
};

// Computes and memoizes per-knot presentations and I^n values; optionally
// backed by a disk cache. Safe to call from several workers.
class KnotInvariantProvider {
public:
    KnotInvariantProvider(std::vector<std::pair<std::string, GridDiagram>> knots,
                          KnotPipelineOptions opts = {},
                          const InvariantCache* cache = nullptr)
        : opts_(opts), cache_(cache) {
        for (auto& [name, diagram] : knots) diagrams_.emplace(name, diagram);
    }

    const GridDiagram& diagram(const std::string& name) const { return diagrams_.at(name); }

    GroupPresentation presentation(const std::string& name) {
        {
            std::lock_guard lock(mu_);
            auto it = presentations_.find(name);
            if (it != presentations_.end()) return it->second;
        }
        KnotEmbedding emb = embed_complement(diagram(name), opts_.pad);
        GroupPresentation p = fund_group(emb.complement, opts_.fund_group);
        std::lock_guard lock(mu_);
        return presentations_.emplace(name, std::move(p)).first->second;
    }

    InvariantValue invariant(const std::string& name, int n) {
        auto memo_key = std::make_pair(name, n);
        {
            std::lock_guard lock(mu_);
            auto it = values_.find(memo_key);
            if (it != values_.end()) return it->second;
        }
        InvariantValue value;
        if (cache_) {
            if (auto hit = cache_->lookup(diagram(name), n)) {
                value = std::move(*hit);
            } else {
                value = invariant_In(presentation(name), n);
                cache_->store(diagram(name), n, value);
            }
        } else {
            value = invariant_In(presentation(name), n);
        }
        std::lock_guard lock(mu_);
        return values_.emplace(memo_key, std::move(value)).first->second;
    }

private:
    std::map<std::string, GridDiagram> diagrams_;
    KnotPipelineOptions opts_;
    const InvariantCache* cache_;
    std::mutex mu_;
    std::map<std::string, GroupPresentation> presentations_;
    std::map<std::pair<std::string, int>, InvariantValue> values_;
};

struct ClassifyOptions {
    int n_start = 2;
    int n_max = 7;
    unsigned jobs = 1;
};

struct Evaluation {
    std::string knot;
    int n = 0;
    InvariantValue value;
};

struct ClassificationRecord {
    int classifying_index = 0;                                            // N
    std::vector<std::string> knot_order;                                  // input order
    std::map<std::string, std::pair<int, InvariantValue>> final_invariant;  // C
    std::map<std::string, std::string> unique_knot;  // D, keyed by invariant text
    std::vector<Evaluation> evaluations;             // dequeue order
    std::vector<std::vector<std::string>> unresolved;  // collision groups past n_max

    bool complete() const { return unresolved.empty(); }
};

// The classifying-index driver. Every knot is seeded at n_start; whenever an
// invariant value recurs, all knots that ever produced it lose their entry
// and re-enter the queue one level higher, guarded by the seen set. Knots
// that would pass n_max are reported as unresolved collision groups instead
// of being re-enqueued. Invariant evaluations of a same-level block may run
// in a worker pool; bookkeeping is serialized in dequeue order, so the result
// does not depend on the worker count.
inline ClassificationRecord classify(const std::vector<std::pair<std::string, GridDiagram>>& knots,
                                     KnotInvariantProvider& provider,
                                     const ClassifyOptions& opts = {}) {
    ClassificationRecord rec;
    std::deque<std::pair<std::string, int>> queue;
    std::set<std::pair<std::string, int>> seen;                              // A
    std::map<std::string, std::vector<std::pair<std::string, int>>> hits;    // I
    std::map<std::string, std::pair<int, InvariantValue>> current;           // C
    std::map<std::string, std::string> unique;                               // D
    std::set<std::string> unresolved_keys;

    for (const auto& [name, diagram] : knots) {
        rec.knot_order.push_back(name);
        queue.emplace_back(name, opts.n_start);
        seen.emplace(name, opts.n_start);
    }

    while (!queue.empty()) {
        const int level = queue.front().second;
        std::vector<std::pair<std::string, int>> block;
        while (!queue.empty() && queue.front().second == level) {
            block.push_back(queue.front());
            queue.pop_front();
        }

        std::vector<InvariantValue> values(block.size());
        unsigned jobs = std::max(1u, opts.jobs);
        if (jobs == 1 || block.size() == 1) {
            for (size_t i = 0; i < block.size(); ++i)
                values[i] = provider.invariant(block[i].first, block[i].second);
        } else {
            std::atomic<size_t> next{0};
            auto worker = [&] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= block.size()) break;
                    values[i] = provider.invariant(block[i].first, block[i].second);
                }
            };
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < std::min<size_t>(jobs, block.size()); ++t)
                pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }

        for (size_t bi = 0; bi < block.size(); ++bi) {
            const auto& [knot, n] = block[bi];
            rec.classifying_index = std::max(rec.classifying_index, n);
            const InvariantValue& value = values[bi];
            const std::string key = to_string(value);
            rec.evaluations.push_back({knot, n, value});
            auto it = hits.find(key);
            if (it == hits.end()) {
                hits[key].emplace_back(knot, n);
                unique[key] = knot;
                current[knot] = {n, value};
            } else {
                it->second.emplace_back(knot, n);
                unique.erase(key);
                for (const auto& [collided, cn] : it->second) {
                    current.erase(collided);
                    if (!seen.contains({collided, cn + 1})) {
                        if (cn + 1 > opts.n_max) {
                            unresolved_keys.insert(key);
                        } else {
                            queue.emplace_back(collided, cn + 1);
                            seen.emplace(collided, cn + 1);
                        }
                    }
                }
            }
        }
    }

    rec.final_invariant = std::move(current);
    rec.unique_knot = std::move(unique);
    for (const std::string& key : unresolved_keys) {
        std::vector<std::string> group;
        for (const auto& [knot, n] : hits.at(key))
            if (std::find(group.begin(), group.end(), knot) == group.end()) group.push_back(knot);
        rec.unresolved.push_back(std::move(group));
    }
    return rec;
}

// ---------------------------------------------------------------------------
// Result persistence
// ---------------------------------------------------------------------------

inline void write_results_jsonl(const ClassificationRecord& rec, std::ostream& os) {
    for (const Evaluation& e : rec.evaluations) {
        nlohmann::json j{{"knot", e.knot}, {"n", e.n}, {"invariant", to_json(e.value)}};
        os << j.dump() << '\n';
    }
}

inline void write_report_csv(const ClassificationRecord& rec, std::ostream& os) {
    os << "knot,classifying_index,invariant\n";
    for (const std::string& name : rec.knot_order) {
        auto it = rec.final_invariant.find(name);
        if (it == rec.final_invariant.end()) {
            os << name << ",unresolved,\n";
        } else {
            os << name << ',' << it->second.first << ",\"" << to_string(it->second.second)
               << "\"\n";
        }
    }
}

inline std::string classification_summary(const ClassificationRecord& rec) {
    std::ostringstream os;
    os << "knots: " << rec.knot_order.size() << '\n';
    for (const std::string& name : rec.knot_order) {
        auto it = rec.final_invariant.find(name);
        if (it == rec.final_invariant.end())
            os << "  " << name << ": unresolved\n";
        else
            os << "  " << name << ": n=" << it->second.first << "  I^n = "
               << to_string(it->second.second) << '\n';
    }
    if (!rec.unresolved.empty()) {
        os << "unresolved groups:\n";
        for (const auto& group : rec.unresolved) {
            os << " ";
            for (const auto& k : group) os << ' ' << k;
            os << '\n';
        }
    }
    os << "classifying index N = " << rec.classifying_index << '\n';
    return os.str();
}

}  // namespace cubetop
