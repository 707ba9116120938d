#include "tracemine/sample.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>

#include "tracemine/errors.hpp"

namespace tracemine {

namespace {

// Probabilities below this are treated as zero (see header).
constexpr double kTiny = 0x1.0p-60;

double flush_tiny(double x) { return x < kTiny ? 0.0 : x; }

} // namespace

double choose_p(double epsilon, double oversample_c, std::uint64_t total) {
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw DomainError("epsilon must be in (0,1], got " + std::to_string(epsilon));
    }
    if (!(oversample_c > 1.0)) {
        throw DomainError("oversampling constant must exceed 1, got " +
                          std::to_string(oversample_c));
    }
    if (total == 0) {
        throw DomainError("cannot choose p for an empty trace multiset");
    }
    return std::min(1.0, oversample_c / (epsilon * static_cast<double>(total)));
}

std::size_t select_next_recursing(std::span<const double> q,
                                  std::span<const double> pbar,
                                  std::size_t start, Rng& rng) {
    const std::size_t d = pbar.size();
    double bound = q[start - 1];
    if (bound <= 0.0) {
        // Underflowed prefix: at least one earlier child recurses with
        // certainty; decide the rest child by child.
        for (std::size_t j = start; j <= d; ++j) {
            double pb = pbar[j - 1];
            if (pb >= 1.0) continue;                      // never recurses
            if (pb <= 0.0 || rng.uniform() >= pb) return j;
        }
        return 0;
    }
    double r = rng.uniform() * bound;
    if (r < q[d]) return 0; // every remaining child skipped
    std::size_t lo = start, hi = d;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (q[mid] <= r) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

std::vector<std::size_t> select_recursing_children(std::span<const double> q,
                                                   std::span<const double> pbar,
                                                   Rng& rng) {
    std::vector<std::size_t> picked;
    std::size_t s = 1;
    while (s <= pbar.size()) {
        std::size_t j = select_next_recursing(q, pbar, s, rng);
        if (j == 0) break;
        picked.push_back(j);
        s = j + 1;
    }
    return picked;
}

TraceSampler::TraceSampler(const LabeledDag& dag, const PathCountTable& table,
                           double p, std::uint64_t hash_seed)
    : dag_(&dag), table_(&table), p_(p), hasher_(hash_seed) {
    if (!(p > 0.0) || p > 1.0) {
        throw DomainError("inclusion probability must be in (0,1], got " +
                          std::to_string(p));
    }
    if (table.horizon() < 1) {
        throw DomainError("count table horizon must be at least 1");
    }
    if (table.vertex_count() != dag.vertex_count()) {
        throw DomainError("count table does not match the DAG");
    }
    log1mp_ = std::log1p(-p); // -inf when p = 1, which the math below absorbs
}

const TraceSampler::SkipRow& TraceSampler::row(VertexId v, std::uint32_t i) {
    const std::uint64_t key =
        static_cast<std::uint64_t>(v) * (table_->horizon() + 1) + i;
    auto it = rows_.find(key);
    if (it != rows_.end()) return it->second;

    SkipRow r;
    std::vector<std::uint64_t> counts;
    if (i >= 2) {
        for (VertexId child : dag_->out_edges(v)) {
            std::uint64_t c = table_->at(child, i - 1);
            if (c > 0) {
                r.children.push_back(child);
                counts.push_back(c);
            }
        }
    }
    const std::size_t d = r.children.size();
    r.abar.resize(d);
    r.bplain.resize(d);
    r.qbar.assign(d + 1, 1.0);
    r.qplain.assign(d + 1, 1.0);

    // R_j = 1 + sum_{k >= j} c_k, walked front to back.
    std::uint64_t remaining = 1;
    for (std::uint64_t c : counts) remaining += c;
    for (std::size_t j = 0; j < d; ++j) {
        double w_here = -std::expm1(static_cast<double>(remaining) * log1mp_);
        remaining -= counts[j];
        double w_next = -std::expm1(static_cast<double>(remaining) * log1mp_);
        double b = flush_tiny(std::exp(static_cast<double>(counts[j]) * log1mp_));
        r.bplain[j] = b;
        r.abar[j] = std::clamp(b * w_next / w_here, 0.0, 1.0);
        r.qbar[j + 1] = r.qbar[j] * r.abar[j];
        r.qplain[j + 1] = r.qplain[j] * b;
    }
    return rows_.emplace(key, std::move(r)).first->second;
}

std::uint64_t TraceSampler::sample_root(VertexId root, Rng& rng,
                                        const TraceSink& sink) {
    std::uint64_t n = table_->at(root, table_->horizon());
    double enter = -std::expm1(static_cast<double>(n) * log1mp_);
    if (rng.uniform() >= enter) return 0;
    return sample_root_conditioned(root, rng, sink);
}

std::uint64_t TraceSampler::sample_root_conditioned(VertexId root, Rng& rng,
                                                    const TraceSink& sink) {
    struct Frame {
        const SkipRow* row;
        std::uint32_t i;
        std::size_t next;        // 1-based first undecided child
        bool child_recursed;
        std::uint64_t emissions; // from this invocation's subtree
    };
    std::vector<Frame> frames;
    std::vector<Label> path;
    std::vector<TraceHash> hashes;

    auto push = [&](VertexId v, std::uint32_t i) {
        Label l = dag_->label(v);
        path.push_back(l);
        hashes.push_back(hasher_.extend(
            hashes.empty() ? TraceHasher::empty() : hashes.back(), l));
        frames.push_back({&row(v, i), i, 1, false, 0});
    };
    push(root, table_->horizon());

    std::uint64_t total_emitted = 0;
    while (!frames.empty()) {
        Frame& f = frames.back();
        const SkipRow& r = *f.row;
        const std::size_t d = r.children.size();

        std::size_t pick = 0;
        if (f.next <= d) {
            // Until the first recursion the invocation still owes a sample,
            // so the conditioned skip probabilities apply; afterwards the
            // plain ones do.
            pick = f.child_recursed
                       ? select_next_recursing(r.qplain, r.bplain, f.next, rng)
                       : select_next_recursing(r.qbar, r.abar, f.next, rng);
        }
        if (pick != 0) {
            f.next = pick + 1;
            f.child_recursed = true; // the child is conditioned to emit
            push(r.children[pick - 1], f.i - 1);
            continue;
        }

        // No further child recurses: the singleton is forced if nothing
        // else was sampled here, otherwise it is an ordinary p-coin.
        if (!f.child_recursed || rng.uniform() < p_) {
            sink(std::span<const Label>(path), hashes.back());
            ++f.emissions;
        }
        if (f.emissions == 0) {
            throw Error("sampler invariant violated: an entered invocation "
                        "emitted no trace");
        }
        std::uint64_t emitted = f.emissions;
        frames.pop_back();
        path.pop_back();
        hashes.pop_back();
        if (frames.empty()) {
            total_emitted = emitted;
        } else {
            frames.back().emissions += emitted;
        }
    }
    return total_emitted;
}

namespace {

struct RootRange {
    VertexId first = 0;
    VertexId last = 0; // exclusive
};

struct ChunkResult {
    std::vector<std::pair<Trace, TraceHash>> emissions;
    std::uint64_t roots_entered = 0;
};

} // namespace

SampleStats sample_traces(const LabeledDag& dag, const PathCountTable& table,
                          const SampleConfig& cfg, const TraceSink& sink,
                          unsigned workers) {
    SampleStats stats;
    stats.p = cfg.p;
    stats.seed = cfg.seed;
    stats.emitted_by_length.assign(table.horizon() + 1, 0);

    auto count_and_forward = [&](std::span<const Label> t, TraceHash h) {
        ++stats.emitted;
        ++stats.emitted_by_length[t.size()];
        sink(t, h);
    };

    const std::size_t n = dag.vertex_count();
    if (n == 0) return stats;

    if (workers <= 1) {
        TraceSampler sampler(dag, table, cfg.p, cfg.hash_seed);
        for (VertexId root = 0; root < n; ++root) {
            Rng rng = Rng::for_stream(cfg.seed, root);
            if (sampler.sample_root(root, rng, count_and_forward) > 0) {
                ++stats.roots_entered;
            }
        }
        return stats;
    }

    // Parallel path: contiguous root chunks claimed through an atomic
    // cursor, each worker with its own sampler (and row cache); the main
    // thread drains finished chunks strictly in order so the emission
    // sequence is independent of scheduling and worker count.
    const std::size_t chunk_size =
        std::max<std::size_t>(1, n / (static_cast<std::size_t>(workers) * 8));
    const std::size_t num_chunks = (n + chunk_size - 1) / chunk_size;

    std::vector<std::optional<ChunkResult>> slots(num_chunks);
    std::mutex mu;
    std::condition_variable slot_ready;
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;

    auto work = [&]() {
        try {
            TraceSampler sampler(dag, table, cfg.p, cfg.hash_seed);
            for (;;) {
                std::size_t k = cursor.fetch_add(1);
                if (k >= num_chunks) return;
                RootRange range{
                    static_cast<VertexId>(k * chunk_size),
                    static_cast<VertexId>(std::min(n, (k + 1) * chunk_size))};
                ChunkResult result;
                auto buffer = [&](std::span<const Label> t, TraceHash h) {
                    result.emissions.emplace_back(Trace(t.begin(), t.end()), h);
                };
                for (VertexId root = range.first; root < range.last; ++root) {
                    Rng rng = Rng::for_stream(cfg.seed, root);
                    if (sampler.sample_root(root, rng, buffer) > 0) {
                        ++result.roots_entered;
                    }
                }
                {
                    std::lock_guard<std::mutex> lock(mu);
                    slots[k] = std::move(result);
                }
                slot_ready.notify_all();
            }
        } catch (...) {
            {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
                cursor.store(num_chunks); // stop the other workers
            }
            slot_ready.notify_all();
        }
    };

    std::vector<std::thread> pool;
    const unsigned spawned =
        static_cast<unsigned>(std::min<std::size_t>(workers, num_chunks));
    pool.reserve(spawned);
    for (unsigned w = 0; w < spawned; ++w) pool.emplace_back(work);

    for (std::size_t k = 0; k < num_chunks; ++k) {
        std::unique_lock<std::mutex> lock(mu);
        slot_ready.wait(lock, [&] { return slots[k].has_value() || failure; });
        if (failure) break;
        ChunkResult result = std::move(*slots[k]);
        slots[k].reset();
        lock.unlock();
        stats.roots_entered += result.roots_entered;
        for (const auto& [trace, hash] : result.emissions) {
            count_and_forward(trace, hash);
        }
    }

    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return stats;
}

} // namespace tracemine
