#ifndef TRACEMINE_SAMPLE_HPP
#define TRACEMINE_SAMPLE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "tracemine/count.hpp"
#include "tracemine/dag.hpp"
#include "tracemine/rng.hpp"
#include "tracemine/trace_hash.hpp"

namespace tracemine {

// Draws each of the |S_m| traces independently with probability p without
// enumerating S_m. Per root, a top-level coin decides entry with
// probability 1-(1-p)^{c(v,m)}; an entered invocation is conditioned to
// emit at least one trace, so no descent is ever wasted. Within an
// invocation the children are processed in adjacency order and the
// single-vertex trace is decided last: once some child has recursed the
// remaining traces are unconditioned (plain Bernoulli), while before that
// the remaining ones still carry the condition -- the per-child
// no-recursion probabilities below account for exactly that.
//
// For child j with c_j sampleable subtraces, let R_j = 1 + sum_{k>=j} c_k
// be the traces still undecided (children j..d plus the singleton), and
//
//   b_j = (1-p)^{c_j}                      no sample among child j's traces
//   w_j = 1 - (1-p)^{R_j}                  >= 1 sample among the remainder
//
// Unconditioned, child j is skipped with probability b_j. While the
// invocation still owes its first sample, the skip probability is
//
//   abar_j = b_j * w_{j+1} / w_j
//
// (skip j AND the guarantee still holds for the rest). The singleton is
// emitted unconditionally if nothing else was, otherwise with probability
// p. Chaining these factors reproduces the exact distribution of
// "independent Bernoulli(p) over S_m(v), conditioned on >= 1 hit".
//
// All (1-p)^k powers are computed in log space; results below 2^-60 are
// treated as zero.

// Inclusion probability: p = min(1, C / (epsilon * total)), so a trace of
// relative frequency eps' is sampled C*eps'/epsilon times in expectation.
// Throws DomainError unless epsilon is in (0,1], C > 1 and total >= 1.
double choose_p(double epsilon, double oversample_c, std::uint64_t total);

struct SampleConfig {
    double epsilon = 0.1;
    double oversample_c = 10.0; // C
    std::uint32_t m = 5;
    std::uint64_t seed = 1;
    double p = 1.0; // derived; see choose_p
    std::uint64_t hash_seed = TraceHasher::kDefaultSeed;
};

// Receives each sampled trace and its incremental hash.
using TraceSink = std::function<void(std::span<const Label>, TraceHash)>;

struct SampleStats {
    std::uint64_t emitted = 0;
    std::uint64_t roots_entered = 0;
    std::vector<std::uint64_t> emitted_by_length; // index = trace length
    double p = 0.0;
    std::uint64_t seed = 0;
};

// Skip-ahead selection over a vertex's children. q holds the prefix
// products q[0] = 1, q[j] = q[j-1] * pbar[j-1] of the no-recursion
// probabilities pbar (non-increasing by construction). One uniform draw r
// in [0, q[start-1]) either lands below q[d] -- no further child recurses
// -- or a binary search finds the unique j with q[j] <= r < q[j-1], the
// next recursing child. Returns that 1-based index, or 0 for none. When
// q[start-1] has underflowed to zero the ratios are unrecoverable from q,
// so the per-child Bernoulli loop over pbar runs instead.
std::size_t select_next_recursing(std::span<const double> q,
                                  std::span<const double> pbar,
                                  std::size_t start, Rng& rng);

// All recursing children, by repeated select_next_recursing; distributed
// exactly like flipping an independent coin per child.
std::vector<std::size_t> select_recursing_children(std::span<const double> q,
                                                   std::span<const double> pbar,
                                                   Rng& rng);

class TraceSampler {
public:
    // Throws DomainError unless 0 < p <= 1 and the table horizon is >= 1.
    TraceSampler(const LabeledDag& dag, const PathCountTable& table, double p,
                 std::uint64_t hash_seed = TraceHasher::kDefaultSeed);

    // Top-level call for one root: entered with probability
    // 1-(1-p)^{c(root,m)}, in which case every sampled trace starting at
    // `root` is emitted (at least one). Returns the emission count.
    std::uint64_t sample_root(VertexId root, Rng& rng, const TraceSink& sink);

    // The invocation the entry coin guards, i.e. sampling conditioned on
    // at least one emission. Exposed for the distribution tests.
    std::uint64_t sample_root_conditioned(VertexId root, Rng& rng,
                                          const TraceSink& sink);

    const TraceHasher& hasher() const { return hasher_; }
    double p() const { return p_; }

private:
    // Per-(v,i) probabilities for the children with c(child, i-1) > 0;
    // built lazily on first visit (few roots are entered when p is small)
    // and memoized for the run.
    struct SkipRow {
        std::vector<VertexId> children;
        std::vector<double> abar;   // no-recursion, first sample still owed
        std::vector<double> bplain; // no-recursion, unconditioned
        std::vector<double> qbar;   // prefix products of abar, size d+1
        std::vector<double> qplain; // prefix products of bplain, size d+1
    };

    const SkipRow& row(VertexId v, std::uint32_t i);

    const LabeledDag* dag_;
    const PathCountTable* table_;
    double p_;
    double log1mp_; // log(1-p), -inf when p = 1
    TraceHasher hasher_;
    std::unordered_map<std::uint64_t, SkipRow> rows_;
};

// Samples every root of the DAG. With workers > 1 the roots are processed
// in parallel chunks, each root on its own RNG stream derived from
// (seed, root), and emissions are delivered to the sink in root order --
// so the output is byte-identical for every worker count, which is what
// same-seed verification relies on.
SampleStats sample_traces(const LabeledDag& dag, const PathCountTable& table,
                          const SampleConfig& cfg, const TraceSink& sink,
                          unsigned workers = 1);

} // namespace tracemine

#endif // TRACEMINE_SAMPLE_HPP
