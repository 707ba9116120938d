#ifndef TRACEMINE_FREQUENT_HPP
#define TRACEMINE_FREQUENT_HPP

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "tracemine/count.hpp"
#include "tracemine/dag.hpp"
#include "tracemine/sample.hpp"
#include "tracemine/trace_hash.hpp"

namespace tracemine {

// Streaming frequent-items stage over the sampled trace stream, plus the
// second pass that turns the candidate set into exact in-sample counts.
// The summary keys traces by their 64-bit hash; the label sequence itself
// is stored only for the (at most k) live entries, so the mining state
// stays at O(1/epsilon) words no matter how large S_m is.

// Summary capacity k = ceil(2/epsilon). With p = C/(epsilon*total) this
// equals ceil(2*p*total/C), two entries per expected occurrence of a
// frequency-epsilon trace; when p is clamped to 1 the epsilon form is the
// larger of the two and the only one that still guarantees retention.
std::size_t summary_capacity(double epsilon);

// k-counter frequent-items summary. Processing an item either bumps its
// live counter, inserts it when a slot is free, or -- when the summary is
// full and the item is unknown -- decrements every counter by one and
// evicts those that reach zero (the new item is not inserted). Any item
// occurring more than n/(k+1) times in a stream of length n is therefore
// live at stream end.
class CounterSet {
public:
    struct Entry {
        TraceHash key = 0;
        std::uint64_t count = 0;
        Trace trace;
    };

    // Throws DomainError if k < 1.
    explicit CounterSet(std::size_t k);

    // `trace` is copied only when the item enters the summary.
    void process(TraceHash key, std::span<const Label> trace = {});

    bool live(TraceHash key) const { return entries_.contains(key); }
    std::uint64_t count(TraceHash key) const;

    std::size_t capacity() const { return k_; }
    std::size_t size() const { return entries_.size(); }
    std::uint64_t processed() const { return processed_; }

    // Live entries, ordered by key for determinism.
    std::vector<Entry> candidates() const;

    // Peak summary footprint in 64-bit words (keys, counters, stored label
    // sequences), maintained incrementally.
    std::size_t peak_state_words() const { return peak_state_words_; }

private:
    static std::size_t entry_words(const Trace& trace) {
        return 3 + (trace.size() + 1) / 2; // key + count + length, labels packed
    }

    std::size_t k_;
    std::uint64_t processed_ = 0;
    std::unordered_map<TraceHash, std::pair<std::uint64_t, Trace>> entries_;
    std::size_t state_words_ = 0;
    std::size_t peak_state_words_ = 0;
};

enum class VerifyMode { same_seed, fresh };

struct CandidateRow {
    Trace trace;
    TraceHash hash = 0;
    std::uint64_t sample_count = 0; // exact X_t within the verification sample
    double est_frequency = 0.0;     // X_t / (p * total)
};

struct CandidateReport {
    std::vector<CandidateRow> rows; // sample_count desc, then trace asc
    std::uint64_t sample_size = 0;  // verification-pass emissions
    std::uint64_t total = 0;        // |S_m|
    double p_verify = 0.0;          // inclusion probability of that pass
    double threshold = 0.0;         // minimum reported sample_count; see below
};

// Exact-counts the candidates in a second sampling pass. same_seed
// regenerates the pass-1 stream bit for bit (same seed, same p); fresh
// draws an independent sample under a derived seed with C raised by 2 to
// compensate the roughly doubled false-negative exposure.
//
// Rows are kept from sample_count min(C, epsilon*p*total)/2 upward, with
// C the original constant: that is C/2 whenever p is unclamped (a
// frequency-epsilon trace is sampled C times in expectation) and half the
// exact occurrence count of a frequency-epsilon trace when p = 1, where
// sampling has degenerated to enumeration. Survivors carry the frequency
// estimate X_t / (p_verify * total).
CandidateReport second_pass_verify(const LabeledDag& dag,
                                   const PathCountTable& table,
                                   const SampleConfig& cfg,
                                   std::span<const CounterSet::Entry> candidates,
                                   VerifyMode mode, unsigned workers = 1);

struct MiningStats {
    std::uint64_t total = 0;
    double p = 0.0;
    std::size_t capacity = 0; // summary capacity k
    std::uint64_t pass1_sample_size = 0;
    std::uint64_t pass2_sample_size = 0;
    std::size_t candidates = 0; // live entries after pass 1
    std::size_t reported = 0;
    // Peak words held by summary + candidate list + report, i.e. the
    // mining state beyond the DAG and the count table.
    std::size_t peak_state_words = 0;
};

// Full pipeline: count, choose p, stream one sample into the summary,
// verify the survivors in a second pass. An empty DAG yields an empty
// report. Propagates OverflowError from counting and DomainError for
// out-of-range epsilon or C.
CandidateReport mine_frequent(const LabeledDag& dag, std::uint32_t m,
                              double epsilon, double oversample_c,
                              std::uint64_t seed, VerifyMode mode,
                              unsigned workers = 1,
                              MiningStats* stats = nullptr);

} // namespace tracemine

#endif // TRACEMINE_FREQUENT_HPP
