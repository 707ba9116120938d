#include "tracemine/frequent.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "tracemine/errors.hpp"
#include "tracemine/rng.hpp"

namespace tracemine {

std::size_t summary_capacity(double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw DomainError("epsilon must be in (0,1], got " + std::to_string(epsilon));
    }
    return static_cast<std::size_t>(std::ceil(2.0 / epsilon));
}

CounterSet::CounterSet(std::size_t k) : k_(k) {
    if (k < 1) throw DomainError("summary capacity must be at least 1");
}

std::uint64_t CounterSet::count(TraceHash key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.first;
}

void CounterSet::process(TraceHash key, std::span<const Label> trace) {
    ++processed_;
    auto it = entries_.find(key);
    if (it != entries_.end()) {
        ++it->second.first;
        return;
    }
    if (entries_.size() < k_) {
        Trace stored(trace.begin(), trace.end());
        state_words_ += entry_words(stored);
        peak_state_words_ = std::max(peak_state_words_, state_words_);
        entries_.emplace(key, std::make_pair(std::uint64_t{1}, std::move(stored)));
        return;
    }
    // Summary full and the item is unknown: charge everyone one occurrence
    // and drop whoever hits zero. The item itself is not inserted.
    for (auto e = entries_.begin(); e != entries_.end();) {
        if (--e->second.first == 0) {
            state_words_ -= entry_words(e->second.second);
            e = entries_.erase(e);
        } else {
            ++e;
        }
    }
}

std::vector<CounterSet::Entry> CounterSet::candidates() const {
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const auto& [key, value] : entries_) {
        out.push_back({key, value.first, value.second});
    }
    std::sort(out.begin(), out.end(),
              [](const Entry& a, const Entry& b) { return a.key < b.key; });
    return out;
}

namespace {

// Stream tag for the independent verification sample; any fixed constant
// works as long as it cannot collide with a per-root stream of pass 1.
constexpr std::uint64_t kFreshPassTag = 0x9e6c6f8f2b1d3a47ULL;

} // namespace

CandidateReport second_pass_verify(const LabeledDag& dag,
                                   const PathCountTable& table,
                                   const SampleConfig& cfg,
                                   std::span<const CounterSet::Entry> candidates,
                                   VerifyMode mode, unsigned workers) {
    CandidateReport report;
    report.total = total_traces(table);

    SampleConfig pass2 = cfg;
    if (mode == VerifyMode::fresh) {
        pass2.oversample_c = cfg.oversample_c + 2.0;
        pass2.p = choose_p(cfg.epsilon, pass2.oversample_c, report.total);
        pass2.seed = derive_stream_seed(cfg.seed, kFreshPassTag);
    }
    report.p_verify = pass2.p;
    report.threshold =
        std::min(cfg.oversample_c,
                 cfg.epsilon * pass2.p * static_cast<double>(report.total)) /
        2.0;

    std::unordered_map<TraceHash, std::uint64_t> hits;
    hits.reserve(candidates.size());
    for (const auto& entry : candidates) hits.emplace(entry.key, 0);

    SampleStats stats = sample_traces(
        dag, table, pass2,
        [&](std::span<const Label>, TraceHash h) {
            auto it = hits.find(h);
            if (it != hits.end()) ++it->second;
        },
        workers);
    report.sample_size = stats.emitted;

    const double divisor = pass2.p * static_cast<double>(report.total);
    for (const auto& entry : candidates) {
        std::uint64_t x = hits.at(entry.key);
        if (static_cast<double>(x) < report.threshold) continue;
        CandidateRow row;
        row.trace = entry.trace;
        row.hash = entry.key;
        row.sample_count = x;
        row.est_frequency = static_cast<double>(x) / divisor;
        report.rows.push_back(std::move(row));
    }
    std::sort(report.rows.begin(), report.rows.end(),
              [](const CandidateRow& a, const CandidateRow& b) {
                  if (a.sample_count != b.sample_count) {
                      return a.sample_count > b.sample_count;
                  }
                  return a.trace < b.trace;
              });
    return report;
}

CandidateReport mine_frequent(const LabeledDag& dag, std::uint32_t m,
                              double epsilon, double oversample_c,
                              std::uint64_t seed, VerifyMode mode,
                              unsigned workers, MiningStats* stats) {
    MiningStats local;
    if (dag.vertex_count() == 0) {
        if (stats) *stats = local;
        return {};
    }

    PathCountTable table = count_traces(dag, m);
    local.total = total_traces(table);

    SampleConfig cfg;
    cfg.epsilon = epsilon;
    cfg.oversample_c = oversample_c;
    cfg.m = m;
    cfg.seed = seed;
    cfg.p = choose_p(epsilon, oversample_c, local.total);
    local.p = cfg.p;

    local.capacity = summary_capacity(epsilon);
    CounterSet summary(local.capacity);
    SampleStats pass1 = sample_traces(
        dag, table, cfg,
        [&](std::span<const Label> trace, TraceHash h) {
            summary.process(h, trace);
        },
        workers);
    local.pass1_sample_size = pass1.emitted;

    std::vector<CounterSet::Entry> candidates = summary.candidates();
    local.candidates = candidates.size();

    CandidateReport report =
        second_pass_verify(dag, table, cfg, candidates, mode, workers);
    local.pass2_sample_size = report.sample_size;
    local.reported = report.rows.size();

    std::size_t candidate_words = 0;
    for (const auto& entry : candidates) {
        candidate_words += 3 + (entry.trace.size() + 1) / 2;
    }
    std::size_t report_words = 0;
    for (const auto& row : report.rows) {
        report_words += 4 + (row.trace.size() + 1) / 2;
    }
    local.peak_state_words =
        summary.peak_state_words() + candidate_words + report_words;

    if (stats) *stats = local;
    return report;
}

} // namespace tracemine
