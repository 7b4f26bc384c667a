#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <thread>
#include <vector>

#include "tracelab/moebius.hpp"

namespace tracelab {

// Free-group enumeration over two generators. Only free reduction is
// applied (no word problem for the group): distinct reduced words that
// happen to coincide in the group are counted in the multiplicity.

enum class Letter : std::uint8_t { U = 0, Uinv = 1, V = 2, Vinv = 3 };

inline Letter letter_inverse(Letter l) {
    switch (l) {
        case Letter::U: return Letter::Uinv;
        case Letter::Uinv: return Letter::U;
        case Letter::V: return Letter::Vinv;
        default: return Letter::V;
    }
}

inline char letter_char(Letter l) {
    // Lowercase marks the inverse generator.
    static constexpr char k[4] = {'U', 'u', 'V', 'v'};
    return k[static_cast<int>(l)];
}

inline std::string word_string(const std::vector<Letter>& w) {
    std::string s;
    s.reserve(w.size());
    for (Letter l : w) s.push_back(letter_char(l));
    return s;
}

inline std::vector<Letter> parse_word(const std::string& s) {
    std::vector<Letter> w;
    for (char c : s) {
        switch (c) {
            case 'U': w.push_back(Letter::U); break;
            case 'u': w.push_back(Letter::Uinv); break;
            case 'V': w.push_back(Letter::V); break;
            case 'v': w.push_back(Letter::Vinv); break;
            default: throw ParseError(std::string("bad word letter: ") + c);
        }
    }
    return w;
}

/// Word ordering used everywhere: by length, then letterwise in the
/// enumeration order U < U^-1 < V < V^-1.
inline bool word_less(const std::vector<Letter>& a, const std::vector<Letter>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

struct WordSpec {
    std::vector<Letter> letters;
    bool reduced = true;
};

struct TraceStat {
    long long multiplicity = 0;
    int min_word_length = 0;
    std::vector<Letter> witness;
};

struct TraceCensus {
    int max_word_length = 0;
    std::map<Rat, TraceStat, RatLess> stats;
    std::vector<Rat> traces;                 // sorted, duplicate free
    std::vector<long long> words_per_length; // [l-1] = reduced words of length l
    long long total_words = 0;
};

struct EnumOptions {
    long long node_budget = 10'000'000;
    int threads = 1;
};

namespace detail {

using StatMap = std::map<Rat, TraceStat, RatLess>;

inline void record_word(StatMap& stats, std::vector<long long>& per_len, const Mat2& m,
                        const std::vector<Letter>& word) {
    per_len[word.size() - 1] += 1;
    Rat tr = abs(m.trace_signed());
    auto [it, inserted] = stats.try_emplace(std::move(tr));
    TraceStat& st = it->second;
    st.multiplicity += 1;
    if (inserted || word.size() < static_cast<std::size_t>(st.min_word_length) ||
        (word.size() == static_cast<std::size_t>(st.min_word_length) && word < st.witness)) {
        st.min_word_length = static_cast<int>(word.size());
        st.witness = word;
    }
}

/// Depth-first over all reduced words with the given first letter, up to
/// max_len, in lexicographic order; explicit stack.
inline void enumerate_shard(const Mat2 gens[4], Letter first, int max_len, StatMap& stats,
                            std::vector<long long>& per_len) {
    struct Frame {
        Mat2 m;
        std::vector<Letter> word;
    };
    std::vector<Frame> stack;
    stack.push_back({gens[static_cast<int>(first)], {first}});
    while (!stack.empty()) {
        Frame fr = std::move(stack.back());
        stack.pop_back();
        record_word(stats, per_len, fr.m, fr.word);
        if (static_cast<int>(fr.word.size()) >= max_len) continue;
        Letter banned = letter_inverse(fr.word.back());
        // Push in reverse so the stack pops children in U < u < V < v order.
        for (int li = 3; li >= 0; --li) {
            Letter l = static_cast<Letter>(li);
            if (l == banned) continue;
            Frame child;
            child.m = fr.m * gens[li];
            child.word = fr.word;
            child.word.push_back(l);
            stack.push_back(std::move(child));
        }
    }
}

} // namespace detail

/// Visit every reduced word of length 1..max_len over {U, U^-1, V, V^-1}
/// exactly once and collect exact traces. Deterministic: the result is
/// independent of the thread count (shards merge in fixed order).
inline TraceCensus enumerate_traces(const MoebiusTransform& tu, const MoebiusTransform& tv,
                                    int max_len, EnumOptions opt = {}) {
    if (max_len < 1) throw UsageError("max_len must be >= 1");
    if (opt.threads < 1) throw UsageError("threads must be >= 1");
    // 4 * 3^(max_len-1) words at the deepest level.
    double deepest = 4.0;
    for (int i = 1; i < max_len; ++i) deepest *= 3.0;
    if (deepest > static_cast<double>(opt.node_budget))
        throw DepthTooLarge("word enumeration at depth " + std::to_string(max_len) +
                            " exceeds the node budget");

    Mat2 gens[4] = {tu.mat(), tu.mat().inverse(), tv.mat(), tv.mat().inverse()};

    detail::StatMap shard_stats[4];
    std::vector<long long> shard_len[4];
    for (auto& v : shard_len) v.assign(max_len, 0);

    auto run_shard = [&](int s) {
        detail::enumerate_shard(gens, static_cast<Letter>(s), max_len, shard_stats[s], shard_len[s]);
    };
    if (opt.threads > 1) {
        std::vector<std::thread> pool;
        for (int s = 0; s < 4; ++s) pool.emplace_back(run_shard, s);
        for (auto& t : pool) t.join();
    } else {
        for (int s = 0; s < 4; ++s) run_shard(s);
    }

    TraceCensus census;
    census.max_word_length = max_len;
    census.words_per_length.assign(max_len, 0);
    for (int s = 0; s < 4; ++s) {
        for (int l = 0; l < max_len; ++l) census.words_per_length[l] += shard_len[s][l];
        for (auto& [tr, st] : shard_stats[s]) {
            auto [it, inserted] = census.stats.try_emplace(tr);
            TraceStat& dst = it->second;
            dst.multiplicity += st.multiplicity;
            if (inserted || st.min_word_length < dst.min_word_length ||
                (st.min_word_length == dst.min_word_length && st.witness < dst.witness)) {
                dst.min_word_length = st.min_word_length;
                dst.witness = st.witness;
            }
        }
    }
    for (auto& [tr, st] : census.stats) {
        census.traces.push_back(tr);
        census.total_words += st.multiplicity;
    }
    return census;
}

struct ContainmentEntry {
    Rat predicted;
    bool found = false;
    std::string witness_word;
    int word_length = 0;
};

struct ContainmentReport {
    std::vector<ContainmentEntry> entries;
    bool all_found = true;
    int depth = 0;
};

/// FOUND (with witness word) or NOT-FOUND-AT-DEPTH per predicted trace.
/// Absence at finite depth is never a refutation.
inline ContainmentReport contains_predicted_traces(const TraceCensus& census,
                                               const std::vector<TraceValue>& predicted) {
    ContainmentReport rep;
    rep.depth = census.max_word_length;
    for (const TraceValue& tv : predicted) {
        ContainmentEntry e;
        e.predicted = tv.rat(); // throws on symbolic input
        auto it = census.stats.find(e.predicted);
        if (it != census.stats.end()) {
            e.found = true;
            e.witness_word = word_string(it->second.witness);
            e.word_length = it->second.min_word_length;
        } else {
            rep.all_found = false;
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

struct IntegralityReport {
    struct Violation {
        Rat trace;
        std::string witness_word;
        int word_length = 0;
    };
    bool all_integer = true;
    bool squares_all_integer = true;
    std::vector<Violation> violations;
    std::vector<std::string> not_checkable;
};

/// Tr subset of Z on the sample, plus the squared-trace surrogate for the
/// squares subgroup. Sample-level only: a pass is consistency, not proof.
inline IntegralityReport integrality_census(const TraceCensus& census) {
    IntegralityReport rep;
    for (const auto& [tr, st] : census.stats) {
        bool tr_int = is_integer(tr);
        bool sq_int = is_integer(Rat(tr * tr));
        if (!tr_int) {
            rep.all_integer = false;
            rep.violations.push_back({tr, word_string(st.witness), st.min_word_length});
        }
        if (!sq_int) rep.squares_all_integer = false;
    }
    return rep;
}

inline IntegralityReport integrality_of_values(const std::vector<TraceValue>& values) {
    IntegralityReport rep;
    for (const TraceValue& v : values) {
        if (!v.is_rational()) {
            rep.not_checkable.push_back(v.str());
            continue;
        }
        if (!is_integer(v.rat())) {
            rep.all_integer = false;
            rep.violations.push_back({v.rat(), "", 0});
        }
        if (!is_integer(Rat(v.rat() * v.rat()))) rep.squares_all_integer = false;
    }
    return rep;
}

inline std::string census_to_csv(const TraceCensus& census) {
    std::ostringstream out;
    out << "trace_numerator,trace_denominator,multiplicity,min_word_length,witness_word\n";
    for (const auto& [tr, st] : census.stats) {
        out << tr.get_num().get_str() << ',' << tr.get_den().get_str() << ',' << st.multiplicity
            << ',' << st.min_word_length << ',' << word_string(st.witness) << '\n';
    }
    return out.str();
}

inline TraceCensus census_from_csv(const std::string& text) {
    TraceCensus census;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("trace_numerator,", 0) != 0)
        throw ParseError("census csv: missing header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string num, den, mult, minlen, word;
        if (!std::getline(row, num, ',') || !std::getline(row, den, ',') ||
            !std::getline(row, mult, ',') || !std::getline(row, minlen, ','))
            throw ParseError("census csv: short row: " + line);
        std::getline(row, word, ',');
        Int n, d;
        if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0 || d == 0)
            throw ParseError("census csv: bad rational: " + line);
        TraceStat st;
        try {
            st.multiplicity = std::stoll(mult);
            st.min_word_length = std::stoi(minlen);
        } catch (const std::exception&) {
            throw ParseError("census csv: bad counts: " + line);
        }
        st.witness = parse_word(word);
        census.max_word_length = std::max(census.max_word_length, st.min_word_length);
        census.stats.emplace(make_rat(n, d), std::move(st));
    }
    for (auto& [tr, st] : census.stats) {
        census.traces.push_back(tr);
        census.total_words += st.multiplicity;
    }
    return census;
}

} // namespace tracelab
