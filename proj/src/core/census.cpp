#include "census.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "error.hpp"
#include "parallel.hpp"

namespace pc {

bool CensusTable::full_cover() const {
    if (!is_full_kind()) return false;
    return covered == BigUint::pow(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(dim));
}

BigUint CensusTable::total_count() const {
    BigUint total;
    for (const auto& [key, count] : entries) total += count;
    return total;
}

const BigUint* CensusTable::lookup(const std::vector<int>& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
}

namespace {

// ---- full census: reflected base-p Gray traversal ---------------------------

struct TypeCounter {
    int p;
    std::vector<std::uint8_t> w;
    std::vector<int> counts;  // counts[r] = #coords with residue r

    TypeCounter(int p_, const std::vector<std::uint8_t>& start) : p(p_), w(start) {
        counts.assign(static_cast<std::size_t>(p), 0);
        for (std::uint8_t c : w) ++counts[c];
    }
    // w += sign * row, touching only the row's support.
    void apply(const std::vector<int>& support, const std::vector<std::uint8_t>& row, int sign) {
        for (int idx : support) {
            std::uint8_t& c = w[static_cast<std::size_t>(idx)];
            --counts[c];
            int val = c + sign * row[static_cast<std::size_t>(idx)];
            val %= p;
            if (val < 0) val += p;
            c = static_cast<std::uint8_t>(val);
            ++counts[c];
        }
    }
    int weight() const { return static_cast<int>(w.size()) - counts[0]; }
};

struct PartialCounts {
    std::map<std::vector<int>, std::uint64_t> map;
    void record_hamming(int weight) { ++map[{weight}]; }
    void record_complete(const std::vector<int>& counts) { ++map[counts]; }
};

// Enumerates the p^m words w0 + sum(digit_i * rows[i]) in reflected Gray
// order (Knuth 7.2.1.1 H): one signed row addition per step.
void gray_enumerate(int p, const std::vector<std::uint8_t>& w0,
                    const std::vector<const std::vector<std::uint8_t>*>& rows,
                    const std::vector<const std::vector<int>*>& supports, CensusKind kind,
                    PartialCounts& out) {
    const int m = static_cast<int>(rows.size());
    TypeCounter tc(p, w0);
    auto visit = [&]() {
        if (kind == CensusKind::hamming)
            out.record_hamming(tc.weight());
        else
            out.record_complete(tc.counts);
    };
    if (m == 0) {
        visit();
        return;
    }
    std::vector<int> a(static_cast<std::size_t>(m), 0);
    std::vector<int> f(static_cast<std::size_t>(m) + 1);
    std::vector<int> o(static_cast<std::size_t>(m), 1);
    std::iota(f.begin(), f.end(), 0);
    for (;;) {
        visit();
        int j = f[0];
        f[0] = 0;
        if (j == m) break;
        a[static_cast<std::size_t>(j)] += o[static_cast<std::size_t>(j)];
        tc.apply(*supports[static_cast<std::size_t>(j)], *rows[static_cast<std::size_t>(j)],
                 o[static_cast<std::size_t>(j)]);
        if (a[static_cast<std::size_t>(j)] == 0 || a[static_cast<std::size_t>(j)] == p - 1) {
            o[static_cast<std::size_t>(j)] = -o[static_cast<std::size_t>(j)];
            f[static_cast<std::size_t>(j)] = f[static_cast<std::size_t>(j) + 1];
            f[static_cast<std::size_t>(j) + 1] = j + 1;
        }
    }
}

std::vector<int> row_support(const std::vector<std::uint8_t>& row) {
    std::vector<int> s;
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] != 0) s.push_back(static_cast<int>(i));
    return s;
}

}  // namespace

CensusTable full_census(const LinearCode& code, CensusKind kind, ShardSpec shard,
                        const BigUint& budget, int threads) {
    const int p = code.p();
    const int k = code.dim();
    const int v = code.length();
    if (shard.count < 1 || shard.index < 0 || shard.index >= shard.count)
        fail(Error::Kind::invalid_argument, "full_census: bad shard spec");
    BigUint space = BigUint::pow(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(k));
    BigUint capacity = budget * BigUint(static_cast<std::uint64_t>(shard.count));
    if (space > capacity) {
        BigUint needed = (space + BigUint(static_cast<std::uint64_t>(shard.count)) - BigUint(1)) /
                         BigUint(static_cast<std::uint64_t>(shard.count));
        fail(Error::Kind::guard, "full_census: p^dim = " + space.to_string() +
                                     " exceeds budget*shards; needs per-shard budget " +
                                     needed.to_string());
    }

    // Shards own the message prefixes (the leading D symbols) with
    // prefix % shard.count == shard.index.
    int depth = 0;
    std::uint64_t prefix_space = 1;
    while (prefix_space < static_cast<std::uint64_t>(shard.count) && depth < k) {
        prefix_space *= static_cast<std::uint64_t>(p);
        ++depth;
    }
    std::vector<std::uint64_t> prefixes;
    for (std::uint64_t m = 0; m < prefix_space; ++m)
        if (m % static_cast<std::uint64_t>(shard.count) == static_cast<std::uint64_t>(shard.index))
            prefixes.push_back(m);
    // Deepen prefixes until there is enough parallel work.
    while (static_cast<int>(prefixes.size()) < 2 * threads && depth < k) {
        std::vector<std::uint64_t> wider;
        wider.reserve(prefixes.size() * static_cast<std::size_t>(p));
        for (std::uint64_t m : prefixes)
            for (int d = 0; d < p; ++d)
                wider.push_back(m + static_cast<std::uint64_t>(d) * prefix_space);
        prefix_space *= static_cast<std::uint64_t>(p);
        ++depth;
        prefixes = std::move(wider);
    }

    const auto& rows = code.rows();
    std::vector<std::vector<int>> supports;
    supports.reserve(rows.size());
    for (const auto& r : rows) supports.push_back(row_support(r));

    std::vector<const std::vector<std::uint8_t>*> tail_rows;
    std::vector<const std::vector<int>*> tail_supports;
    for (int i = depth; i < k; ++i) {
        tail_rows.push_back(&rows[static_cast<std::size_t>(i)]);
        tail_supports.push_back(&supports[static_cast<std::size_t>(i)]);
    }

    std::vector<PartialCounts> partials(prefixes.size());
    parallel_chunks(static_cast<int>(prefixes.size()), threads, [&](int job) {
        std::uint64_t m = prefixes[static_cast<std::size_t>(job)];
        std::vector<std::uint8_t> w0(static_cast<std::size_t>(v), 0);
        std::uint64_t rest = m;
        for (int i = 0; i < depth; ++i) {
            int digit = static_cast<int>(rest % static_cast<std::uint64_t>(p));
            rest /= static_cast<std::uint64_t>(p);
            if (digit == 0) continue;
            const auto& row = rows[static_cast<std::size_t>(i)];
            for (int c : supports[static_cast<std::size_t>(i)])
                w0[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(
                    (w0[static_cast<std::size_t>(c)] + digit * row[static_cast<std::size_t>(c)]) % p);
        }
        gray_enumerate(p, w0, tail_rows, tail_supports, kind, partials[static_cast<std::size_t>(job)]);
    });

    CensusTable table;
    table.kind = kind;
    table.p = p;
    table.length = v;
    table.dim = k;
    table.fingerprint = code.fingerprint();
    BigUint per_prefix = BigUint::pow(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(k - depth));
    table.covered = per_prefix * BigUint(static_cast<std::uint64_t>(prefixes.size()));
    for (const auto& part : partials)
        for (const auto& [key, count] : part.map) table.entries[key] += BigUint(count);
    return table;
}

CensusTable merge_censuses(const std::vector<CensusTable>& tables) {
    if (tables.empty()) fail(Error::Kind::invalid_argument, "merge: no tables");
    const CensusTable& first = tables.front();
    CensusTable out;
    out.kind = first.kind;
    out.p = first.p;
    out.length = first.length;
    out.dim = first.dim;
    out.fingerprint = first.fingerprint;
    for (const auto& t : tables) {
        if (!t.is_full_kind())
            fail(Error::Kind::invalid_argument, "merge: only full-census shards merge");
        if (t.kind != first.kind || t.p != first.p || t.length != first.length ||
            t.dim != first.dim || t.fingerprint != first.fingerprint)
            fail(Error::Kind::invalid_argument, "merge: table metadata mismatch");
        out.covered += t.covered;
        for (const auto& [key, count] : t.entries) out.entries[key] += count;
    }
    BigUint space = BigUint::pow(static_cast<std::uint64_t>(out.p), static_cast<std::uint64_t>(out.dim));
    if (out.covered > space)
        fail(Error::Kind::invalid_argument, "merge: shards overlap (covered > p^dim)");
    return out;
}

// ---- bounded-weight census ----------------------------------------------------

namespace {

struct InfoSet {
    std::vector<int> cols;                       // k information columns
    std::vector<std::vector<std::uint8_t>> rows; // standard form w.r.t. cols
    std::vector<std::vector<int>> supports;
    int fresh = 0;                               // columns not in earlier sets
};

// Greedy seeded selection: each round prefers columns unused by earlier sets,
// random tiebreak, and keeps adding sets while they contribute fresh columns.
std::vector<InfoSet> select_information_sets(const LinearCode& code, std::uint64_t seed) {
    const int p = code.p();
    const int v = code.length();
    const int k = code.dim();
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<int> used(static_cast<std::size_t>(v), 0);
    std::vector<InfoSet> sets;

    for (;;) {
        std::vector<int> rank(static_cast<std::size_t>(v));
        std::iota(rank.begin(), rank.end(), 0);
        std::shuffle(rank.begin(), rank.end(), rng);
        std::vector<int> order(static_cast<std::size_t>(v));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            if (used[static_cast<std::size_t>(a)] != used[static_cast<std::size_t>(b)])
                return used[static_cast<std::size_t>(a)] < used[static_cast<std::size_t>(b)];
            return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)];
        });

        std::vector<std::vector<std::uint8_t>> work = code.rows();
        std::vector<int> chosen;
        std::size_t rank_rows = 0;
        for (int idx = 0; idx < v && rank_rows < work.size(); ++idx) {
            int col = order[static_cast<std::size_t>(idx)];
            std::size_t pivot = rank_rows;
            while (pivot < work.size() && work[pivot][static_cast<std::size_t>(col)] == 0) ++pivot;
            if (pivot == work.size()) continue;
            std::swap(work[rank_rows], work[pivot]);
            int inv = mod_inverse(work[rank_rows][static_cast<std::size_t>(col)], p);
            for (int c = 0; c < v; ++c)
                work[rank_rows][static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(
                    work[rank_rows][static_cast<std::size_t>(c)] * inv % p);
            for (std::size_t r = 0; r < work.size(); ++r) {
                if (r == rank_rows) continue;
                int factor = work[r][static_cast<std::size_t>(col)];
                if (factor == 0) continue;
                for (int c = 0; c < v; ++c) {
                    int val = work[r][static_cast<std::size_t>(c)] -
                              factor * work[rank_rows][static_cast<std::size_t>(c)] % p;
                    work[r][static_cast<std::size_t>(c)] =
                        static_cast<std::uint8_t>(((val % p) + p) % p);
                }
            }
            chosen.push_back(col);
            ++rank_rows;
        }
        if (static_cast<int>(chosen.size()) != k)
            fail(Error::Kind::assertion, "information set selection lost rank");

        int fresh = 0;
        for (int c : chosen)
            if (used[static_cast<std::size_t>(c)] == 0) ++fresh;
        if (fresh == 0) break;
        for (int c : chosen) ++used[static_cast<std::size_t>(c)];

        InfoSet is;
        is.cols = std::move(chosen);
        is.rows = std::move(work);
        for (const auto& r : is.rows) is.supports.push_back(row_support(r));
        is.fresh = fresh;
        sets.push_back(std::move(is));
    }
    return sets;
}

// Any codeword missed when enumerating messages of weight <= t through every
// set has weight at least this.
int missed_weight_bound(const std::vector<InfoSet>& sets, int k, int t) {
    int bound = 0;
    for (const auto& s : sets) bound += std::max(0, (t + 1) - (k - s.fresh));
    return bound;
}

double enumeration_volume(int k, int p, int t) {
    double total = 0, term = 1;
    for (int s = 1; s <= t; ++s) {
        term = term * (k - s + 1) / s * (p - 1);
        total += term;
    }
    return total;
}

struct BoundedEnumerator {
    int p, v, k, wmax, t;
    const InfoSet& set;
    std::vector<std::uint8_t> w;
    int nonzero = 0;
    std::unordered_set<std::string>* found;

    BoundedEnumerator(int p_, int v_, int k_, int wmax_, int t_, const InfoSet& s,
                      std::unordered_set<std::string>* sink)
        : p(p_), v(v_), k(k_), wmax(wmax_), t(t_), set(s),
          w(static_cast<std::size_t>(v_), 0), found(sink) {}

    void add_row(int i) {  // w += rows[i], tracking the support only
        const auto& row = set.rows[static_cast<std::size_t>(i)];
        for (int idx : set.supports[static_cast<std::size_t>(i)]) {
            std::uint8_t& c = w[static_cast<std::size_t>(idx)];
            if (c == 0) ++nonzero;
            int val = c + row[static_cast<std::size_t>(idx)];
            if (val >= p) val -= p;
            c = static_cast<std::uint8_t>(val);
            if (c == 0) --nonzero;
        }
    }

    void visit() {
        if (nonzero <= wmax)
            found->insert(std::string(reinterpret_cast<const char*>(w.data()), w.size()));
    }

    // Support positions ascending; each digit walks through values 1..p-1 by
    // repeated row addition, then one more addition wraps it back to zero.
    void rec(int start, int depth_left) {
        for (int i = start; i < k; ++i) {
            add_row(i);
            for (int val = 1; val < p; ++val) {
                if (val > 1) add_row(i);
                visit();
                if (depth_left > 1 && i + 1 < k) rec(i + 1, depth_left - 1);
            }
            add_row(i);  // p-th addition returns the digit to zero
        }
    }

    void run_top(int first) {  // enumeration chunk: supports whose minimum is `first`
        add_row(first);
        for (int val = 1; val < p; ++val) {
            if (val > 1) add_row(first);
            visit();
            if (t > 1 && first + 1 < k) rec(first + 1, t - 1);
        }
        add_row(first);
    }
};

}  // namespace

BoundedCensus bounded_weight_census(const LinearCode& code, int wmax, bool want_words,
                                    std::uint64_t seed, int threads, bool allow_heuristic,
                                    double volume_budget) {
    const int p = code.p();
    const int v = code.length();
    const int k = code.dim();
    if (wmax < 0 || wmax > v) fail(Error::Kind::invalid_argument, "bounded census: bad wmax");

    BoundedCensus out;
    auto sets = k == 0 ? std::vector<InfoSet>{} : select_information_sets(code, seed);

    int t = 0;
    while (t < k && missed_weight_bound(sets, k, t) <= wmax) ++t;
    bool proven = missed_weight_bound(sets, k, t) > wmax || k == 0;
    double volume = sets.empty() ? 0.0 : enumeration_volume(k, p, t) * static_cast<double>(sets.size());
    if (volume > volume_budget) {
        if (!allow_heuristic) {
            std::ostringstream msg;
            msg << "bounded census infeasible: needs message weight t=" << t << " over "
                << sets.size() << " information sets, ~" << volume
                << " encodings (budget " << volume_budget << "); blocking term C(" << k << ","
                << t << ")*(p-1)^" << t;
            fail(Error::Kind::guard, msg.str());
        }
        while (t > 0 && enumeration_volume(k, p, t) * static_cast<double>(sets.size()) > volume_budget)
            --t;
        proven = false;
    }

    std::vector<std::unordered_set<std::string>> partial(
        static_cast<std::size_t>(sets.size()) * static_cast<std::size_t>(std::max(k, 1)));
    if (t > 0) {
        int chunks = static_cast<int>(sets.size()) * k;
        parallel_chunks(chunks, threads, [&](int chunk) {
            int set_idx = chunk / k;
            int first = chunk % k;
            BoundedEnumerator be(p, v, k, wmax, t, sets[static_cast<std::size_t>(set_idx)],
                                 &partial[static_cast<std::size_t>(chunk)]);
            be.run_top(first);
        });
    }

    std::unordered_set<std::string> all;
    all.insert(std::string(static_cast<std::size_t>(v), '\0'));  // the zero word
    for (auto& part : partial)
        for (const auto& word : part) all.insert(word);

    std::vector<std::string> sorted(all.begin(), all.end());
    std::sort(sorted.begin(), sorted.end());

    auto init_table = [&](CensusKind kind) {
        CensusTable tbl;
        tbl.kind = kind;
        tbl.p = p;
        tbl.length = v;
        tbl.dim = k;
        tbl.fingerprint = code.fingerprint();
        tbl.wmax = wmax;
        tbl.proven = proven;
        return tbl;
    };
    out.hamming = init_table(CensusKind::hamming);
    out.complete = init_table(CensusKind::complete);
    for (const auto& word : sorted) {
        std::vector<int> counts(static_cast<std::size_t>(p), 0);
        for (char c : word) ++counts[static_cast<std::size_t>(static_cast<unsigned char>(c))];
        int weight = v - counts[0];
        out.hamming.entries[{weight}] += BigUint(1);
        out.complete.entries[counts] += BigUint(1);
    }
    if (want_words) {
        out.words.reserve(sorted.size());
        for (const auto& word : sorted)
            out.words.emplace_back(word.begin(), word.end());
    }
    out.proven = proven;
    out.proven_bound = k == 0 ? v + 1 : missed_weight_bound(sets, k, t);
    out.enumerated_weight = t;
    out.num_information_sets = static_cast<int>(sets.size());
    return out;
}

bool bounded_census_feasible(const LinearCode& code, int wmax, std::uint64_t seed,
                             double volume_budget) {
    const int k = code.dim();
    if (k == 0) return true;
    auto sets = select_information_sets(code, seed);
    int t = 0;
    while (t < k && missed_weight_bound(sets, k, t) <= wmax) ++t;
    if (missed_weight_bound(sets, k, t) <= wmax) return false;
    return enumeration_volume(k, code.p(), t) * static_cast<double>(sets.size()) <= volume_budget;
}

BigUint type_census(const LinearCode& code, const WeightType& type, TypeCountStrategy strategy,
                    std::uint64_t seed, int threads) {
    const int p = code.p();
    if (static_cast<int>(type.counts.size()) != p)
        fail(Error::Kind::invalid_argument, "type_census: type length != p");
    long long total = 0;
    for (int c : type.counts) total += c;
    if (total != code.length())
        fail(Error::Kind::invalid_argument, "type_census: type components must sum to the length");

    bool full_ok = false;
    {
        BigUint space = BigUint::pow(static_cast<std::uint64_t>(p),
                                     static_cast<std::uint64_t>(code.dim()));
        full_ok = space <= BigUint(4000000ull);
    }
    if (strategy == TypeCountStrategy::full || (strategy == TypeCountStrategy::automatic && full_ok)) {
        CensusTable table = full_census(code, CensusKind::complete, ShardSpec{0, 1},
                                        BigUint(1000000000ull), threads);
        const BigUint* hit = table.lookup(type.counts);
        return hit ? *hit : BigUint(0);
    }
    int weight = code.length() - type.counts[0];
    const BoundedCensus& census = cached_bounded_census(code, weight, seed, threads);
    const BigUint* hit = census.complete.lookup(type.counts);
    return hit ? *hit : BigUint(0);
}

// ---- .cwe serialization -------------------------------------------------------

std::string to_cwe_text(const CensusTable& table) {
    std::ostringstream out;
    out << "cwe p=" << table.p << " v=" << table.length << " k=" << table.dim
        << " kind=" << (table.kind == CensusKind::hamming ? "hamming" : "complete")
        << " fingerprint=" << table.fingerprint;
    if (table.is_full_kind()) {
        if (!table.full_cover())
            out << " coverage=" << table.covered.to_string();
    } else {
        out << " wmax=" << table.wmax << " status=" << (table.proven ? "proven" : "heuristic");
    }
    out << "\n";
    for (const auto& [key, count] : table.entries) {
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (i) out << ',';
            out << key[i];
        }
        out << ',' << count.to_string() << "\n";
    }
    return out.str();
}

CensusTable from_cwe_text(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header) || header.rfind("cwe ", 0) != 0)
        fail(Error::Kind::parse, ".cwe: missing header");
    CensusTable table;
    bool have_kind = false;
    {
        std::istringstream hs(header.substr(4));
        std::string tok;
        while (hs >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) fail(Error::Kind::parse, ".cwe: bad header token " + tok);
            std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
            if (key == "p") {
                table.p = std::stoi(value);
            } else if (key == "v") {
                table.length = std::stoi(value);
            } else if (key == "k") {
                table.dim = std::stoi(value);
            } else if (key == "kind") {
                have_kind = true;
                if (value == "hamming")
                    table.kind = CensusKind::hamming;
                else if (value == "complete")
                    table.kind = CensusKind::complete;
                else
                    fail(Error::Kind::parse, ".cwe: unknown kind " + value);
            } else if (key == "fingerprint") {
                table.fingerprint = value;
            } else if (key == "coverage") {
                table.covered = BigUint::from_string(value);
            } else if (key == "wmax") {
                table.wmax = std::stoi(value);
            } else if (key == "status") {
                table.proven = (value == "proven");
            } else {
                fail(Error::Kind::parse, ".cwe: unknown header key " + key);
            }
        }
    }
    if (!have_kind || table.p < 2 || table.length < 0 || table.dim < 0)
        fail(Error::Kind::parse, ".cwe: incomplete header");
    if (table.is_full_kind() && table.covered.is_zero())
        table.covered = BigUint::pow(static_cast<std::uint64_t>(table.p),
                                     static_cast<std::uint64_t>(table.dim));
    std::size_t key_len = table.kind == CensusKind::hamming ? 1 : static_cast<std::size_t>(table.p);
    std::string row;
    while (std::getline(in, row)) {
        if (row.empty()) continue;
        std::vector<std::string> parts;
        std::istringstream rs(row);
        std::string cell;
        while (std::getline(rs, cell, ',')) parts.push_back(cell);
        if (parts.size() != key_len + 1) fail(Error::Kind::parse, ".cwe: bad row arity");
        std::vector<int> key;
        for (std::size_t i = 0; i < key_len; ++i) key.push_back(std::stoi(parts[i]));
        BigUint count = BigUint::from_string(parts.back());
        if (!table.entries.emplace(std::move(key), std::move(count)).second)
            fail(Error::Kind::parse, ".cwe: repeated key");
    }
    return table;
}

void write_cwe_file(const CensusTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Error::Kind::io, "cannot open for writing: " + path);
    out << to_cwe_text(table);
    if (!out) fail(Error::Kind::io, "write failed: " + path);
}

CensusTable read_cwe_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Error::Kind::io, "cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_cwe_text(buf.str());
}

// ---- bounded census memo ------------------------------------------------------

namespace {

std::mutex cache_mu;
std::vector<std::pair<std::string, std::shared_ptr<const BoundedCensus>>> census_cache;

std::shared_ptr<const BoundedCensus> cache_find(const std::string& key) {
    for (const auto& [k, val] : census_cache)
        if (k == key) return val;
    return nullptr;
}

}  // namespace

const BoundedCensus& cached_bounded_census(const LinearCode& code, int wmax, std::uint64_t seed,
                                           int threads) {
    std::string fp = code.fingerprint();
    std::string key = fp + ":" + std::to_string(wmax) + ":" + std::to_string(seed);
    {
        std::lock_guard<std::mutex> lock(cache_mu);
        if (auto hit = cache_find(key)) return *hit;
        // A proven run to a larger wmax restricts to this one.
        for (const auto& [k, val] : census_cache) {
            if (k.rfind(fp + ":", 0) != 0 || !val->proven || val->hamming.wmax < wmax) continue;
            if (k.substr(k.rfind(':') + 1) != std::to_string(seed)) continue;
            auto derived = std::make_shared<BoundedCensus>();
            derived->proven = true;
            derived->proven_bound = val->proven_bound;
            derived->enumerated_weight = val->enumerated_weight;
            derived->num_information_sets = val->num_information_sets;
            derived->hamming = val->hamming;
            derived->complete = val->complete;
            derived->hamming.wmax = wmax;
            derived->complete.wmax = wmax;
            std::erase_if(derived->hamming.entries,
                          [&](const auto& e) { return e.first[0] > wmax; });
            std::erase_if(derived->complete.entries, [&](const auto& e) {
                return val->complete.length - e.first[0] > wmax;
            });
            for (const auto& word : val->words) {
                int weight = 0;
                for (std::uint8_t c : word)
                    if (c) ++weight;
                if (weight <= wmax) derived->words.push_back(word);
            }
            census_cache.emplace_back(key, derived);
            return *derived;
        }
    }
    auto fresh = std::make_shared<BoundedCensus>(
        bounded_weight_census(code, wmax, /*want_words=*/true, seed, threads));
    std::lock_guard<std::mutex> lock(cache_mu);
    if (auto hit = cache_find(key)) return *hit;  // lost a race; keep the first
    // Entries are never evicted: callers hold references, and a desk-scale
    // session touches only a handful of codes.
    census_cache.emplace_back(key, fresh);
    return *fresh;
}

}  // namespace pc
