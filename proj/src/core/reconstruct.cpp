#include "reconstruct.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "inc_io.hpp"
#include "iso.hpp"
#include "parallel.hpp"

namespace pc {

namespace {

int two_to(int k) { return 1 << k; }

BigUint type_factorial(const WeightType& type) {
    BigUint f(1);
    for (int c : type.counts) f *= BigUint::factorial(static_cast<std::uint64_t>(c));
    return f;
}

}  // namespace

PowersWord powers_word(const std::vector<Line>& lines, int num_points, int p) {
    const int k = static_cast<int>(lines.size());
    if (k > 20 || two_to(k) > p)
        fail(Error::Kind::invalid_argument, "powers_word requires p >= 2^k");
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            if (lines[i] == lines[j])
                fail(Error::Kind::invalid_argument, "powers_word: repeated line");
    }
    PowersWord pw;
    pw.k = k;
    pw.p = p;
    pw.lines = lines;
    pw.word = FpVector(p, num_points);
    for (int i = 0; i < k; ++i) {
        for (int x : lines[static_cast<std::size_t>(i)]) {
            if (x < 0 || x >= num_points)
                fail(Error::Kind::invalid_argument, "powers_word: point index out of range");
            pw.word.coords[static_cast<std::size_t>(x)] =
                static_cast<std::uint8_t>(pw.word.coords[static_cast<std::size_t>(x)] + two_to(i));
        }
    }
    return pw;
}

std::vector<Line> reconstruct_lines(const FpVector& w, int k) {
    if (k > 20 || two_to(k) > w.p)
        fail(Error::Kind::invalid_argument, "reconstruct_lines requires p >= 2^k");
    for (std::uint8_t c : w.coords)
        if (c >= two_to(k))
            fail(Error::Kind::invalid_argument,
                 "reconstruct_lines: coordinate needs a binary digit beyond 2^" + std::to_string(k));
    std::vector<Line> lines(static_cast<std::size_t>(k));
    for (int x = 0; x < w.length(); ++x) {
        int value = w.coords[static_cast<std::size_t>(x)];
        for (int i = 0; i < k; ++i)
            if (value & two_to(i)) lines[static_cast<std::size_t>(i)].push_back(x);
    }
    return lines;
}

namespace {

// All codewords of the given type. Small codes are enumerated outright;
// otherwise the bounded-weight census supplies the word list.
std::vector<FpVector> words_of_type(const LinearCode& code, const WeightType& type,
                                    std::uint64_t seed, int threads, std::string* source) {
    const int p = code.p();
    const int v = code.length();
    std::vector<FpVector> hits;
    BigUint space = BigUint::pow(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(code.dim()));
    if (space <= BigUint(4000000ull)) {
        if (source) *source = "full-census";
        std::uint64_t n = space.to_u64();
        const auto& rows = code.rows();
        for (std::uint64_t m = 0; m < n; ++m) {
            FpVector w(p, v);
            std::uint64_t rest = m;
            for (const auto& row : rows) {
                int digit = static_cast<int>(rest % static_cast<std::uint64_t>(p));
                rest /= static_cast<std::uint64_t>(p);
                if (digit == 0) continue;
                for (int c = 0; c < v; ++c)
                    w.coords[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(
                        (w.coords[static_cast<std::size_t>(c)] + digit * row[static_cast<std::size_t>(c)]) % p);
            }
            if (type_of(w) == type) hits.push_back(std::move(w));
        }
        return hits;
    }
    if (source) *source = "bounded-census";
    int weight = v - type.counts[0];
    const BoundedCensus& census = cached_bounded_census(code, weight, seed, threads);
    if (!census.proven)
        fail(Error::Kind::guard, "words_of_type: bounded census not proven complete");
    for (const auto& bytes : census.words) {
        FpVector w(p, v);
        w.coords = bytes;
        if (type_of(w) == type) hits.push_back(std::move(w));
    }
    return hits;
}

}  // namespace

Lemma39Report lemma39_verify(const Plane& plane, int k, std::uint64_t seed, int threads) {
    const int p = plane.order();
    if (!is_prime_int(p)) fail(Error::Kind::invalid_argument, "lemma39_verify: plane order not prime");
    if (k < 1 || two_to(k) > p)
        fail(Error::Kind::invalid_argument, "lemma39_verify requires 1 <= k with 2^k <= p");

    Lemma39Report rep;
    rep.p = p;
    rep.k = k;

    std::vector<Line> chosen;
    for (int i = 0; i < k; ++i) chosen.push_back(plane.line(i));
    PowersWord pw = powers_word(chosen, plane.num_points(), p);
    rep.type = type_of(pw.word);

    // Ordered tuples of distinct plane lines sharing the type.
    const int b = plane.num_lines();
    std::vector<int> tuple(static_cast<std::size_t>(k));
    std::uint64_t tuples = 0;
    auto count_tuples = [&](auto&& self, int depth) -> void {
        if (depth == k) {
            std::vector<Line> lines;
            for (int idx : tuple) lines.push_back(plane.line(idx));
            if (type_of(powers_word(lines, plane.num_points(), p).word) == rep.type) ++tuples;
            return;
        }
        for (int li = 0; li < b; ++li) {
            bool dup = false;
            for (int d = 0; d < depth; ++d)
                if (tuple[static_cast<std::size_t>(d)] == li) dup = true;
            if (dup) continue;
            tuple[static_cast<std::size_t>(depth)] = li;
            self(self, depth + 1);
        }
    };
    count_tuples(count_tuples, 0);
    rep.tuple_count = BigUint(tuples);

    LinearCode code = code_from_system(plane.system(), p);
    rep.a_j = type_census(code, rep.type, TypeCountStrategy::automatic, seed, threads);

    std::vector<FpVector> words = words_of_type(code, rep.type, seed, threads, &rep.a_j_source);
    rep.words_checked = words.size();

    std::map<Line, int> line_lookup;
    for (int li = 0; li < b; ++li) line_lookup.emplace(plane.line(li), li);
    for (const auto& w : words) {
        std::vector<Line> lines = reconstruct_lines(w, k);
        std::set<int> distinct;
        bool ok = true;
        for (const auto& ln : lines) {
            auto it = line_lookup.find(ln);
            if (it == line_lookup.end()) {
                ok = false;
                break;
            }
            distinct.insert(it->second);
        }
        if (ok && static_cast<int>(distinct.size()) != k) ok = false;
        if (!ok) ++rep.reconstruction_failures;
    }

    rep.counts_match = (rep.a_j == rep.tuple_count) &&
                       (rep.a_j == BigUint(static_cast<std::uint64_t>(rep.words_checked)));
    rep.pass = rep.counts_match && rep.reconstruction_failures == 0;
    return rep;
}

InclusionReport theorem42_count(const IncidenceSystem& pattern, const Plane& plane,
                                std::uint64_t seed, int threads) {
    if (!validate_partial_linear(pattern).at_least(Verdict::partial_linear_space))
        fail(Error::Kind::invalid_argument, "theorem42: pattern is not a partial linear space");
    const int p = plane.order();
    const int k = pattern.num_lines();
    if (!is_prime_int(p)) fail(Error::Kind::invalid_argument, "theorem42: plane order not prime");
    if (two_to(k) > p)
        fail(Error::Kind::guard, "theorem42 requires 2^k <= p (pattern has too many lines)");

    InclusionReport rep;
    rep.p = p;
    rep.k = k;
    rep.plane_fingerprint = fingerprint(plane.system());
    rep.pattern_fingerprint = fingerprint(pattern);
    rep.note = "classes enumerated from realized k-subsets of plane lines; "
               "unrealized classes have a_j = 0 and are omitted";

    const int b = plane.num_lines();
    const int v = plane.num_points();

    // Group the k-subsets of plane lines into isomorphism classes. The fast
    // key is the multiset of point membership patterns minimized over line
    // permutations: equal keys admit an explicit isomorphism (match lines by
    // the permutation, points within equal patterns freely), so grouping is
    // exact. Classes are then keyed by the canonical form of a representative
    // core, which also merges any over-split.
    struct Accum {
        std::uint64_t count = 0;
        std::vector<int> representative;
    };
    using FastKey = std::vector<std::uint64_t>;
    std::vector<std::map<FastKey, Accum>> partials(static_cast<std::size_t>(std::max(1, b)));

    std::vector<std::vector<int>> perms;  // the k! line-index permutations
    {
        std::vector<int> idx(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
        do {
            perms.push_back(idx);
        } while (std::next_permutation(idx.begin(), idx.end()));
    }

    auto classify_subset = [&](const std::vector<int>& subset, std::map<FastKey, Accum>& sink,
                               std::vector<std::uint32_t>& mask_scratch) {
        std::vector<std::pair<std::uint32_t, int>> patterns;  // mask -> point count
        std::vector<int> touched;
        for (int li = 0; li < k; ++li)
            for (int x : plane.line(subset[static_cast<std::size_t>(li)])) {
                if (mask_scratch[static_cast<std::size_t>(x)] == 0) touched.push_back(x);
                mask_scratch[static_cast<std::size_t>(x)] |= 1u << li;
            }
        for (int x : touched) {
            std::uint32_t mask = mask_scratch[static_cast<std::size_t>(x)];
            mask_scratch[static_cast<std::size_t>(x)] = 0;
            bool found = false;
            for (auto& [m, c] : patterns)
                if (m == mask) {
                    ++c;
                    found = true;
                    break;
                }
            if (!found) patterns.emplace_back(mask, 1);
        }
        FastKey best;
        FastKey candidate;
        for (const auto& perm : perms) {
            candidate.clear();
            for (const auto& [mask, count] : patterns) {
                std::uint32_t remapped = 0;
                for (int li = 0; li < k; ++li)
                    if (mask & (1u << li))
                        remapped |= 1u << perm[static_cast<std::size_t>(li)];
                candidate.push_back((static_cast<std::uint64_t>(remapped) << 32) |
                                    static_cast<std::uint32_t>(count));
            }
            std::sort(candidate.begin(), candidate.end());
            if (best.empty() || candidate < best) best = candidate;
        }
        auto& acc = sink[best];
        if (acc.count == 0) acc.representative = subset;
        ++acc.count;
    };

    if (k == 0) {
        std::vector<std::uint32_t> scratch(static_cast<std::size_t>(v), 0);
        classify_subset({}, partials[0], scratch);
    } else {
        parallel_chunks(b, threads, [&](int first) {
            auto& sink = partials[static_cast<std::size_t>(first)];
            std::vector<std::uint32_t> scratch(static_cast<std::size_t>(v), 0);
            std::vector<int> subset(static_cast<std::size_t>(k));
            subset[0] = first;
            auto rec = [&](auto&& self, int depth, int next) -> void {
                if (depth == k) {
                    classify_subset(subset, sink, scratch);
                    return;
                }
                for (int li = next; li < b; ++li) {
                    subset[static_cast<std::size_t>(depth)] = li;
                    self(self, depth + 1, li + 1);
                }
            };
            rec(rec, 1, first + 1);
        });
    }

    // Re-key by canonical bytes of the representative cores.
    struct MergedAccum {
        std::uint64_t count = 0;
        std::vector<int> representative;
    };
    std::map<std::vector<std::uint8_t>, MergedAccum> classes;
    for (auto& part : partials)
        for (auto& [fast_key, acc] : part) {
            std::vector<Line> lines;
            for (int li : acc.representative) lines.push_back(plane.line(li));
            IncidenceSystem core = covered_core(IncidenceSystem::make(v, std::move(lines)));
            auto key = canonical_form(core).bytes;
            auto& dst = classes[key];
            if (dst.count == 0) dst.representative = acc.representative;
            dst.count += acc.count;
        }

    LinearCode code = code_from_system(plane.system(), p);
    bool all_consistent = true;

    for (const auto& [key, acc] : classes) {
        InclusionClassRow row;
        row.subsets_in_class = BigUint(acc.count);

        std::vector<Line> lines;
        for (int li : acc.representative) lines.push_back(plane.line(li));
        IncidenceSystem y = IncidenceSystem::make(v, lines);
        IncidenceSystem core = covered_core(y);
        CanonicalForm cf = canonical_form(core);
        row.class_hash = cf.hex_hash();

        row.aut = automorphism_count(y);
        row.pattern_copies = count_copies(pattern, y);

        // The class type: powers word over the core with its canonical line
        // order, padded with the isolated points' zeros.
        std::vector<Line> ordered;
        for (int pos = 0; pos < core.num_lines(); ++pos)
            ordered.push_back(core.line(cf.line_order[static_cast<std::size_t>(pos)]));
        if (k > 0) {
            PowersWord pw = powers_word(ordered, core.num_points(), p);
            row.type = type_of(pw.word);
        } else {
            row.type.counts.assign(static_cast<std::size_t>(p), 0);
        }
        row.type.counts[0] += v - core.num_points();

        // a_j: census when affordable, otherwise the ordered-line-tuple count
        // that the lemma machinery certifies on the feasible instances.
        BigUint space = BigUint::pow(static_cast<std::uint64_t>(p),
                                     static_cast<std::uint64_t>(code.dim()));
        int type_weight = v - row.type.counts[0];
        if (space <= BigUint(4000000ull)) {
            row.a_j_source = "full-census";
            row.a_j = type_census(code, row.type, TypeCountStrategy::full, seed, threads);
        } else if (bounded_census_feasible(code, type_weight, seed)) {
            row.a_j_source = "bounded-census";
            row.a_j = type_census(code, row.type, TypeCountStrategy::bounded_weight, seed, threads);
        } else {
            row.a_j_source = "line-tuples";
            // Each ordering of each subset in the class contributes one word;
            // orderings of the representative stand in for the whole class.
            std::uint64_t matching_orderings = 0;
            std::vector<Line> rep_lines;
            for (int li : acc.representative) rep_lines.push_back(plane.line(li));
            std::sort(rep_lines.begin(), rep_lines.end());
            do {
                WeightType t = type_of(powers_word(rep_lines, v, p).word);
                if (t == row.type) ++matching_orderings;
            } while (std::next_permutation(rep_lines.begin(), rep_lines.end()));
            row.a_j = row.subsets_in_class * BigUint(matching_orderings);
        }

        BigUint jfact = type_factorial(row.type);
        row.alpha = BigRat(row.pattern_copies * jfact, row.aut);
        BigRat contribution = row.alpha * BigRat(row.a_j, BigUint(1));
        if (!contribution.is_integer())
            fail(Error::Kind::assertion, "theorem42: non-integral class contribution");
        row.contribution = contribution.num();

        // i(Y_j, plane) = j! a_j / #Aut(Y_j) must reproduce the subset count.
        BigUint q, r;
        BigUint::divmod(jfact * row.a_j, row.aut, q, r);
        row.class_count_consistent = r.is_zero() && q == row.subsets_in_class;
        all_consistent = all_consistent && row.class_count_consistent;

        rep.total += row.contribution;
        rep.rows.push_back(std::move(row));
    }

    rep.direct_count = count_copies(pattern, plane.system());
    rep.match = all_consistent && rep.total == rep.direct_count;
    return rep;
}

Corollary43Report corollary43_compare(const Plane& a, const Plane& b,
                                      const IncidenceSystem& pattern, std::uint64_t seed,
                                      int threads) {
    if (a.order() != b.order())
        fail(Error::Kind::invalid_argument, "corollary43: planes must share the order");
    Corollary43Report rep;
    rep.first = theorem42_count(pattern, a, seed, threads);
    rep.second = theorem42_count(pattern, b, seed, threads);
    rep.totals_equal = rep.first.total == rep.second.total;

    std::map<WeightType, BigUint> ta, tb;
    for (const auto& row : rep.first.rows) ta[row.type] = row.a_j;
    for (const auto& row : rep.second.rows) tb[row.type] = row.a_j;
    rep.type_tables_equal = ta == tb;
    return rep;
}

}  // namespace pc
