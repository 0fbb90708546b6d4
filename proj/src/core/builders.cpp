#include "builders.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <set>

namespace pc {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over F_p as coefficient vectors c0..c_{d}. Only what table
// construction needs.
std::vector<int> poly_mul_mod(const std::vector<int>& a, const std::vector<int>& b,
                              const std::vector<int>& modulus, int p, int e) {
    std::vector<int> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    // Reduce by the monic modulus x^e + modulus[e-1] x^{e-1} + ... + modulus[0].
    for (std::size_t i = prod.size(); i-- > static_cast<std::size_t>(e);) {
        int c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < e; ++j) {
            std::size_t k = i - e + j;
            prod[k] = ((prod[k] - c * modulus[static_cast<std::size_t>(j)]) % p + p) % p;
        }
    }
    prod.resize(static_cast<std::size_t>(e), 0);
    return prod;
}

int encode(const std::vector<int>& coeffs, int p) {
    int v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * p + coeffs[i];
    return v;
}

std::vector<int> decode(int v, int p, int e) {
    std::vector<int> c(static_cast<std::size_t>(e));
    for (int i = 0; i < e; ++i) {
        c[static_cast<std::size_t>(i)] = v % p;
        v /= p;
    }
    return c;
}

bool poly_has_root(const std::vector<int>& modulus, int p, int e) {
    for (int x = 0; x < p; ++x) {
        long long acc = 1, val = 0;
        for (int i = 0; i < e; ++i) {
            val = (val + modulus[static_cast<std::size_t>(i)] * acc) % p;
            acc = acc * x % p;
        }
        val = (val + acc) % p;  // the monic x^e term
        if (val == 0) return true;
    }
    return false;
}

// Irreducibility over F_p for degree <= 3: no root suffices for 2 and 3.
bool poly_irreducible(const std::vector<int>& modulus, int p, int e) {
    if (e == 1) return true;
    return !poly_has_root(modulus, p, e);
}

}  // namespace

FiniteField::FiniteField(int p, int e) : p_(p), e_(e) {
    if (!is_prime(p)) fail(Error::Kind::invalid_argument, "field characteristic must be prime");
    if (e < 1 || e > 3) fail(Error::Kind::invalid_argument, "field degree must be 1, 2 or 3");
    q_ = 1;
    for (int i = 0; i < e; ++i) q_ *= p;
    if (q_ > 1331) fail(Error::Kind::invalid_argument, "field order above 1331");

    if (e == 1) {
        modulus_.assign(1, 0);
    } else if (p == 3 && e == 2) {
        modulus_ = {1, 0};  // GF(9) = GF(3)[t]/(t^2+1)
    } else {
        // First irreducible monic polynomial in encoding order.
        for (int enc = 0; enc < q_; ++enc) {
            std::vector<int> cand = decode(enc, p, e);
            if (poly_irreducible(cand, p, e)) {
                modulus_ = cand;
                break;
            }
        }
        if (modulus_.empty()) fail(Error::Kind::assertion, "no irreducible modulus found");
    }

    add_.resize(static_cast<std::size_t>(q_) * q_);
    mul_.resize(static_cast<std::size_t>(q_) * q_);
    neg_.resize(static_cast<std::size_t>(q_));
    inv_.assign(static_cast<std::size_t>(q_), -1);
    for (int a = 0; a < q_; ++a) {
        auto ca = decode(a, p, e);
        std::vector<int> cn(ca.size());
        for (std::size_t i = 0; i < ca.size(); ++i) cn[i] = (p - ca[i]) % p;
        neg_[static_cast<std::size_t>(a)] = encode(cn, p);
        for (int b = 0; b < q_; ++b) {
            auto cb = decode(b, p, e);
            std::vector<int> cs(ca.size());
            for (std::size_t i = 0; i < ca.size(); ++i) cs[i] = (ca[i] + cb[i]) % p;
            add_[static_cast<std::size_t>(a) * q_ + b] = encode(cs, p);
            int prod = (e == 1) ? (a * b) % p : encode(poly_mul_mod(ca, cb, modulus_, p, e), p);
            mul_[static_cast<std::size_t>(a) * q_ + b] = prod;
            if (prod == 1) inv_[static_cast<std::size_t>(a)] = b;
        }
    }
    check_axioms();
}

int FiniteField::inv(int a) const {
    int r = inv_[static_cast<std::size_t>(a)];
    if (r < 0) fail(Error::Kind::invalid_argument, "inverse of zero");
    return r;
}

void FiniteField::check_axioms() const {
    for (int a = 1; a < q_; ++a)
        if (inv_[static_cast<std::size_t>(a)] < 0)
            fail(Error::Kind::assertion, "field element without inverse");
    auto check_triple = [&](int a, int b, int c) {
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            fail(Error::Kind::assertion, "field multiplication not associative");
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
            fail(Error::Kind::assertion, "field distributivity fails");
        if (add(add(a, b), c) != add(a, add(b, c)))
            fail(Error::Kind::assertion, "field addition not associative");
    };
    if (q_ <= 128) {
        for (int a = 0; a < q_; ++a)
            for (int b = 0; b < q_; ++b)
                for (int c = 0; c < q_; ++c) check_triple(a, b, c);
    } else {
        std::mt19937_64 rng(0xf1e1dull);
        std::uniform_int_distribution<int> dist(0, q_ - 1);
        for (int i = 0; i < 20000; ++i) check_triple(dist(rng), dist(rng), dist(rng));
    }
    for (int a = 0; a < q_; ++a) {
        for (int b = 0; b < q_; ++b) {
            if (mul(a, b) != mul(b, a) || add(a, b) != add(b, a))
                fail(Error::Kind::assertion, "field not commutative");
        }
    }
}

NearField9::NearField9() : gf_(3, 2) {
    std::array<bool, 9> square{};
    for (int x = 0; x < 9; ++x) square[static_cast<std::size_t>(gf_.mul(x, x))] = true;
    auto frob = [&](int a) { return gf_.mul(a, gf_.mul(a, a)); };  // a^3
    mul_.resize(81);
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b)
            mul_[static_cast<std::size_t>(a) * 9 + b] =
                square[static_cast<std::size_t>(b)] ? gf_.mul(a, b) : gf_.mul(frob(a), b);
    check_axioms();
}

void NearField9::check_axioms() {
    bool found_witness = false;
    for (int a = 0; a < 9; ++a) {
        for (int b = 0; b < 9; ++b) {
            for (int c = 0; c < 9; ++c) {
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    fail(Error::Kind::assertion, "near-field multiplication not associative");
                if (mul(add(a, b), c) != add(mul(a, c), mul(b, c)))
                    fail(Error::Kind::assertion, "near-field right distributivity fails");
                if (!found_witness && mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) {
                    witness_ = {a, b, c};
                    found_witness = true;
                }
            }
        }
    }
    if (!found_witness)
        fail(Error::Kind::assertion, "near-field is left distributive (it would be a field)");
}

Plane build_pg2(int q) {
    static const std::set<int> supported{2, 3, 4, 5, 7, 8, 9, 11};
    if (!supported.count(q))
        fail(Error::Kind::invalid_argument, "build_pg2: unsupported order " + std::to_string(q));
    int p = q, e = 1;
    if (q == 4) p = 2, e = 2;
    if (q == 8) p = 2, e = 3;
    if (q == 9) p = 3, e = 2;
    FiniteField f(p, e);

    // Normalized triples in lexicographic order; first nonzero coordinate 1.
    std::vector<std::array<int, 3>> reps;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c) {
                std::array<int, 3> t{a, b, c};
                int lead = t[0] != 0 ? t[0] : (t[1] != 0 ? t[1] : t[2]);
                if (lead == 1) reps.push_back(t);
            }
    const int v = static_cast<int>(reps.size());

    std::vector<Line> lines;
    lines.reserve(static_cast<std::size_t>(v));
    for (const auto& dualpt : reps) {
        Line ln;
        for (int x = 0; x < v; ++x) {
            const auto& pt = reps[static_cast<std::size_t>(x)];
            int s = 0;
            for (int i = 0; i < 3; ++i) s = f.add(s, f.mul(dualpt[static_cast<std::size_t>(i)],
                                                           pt[static_cast<std::size_t>(i)]));
            if (s == 0) ln.push_back(x);
        }
        lines.push_back(std::move(ln));
    }
    return Plane::build(IncidenceSystem::make(v, std::move(lines)));
}

Plane build_hall9() {
    NearField9 nf;
    // Affine points (x,y) -> 9x+y. Ideal point for slope m: 81+m; for the
    // vertical class: 90. One ideal line at the end.
    auto pt = [](int x, int y) { return 9 * x + y; };
    std::vector<Line> lines;
    for (int m = 0; m < 9; ++m) {
        for (int b = 0; b < 9; ++b) {
            Line ln;
            for (int x = 0; x < 9; ++x) ln.push_back(pt(x, nf.add(nf.mul(x, m), b)));
            ln.push_back(81 + m);
            lines.push_back(std::move(ln));
        }
    }
    for (int c = 0; c < 9; ++c) {
        Line ln;
        for (int y = 0; y < 9; ++y) ln.push_back(pt(c, y));
        ln.push_back(90);
        lines.push_back(std::move(ln));
    }
    Line ideal;
    for (int i = 81; i <= 90; ++i) ideal.push_back(i);
    lines.push_back(std::move(ideal));
    return Plane::build(IncidenceSystem::make(91, std::move(lines)));
}

IncidenceSystem free_plane_stage(int n, long long point_budget) {
    if (n < 1) fail(Error::Kind::invalid_argument, "free_plane_stage: n must be >= 1");
    long long num_points = 4;
    std::vector<Line> lines = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};

    for (int stage = 1; stage < n; ++stage) {
        // Pairs of lines with no common point each spawn a point; pairs of
        // points on no common line each spawn a line. Both reads are against
        // the current stage only.
        std::vector<std::vector<int>> through(static_cast<std::size_t>(num_points));
        for (std::size_t li = 0; li < lines.size(); ++li)
            for (int x : lines[li]) through[static_cast<std::size_t>(x)].push_back(static_cast<int>(li));

        std::set<std::pair<int, int>> covered_line_pairs;
        std::set<std::pair<int, int>> covered_point_pairs;
        for (const auto& tl : through)
            for (std::size_t i = 0; i < tl.size(); ++i)
                for (std::size_t j = i + 1; j < tl.size(); ++j)
                    covered_line_pairs.emplace(tl[i], tl[j]);
        for (const auto& ln : lines)
            for (std::size_t i = 0; i < ln.size(); ++i)
                for (std::size_t j = i + 1; j < ln.size(); ++j)
                    covered_point_pairs.emplace(ln[i], ln[j]);

        long long new_points = 0;
        for (std::size_t a = 0; a < lines.size(); ++a)
            for (std::size_t b = a + 1; b < lines.size(); ++b)
                if (!covered_line_pairs.count({static_cast<int>(a), static_cast<int>(b)})) ++new_points;
        if (num_points + new_points > point_budget)
            fail(Error::Kind::guard, "free_plane_stage: point budget exceeded at stage " +
                                         std::to_string(stage + 1));

        std::vector<Line> new_lines;
        for (int x = 0; x < num_points; ++x)
            for (int y = x + 1; y < num_points; ++y)
                if (!covered_point_pairs.count({x, y})) new_lines.push_back({x, y});

        long long next_point = num_points;
        for (std::size_t a = 0; a < lines.size(); ++a) {
            for (std::size_t b = a + 1; b < lines.size(); ++b) {
                if (covered_line_pairs.count({static_cast<int>(a), static_cast<int>(b)})) continue;
                lines[a].push_back(static_cast<int>(next_point));
                lines[b].push_back(static_cast<int>(next_point));
                ++next_point;
            }
        }
        num_points = next_point;
        for (auto& ln : new_lines) lines.push_back(std::move(ln));
    }
    return IncidenceSystem::make(static_cast<int>(num_points), std::move(lines));
}

IncidenceSystem build_pappus_config_at_flag(const Plane& pg3, int point, int line) {
    if (pg3.order() != 3) fail(Error::Kind::invalid_argument, "Pappus flag deletion needs a plane of order 3");
    if (!pg3.incident(point, line)) fail(Error::Kind::invalid_argument, "(point, line) is not a flag");

    std::vector<int> keep_index(static_cast<std::size_t>(pg3.num_points()), -1);
    int next = 0;
    for (int x = 0; x < pg3.num_points(); ++x) {
        if (!pg3.incident(x, line)) keep_index[static_cast<std::size_t>(x)] = next++;
    }
    std::vector<Line> lines;
    for (int li = 0; li < pg3.num_lines(); ++li) {
        if (pg3.incident(point, li)) continue;
        Line ln;
        for (int x : pg3.line(li)) {
            int k = keep_index[static_cast<std::size_t>(x)];
            if (k >= 0) ln.push_back(k);
        }
        lines.push_back(std::move(ln));
    }
    return IncidenceSystem::make(next, std::move(lines));
}

IncidenceSystem build_pappus_config() {
    Plane pg3 = build_pg2(3);
    int line = pg3.lines_through(0).front();
    return build_pappus_config_at_flag(pg3, 0, line);
}

IncidenceSystem build_desargues_config() {
    // Vertices: 2-subsets of {0..4} in lexicographic order.
    std::vector<std::pair<int, int>> vertices;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) vertices.emplace_back(a, b);
    std::vector<Line> lines;
    for (const auto& [a, b] : vertices) {
        Line ln;
        for (std::size_t j = 0; j < vertices.size(); ++j) {
            const auto& [c, d] = vertices[j];
            if (a != c && a != d && b != c && b != d) ln.push_back(static_cast<int>(j));
        }
        lines.push_back(std::move(ln));
    }
    return IncidenceSystem::make(10, std::move(lines));
}

IncidenceSystem pattern_single_line(int size) {
    if (size < 2) fail(Error::Kind::invalid_argument, "single line needs >= 2 points");
    Line ln(static_cast<std::size_t>(size));
    std::iota(ln.begin(), ln.end(), 0);
    return IncidenceSystem::make(size, {std::move(ln)});
}

IncidenceSystem pattern_triangle() {
    return IncidenceSystem::make(3, {{0, 1}, {1, 2}, {0, 2}});
}

IncidenceSystem pattern_two_full_lines(int p) {
    if (p < 2) fail(Error::Kind::invalid_argument, "two_full_lines needs p >= 2");
    int v = p * p + p + 1;
    Line a, b;
    a.push_back(0);
    b.push_back(0);
    for (int i = 1; i <= p; ++i) a.push_back(i);
    for (int i = p + 1; i <= 2 * p; ++i) b.push_back(i);
    return IncidenceSystem::make(v, {std::move(a), std::move(b)});
}

IncidenceSystem pattern_k_lines_generic(int k, int p) {
    if (k < 1 || p < 2) fail(Error::Kind::invalid_argument, "k_lines_generic needs k >= 1, p >= 2");
    int v = p * p + p + 1;
    // Meet point for each pair, then fresh points filling each line to p+1.
    long long meets = static_cast<long long>(k) * (k - 1) / 2;
    long long fresh_per_line = (p + 1) - (k - 1);
    if (fresh_per_line < 0 || meets + k * fresh_per_line > v)
        fail(Error::Kind::invalid_argument, "k_lines_generic: parameters out of desk-scale range");
    std::vector<Line> lines(static_cast<std::size_t>(k));
    int next = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            lines[static_cast<std::size_t>(i)].push_back(next);
            lines[static_cast<std::size_t>(j)].push_back(next);
            ++next;
        }
    for (int i = 0; i < k; ++i)
        for (long long t = 0; t < fresh_per_line; ++t) lines[static_cast<std::size_t>(i)].push_back(next++);
    return IncidenceSystem::make(v, std::move(lines));
}

}  // namespace pc
