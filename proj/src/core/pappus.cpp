#include "pappus.hpp"

#include <array>
#include <chrono>

#include "builders.hpp"
#include "inc_io.hpp"
#include "iso.hpp"
#include "parallel.hpp"

namespace pc {

BigUint pappus_bound(int n) {
    if (n < 2) fail(Error::Kind::invalid_argument, "pappus_bound: order must be >= 2");
    std::uint64_t v = static_cast<std::uint64_t>(n) * n + n + 1;
    BigUint value = BigUint(2) * BigUint::binomial(v, 2) * BigUint::binomial(static_cast<std::uint64_t>(n), 3) *
                    BigUint::binomial(static_cast<std::uint64_t>(n), 3);
    BigUint q, r;
    BigUint::divmod(value, BigUint(3), q, r);
    if (!r.is_zero()) fail(Error::Kind::assertion, "pappus_bound: 3 does not divide 2*C(v,2)*C(n,3)^2");
    return q;
}

namespace {

constexpr std::array<std::array<int, 3>, 6> kPerms3{{{0, 1, 2},
                                                     {0, 2, 1},
                                                     {1, 0, 2},
                                                     {1, 2, 0},
                                                     {2, 0, 1},
                                                     {2, 1, 0}}};

std::vector<std::array<int, 3>> triples_of(int n) {
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) out.push_back({a, b, c});
    return out;
}

struct SampledWitness {
    std::array<int, 3> x, y, z;
};

}  // namespace

PappusCount count_pappus(const Plane& plane, int threads, std::uint64_t iso_sample_target) {
    const int n = plane.order();
    if (n > 11) fail(Error::Kind::guard, "count_pappus: order above 11");
    const int b = plane.num_lines();
    auto start = std::chrono::steady_clock::now();

    PappusCount out;
    out.order = n;
    out.bound = pappus_bound(n);

    const auto triples = triples_of(n);
    const std::uint64_t t3 = triples.size();
    const std::uint64_t pairs = static_cast<std::uint64_t>(b) * (b - 1);
    const std::uint64_t total = pairs * t3 * t3 * 6;
    out.witnesses_evaluated = BigUint(total);
    const std::uint64_t stride =
        iso_sample_target == 0 ? 0 : std::max<std::uint64_t>(1, total / iso_sample_target);

    std::vector<std::uint64_t> closing_per_shard(static_cast<std::size_t>(b), 0);
    std::vector<std::vector<SampledWitness>> samples_per_shard(static_cast<std::size_t>(b));

    parallel_chunks(b, threads, [&](int l1) {
        std::uint64_t closing = 0;
        auto& samples = samples_per_shard[static_cast<std::size_t>(l1)];
        std::vector<int> pts1, pts2;
        int x[3], y[3], z[3];
        int joins[3][3];
        for (int l2 = 0; l2 < b; ++l2) {
            if (l2 == l1) continue;
            const std::uint64_t pair_index =
                static_cast<std::uint64_t>(l1) * (b - 1) + (l2 < l1 ? l2 : l2 - 1);
            const int m = plane.meet(l1, l2);
            pts1.clear();
            pts2.clear();
            for (int pt : plane.line(l1))
                if (pt != m) pts1.push_back(pt);
            for (int pt : plane.line(l2))
                if (pt != m) pts2.push_back(pt);

            for (std::uint64_t ai = 0; ai < t3; ++ai) {
                const auto& at = triples[ai];
                x[0] = pts1[static_cast<std::size_t>(at[0])];
                x[1] = pts1[static_cast<std::size_t>(at[1])];
                x[2] = pts1[static_cast<std::size_t>(at[2])];
                for (std::uint64_t bi = 0; bi < t3; ++bi) {
                    const auto& bt = triples[bi];
                    y[0] = pts2[static_cast<std::size_t>(bt[0])];
                    y[1] = pts2[static_cast<std::size_t>(bt[1])];
                    y[2] = pts2[static_cast<std::size_t>(bt[2])];
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) joins[i][j] = plane.join(x[i], y[j]);

                    for (int perm = 0; perm < 6; ++perm) {
                        const auto& sigma = kPerms3[static_cast<std::size_t>(perm)];
                        // z_i joins the two cross pairs avoiding index i.
                        z[0] = plane.meet(joins[1][sigma[2]], joins[2][sigma[1]]);
                        z[1] = plane.meet(joins[0][sigma[2]], joins[2][sigma[0]]);
                        z[2] = plane.meet(joins[0][sigma[1]], joins[1][sigma[0]]);
                        if (z[0] == z[1] || z[0] == z[2] || z[1] == z[2])
                            fail(Error::Kind::assertion,
                                 "count_pappus: coincident diagonal points in an admissible witness");
                        if (plane.join(z[0], z[1]) != plane.join(z[0], z[2])) continue;
                        ++closing;
                        if (stride) {
                            std::uint64_t ordinal =
                                ((pair_index * t3 + ai) * t3 + bi) * 6 + static_cast<std::uint64_t>(perm);
                            if (ordinal % stride == 0) {
                                SampledWitness w;
                                w.x = {x[0], x[1], x[2]};
                                w.y = {y[sigma[0]], y[sigma[1]], y[sigma[2]]};
                                w.z = {z[0], z[1], z[2]};
                                samples.push_back(w);
                            }
                        }
                    }
                }
            }
        }
        closing_per_shard[static_cast<std::size_t>(l1)] = closing;
    });

    std::uint64_t closing_total = 0;
    for (std::uint64_t c : closing_per_shard) closing_total += c;
    out.witnesses_closing = BigUint(closing_total);
    BigUint q, r;
    BigUint::divmod(out.witnesses_closing, BigUint(18), q, r);
    if (!r.is_zero())
        fail(Error::Kind::assertion, "count_pappus: closing witness count not divisible by 18");
    out.copies = q;
    out.is_pappian = out.copies == out.bound;

    // Isomorphism spot check on the sampled closing witnesses: the nine points
    // with the nine Pappus triples must reproduce the configuration even when
    // extra collinearities occur.
    IncidenceSystem pappus = build_pappus_config();
    for (const auto& shard : samples_per_shard) {
        for (const auto& w : shard) {
            ++out.iso_samples;
            std::array<int, 9> pts{w.x[0], w.x[1], w.x[2], w.y[0], w.y[1], w.y[2],
                                   w.z[0], w.z[1], w.z[2]};
            bool distinct = true;
            for (int i = 0; i < 9 && distinct; ++i)
                for (int j = i + 1; j < 9; ++j)
                    if (pts[static_cast<std::size_t>(i)] == pts[static_cast<std::size_t>(j)]) {
                        distinct = false;
                        break;
                    }
            if (!distinct) {
                ++out.iso_exceptions;
                continue;
            }
            auto local = [&](int plane_point) {
                for (int i = 0; i < 9; ++i)
                    if (pts[static_cast<std::size_t>(i)] == plane_point) return i;
                return -1;
            };
            std::vector<Line> lines = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (i == j) continue;
                    int k = 3 - i - j;
                    lines.push_back({local(pts[static_cast<std::size_t>(i)]),
                                     local(pts[static_cast<std::size_t>(3 + j)]),
                                     local(pts[static_cast<std::size_t>(6 + k)])});
                }
            try {
                IncidenceSystem copy = IncidenceSystem::make(9, std::move(lines));
                if (!are_isomorphic(copy, pappus)) ++out.iso_exceptions;
            } catch (const Error&) {
                ++out.iso_exceptions;  // repeated lines etc.: not a Pappus copy
            }
        }
    }

    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

BigUint count_desargues_closing(const Plane& plane, int threads) {
    const int n = plane.order();
    if (n > 9) fail(Error::Kind::guard, "count_desargues_closing: order above 9");
    const int v = plane.num_points();

    std::vector<std::uint64_t> closing_per_center(static_cast<std::size_t>(v), 0);
    parallel_chunks(v, threads, [&](int c) {
        std::uint64_t closing = 0;
        const auto& through = plane.lines_through(c);
        const int deg = static_cast<int>(through.size());
        std::vector<std::vector<int>> off(static_cast<std::size_t>(deg));
        for (int i = 0; i < deg; ++i)
            for (int pt : plane.line(through[static_cast<std::size_t>(i)]))
                if (pt != c) off[static_cast<std::size_t>(i)].push_back(pt);

        int a[3], bb[3];
        for (int i1 = 0; i1 < deg; ++i1)
            for (int i2 = i1 + 1; i2 < deg; ++i2)
                for (int i3 = i2 + 1; i3 < deg; ++i3) {
                    const auto& pts1 = off[static_cast<std::size_t>(i1)];
                    const auto& pts2 = off[static_cast<std::size_t>(i2)];
                    const auto& pts3 = off[static_cast<std::size_t>(i3)];
                    for (int p1 : pts1)
                        for (int q1 : pts1) {
                            if (p1 == q1) continue;
                            a[0] = p1;
                            bb[0] = q1;
                            for (int p2 : pts2)
                                for (int q2 : pts2) {
                                    if (p2 == q2) continue;
                                    a[1] = p2;
                                    bb[1] = q2;
                                    for (int p3 : pts3)
                                        for (int q3 : pts3) {
                                            if (p3 == q3) continue;
                                            a[2] = p3;
                                            bb[2] = q3;
                                            // nondegenerate triangles
                                            if (plane.incident(a[2], plane.join(a[0], a[1]))) continue;
                                            if (plane.incident(bb[2], plane.join(bb[0], bb[1]))) continue;
                                            int axis[3];
                                            bool ok = true;
                                            int idx = 0;
                                            for (int i = 0; i < 2 && ok; ++i)
                                                for (int j = i + 1; j < 3 && ok; ++j) {
                                                    int la = plane.join(a[i], a[j]);
                                                    int lb = plane.join(bb[i], bb[j]);
                                                    if (la == lb) {
                                                        ok = false;
                                                        break;
                                                    }
                                                    axis[idx++] = plane.meet(la, lb);
                                                }
                                            if (!ok) continue;
                                            if (axis[0] == axis[1] || axis[0] == axis[2] ||
                                                axis[1] == axis[2])
                                                continue;
                                            // the ten configuration points must be distinct
                                            for (int t = 0; t < 3 && ok; ++t) {
                                                int pt = axis[t];
                                                if (pt == c) ok = false;
                                                for (int s = 0; s < 3 && ok; ++s)
                                                    if (pt == a[s] || pt == bb[s]) ok = false;
                                            }
                                            if (!ok) continue;
                                            if (plane.join(axis[0], axis[1]) != plane.join(axis[0], axis[2]))
                                                continue;
                                            // Exactness: the ten configuration
                                            // lines must each meet the ten
                                            // points in exactly three, or the
                                            // subsystem is not a copy of D.
                                            int cfg_pts[10] = {c,       a[0],   a[1],  a[2],
                                                               bb[0],   bb[1],  bb[2], axis[0],
                                                               axis[1], axis[2]};
                                            int cfg_lines[10];
                                            int nl = 0;
                                            cfg_lines[nl++] = through[static_cast<std::size_t>(i1)];
                                            cfg_lines[nl++] = through[static_cast<std::size_t>(i2)];
                                            cfg_lines[nl++] = through[static_cast<std::size_t>(i3)];
                                            for (int i = 0; i < 2; ++i)
                                                for (int j = i + 1; j < 3; ++j) {
                                                    cfg_lines[nl++] = plane.join(a[i], a[j]);
                                                    cfg_lines[nl++] = plane.join(bb[i], bb[j]);
                                                }
                                            cfg_lines[nl++] = plane.join(axis[0], axis[1]);
                                            bool exact = true;
                                            for (int li = 0; li < 10 && exact; ++li) {
                                                for (int lj = li + 1; lj < 10 && exact; ++lj)
                                                    if (cfg_lines[li] == cfg_lines[lj]) exact = false;
                                                int on = 0;
                                                for (int pt : cfg_pts)
                                                    if (plane.incident(pt, cfg_lines[li])) ++on;
                                                if (on != 3) exact = false;
                                            }
                                            if (!exact) continue;
                                            ++closing;
                                        }
                                }
                        }
                }
        closing_per_center[static_cast<std::size_t>(c)] = closing;
    });

    std::uint64_t total = 0;
    for (std::uint64_t c : closing_per_center) total += c;
    return BigUint(total);
}

DesarguesCount desargues_count(const Plane& plane, int threads) {
    DesarguesCount out;
    out.order = plane.order();
    out.witnesses_closing = count_desargues_closing(plane, threads);

    // Calibrate on PG(2,5): the smaller field planes contain no subsystem
    // copy of D at all (every candidate picks up a fourth point on one of
    // its lines), so their closing counts are zero and useless here.
    Plane pg5 = build_pg2(5);
    BigUint closing5 = plane.order() == 5 && fingerprint(plane.system()) == fingerprint(pg5.system())
                           ? out.witnesses_closing
                           : count_desargues_closing(pg5, threads);
    BigUint copies5 = count_copies(build_desargues_config(), pg5.system());
    BigUint q, r;
    BigUint::divmod(closing5, copies5, q, r);
    if (!r.is_zero())
        fail(Error::Kind::assertion, "desargues calibration: witness count not divisible by copies");
    out.witnesses_per_copy = q;

    BigUint::divmod(out.witnesses_closing, out.witnesses_per_copy, q, r);
    out.divisible = r.is_zero();
    if (out.divisible) out.copies = q;
    return out;
}

}  // namespace pc
