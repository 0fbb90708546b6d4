#include "iso.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "inc_io.hpp"

namespace pc {

namespace {

constexpr int kNoJump = std::numeric_limits<int>::max();

struct View {
    int v = 0, b = 0;
    std::vector<std::vector<int>> lines;
    std::vector<std::vector<int>> through;
    std::vector<char> collinear_;  // v*v, only built on demand

    explicit View(const IncidenceSystem& sys)
        : v(sys.num_points()), b(sys.num_lines()), lines(sys.lines()),
          through(sys.lines_through_points()) {}

    void build_collinear() {
        collinear_.assign(static_cast<std::size_t>(v) * v, 0);
        for (const auto& ln : lines)
            for (std::size_t i = 0; i < ln.size(); ++i)
                for (std::size_t j = i + 1; j < ln.size(); ++j) {
                    collinear_[static_cast<std::size_t>(ln[i]) * v + ln[j]] = 1;
                    collinear_[static_cast<std::size_t>(ln[j]) * v + ln[i]] = 1;
                }
    }
    bool collinear(int x, int y) const { return collinear_[static_cast<std::size_t>(x) * v + y]; }

    int degree(int x) const { return static_cast<int>(through[static_cast<std::size_t>(x)].size()); }

    // Lines are stored sorted (canonical system order), so membership of a
    // mapped line is a binary search.
    bool is_line(const std::vector<int>& sorted_pts) const {
        return std::binary_search(lines.begin(), lines.end(), sorted_pts);
    }
};

// ---- colour refinement -----------------------------------------------------
//
// Point and line colours are refined alternately: a line's new colour is
// (old colour, sorted point colours on it), a point's is (old colour, sorted
// line colours through it). New ids are ranks of the sorted distinct
// signatures, so the partition is invariant under relabeling. Individualized
// points carry reserved negative colours that sort first.

struct Partition {
    std::vector<int> pcolor, lcolor;
};

int relabel_by_signature(std::vector<std::vector<int>>& sigs, std::vector<int>& colors) {
    std::vector<int> order(sigs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return sigs[static_cast<std::size_t>(a)] < sigs[static_cast<std::size_t>(b)]; });
    int next = -1;
    const std::vector<int>* prev = nullptr;
    for (int idx : order) {
        const auto& s = sigs[static_cast<std::size_t>(idx)];
        if (!prev || s != *prev) {
            ++next;
            prev = &s;
        }
        colors[static_cast<std::size_t>(idx)] = next;
    }
    return next + 1;
}

void refine(const View& g, Partition& part) {
    int pdistinct = -1, ldistinct = -1;
    for (;;) {
        std::vector<std::vector<int>> lsig(static_cast<std::size_t>(g.b));
        for (int li = 0; li < g.b; ++li) {
            auto& s = lsig[static_cast<std::size_t>(li)];
            s.push_back(part.lcolor[static_cast<std::size_t>(li)]);
            for (int x : g.lines[static_cast<std::size_t>(li)])
                s.push_back(part.pcolor[static_cast<std::size_t>(x)]);
            std::sort(s.begin() + 1, s.end());
        }
        int lnow = relabel_by_signature(lsig, part.lcolor);

        std::vector<std::vector<int>> psig(static_cast<std::size_t>(g.v));
        for (int x = 0; x < g.v; ++x) {
            auto& s = psig[static_cast<std::size_t>(x)];
            s.push_back(part.pcolor[static_cast<std::size_t>(x)]);
            for (int li : g.through[static_cast<std::size_t>(x)])
                s.push_back(part.lcolor[static_cast<std::size_t>(li)]);
            std::sort(s.begin() + 1, s.end());
        }
        int pnow = relabel_by_signature(psig, part.pcolor);

        if (pnow == pdistinct && lnow == ldistinct) break;
        pdistinct = pnow;
        ldistinct = lnow;
    }
}

// ---- canonical labeling search ----------------------------------------------

struct Leaf {
    std::vector<int> string;    // encoded relabeled incidence matrix
    std::vector<int> labeling;  // point -> canonical position
    std::vector<int> path;
};

struct CanonSearch {
    const View& g;
    std::vector<int> path;
    std::vector<std::vector<int>> processed;          // per depth
    std::vector<std::vector<int>> gens, gens_inv;     // discovered automorphisms
    Leaf best;
    bool have_best = false;

    explicit CanonSearch(const View& view) : g(view) {}

    // A stable cell whose points all have degree 0, or degree 1 on one common
    // line, is free: permuting it never changes the relabeled string, so it is
    // never split by individualization.
    bool cell_is_free(const std::vector<int>& pts) const {
        int common_line = -2;
        for (int x : pts) {
            int deg = g.degree(x);
            if (deg > 1) return false;
            int line = deg == 0 ? -1 : g.through[static_cast<std::size_t>(x)][0];
            if (common_line == -2)
                common_line = line;
            else if (common_line != line)
                return false;
        }
        return true;
    }

    // Target cell: smallest colour among the largest non-singleton non-free
    // cells. Returns colour or -1 when effectively discrete.
    int pick_target_cell(const Partition& part, std::vector<int>& members) const {
        std::map<int, std::vector<int>> cells;
        for (int x = 0; x < g.v; ++x)
            cells[part.pcolor[static_cast<std::size_t>(x)]].push_back(x);
        int best_color = -1;
        std::size_t best_size = 1;
        for (const auto& [color, pts] : cells) {
            if (pts.size() > best_size && !cell_is_free(pts)) {
                best_size = pts.size();
                best_color = color;
            }
        }
        if (best_color < 0) return -1;
        members = cells[best_color];
        return best_color;
    }

    Leaf make_leaf(const Partition& part) const {
        Leaf lf;
        lf.path = path;
        std::vector<int> order(static_cast<std::size_t>(g.v));
        std::iota(order.begin(), order.end(), 0);
        // Within a colour class only degree-0 points can coexist; their
        // relative order cannot affect the string.
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            int ca = part.pcolor[static_cast<std::size_t>(a)], cb = part.pcolor[static_cast<std::size_t>(b)];
            return ca != cb ? ca < cb : a < b;
        });
        lf.labeling.assign(static_cast<std::size_t>(g.v), -1);
        for (int pos = 0; pos < g.v; ++pos) lf.labeling[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos;

        std::vector<std::vector<int>> relabeled(static_cast<std::size_t>(g.b));
        for (int li = 0; li < g.b; ++li) {
            auto& r = relabeled[static_cast<std::size_t>(li)];
            for (int x : g.lines[static_cast<std::size_t>(li)]) r.push_back(lf.labeling[static_cast<std::size_t>(x)]);
            std::sort(r.begin(), r.end());
        }
        std::sort(relabeled.begin(), relabeled.end());
        lf.string.push_back(g.v);
        lf.string.push_back(g.b);
        for (const auto& r : relabeled) {
            lf.string.push_back(static_cast<int>(r.size()));
            lf.string.insert(lf.string.end(), r.begin(), r.end());
        }
        return lf;
    }

    // Two equal leaf strings yield the automorphism mapping a's point at each
    // canonical position to b's point there. Returns its generator index.
    std::size_t record_generator(const Leaf& a, const Leaf& b) {
        std::vector<int> pos_to_point_b(static_cast<std::size_t>(g.v));
        for (int x = 0; x < g.v; ++x) pos_to_point_b[static_cast<std::size_t>(b.labeling[static_cast<std::size_t>(x)])] = x;
        std::vector<int> perm(static_cast<std::size_t>(g.v));
        for (int x = 0; x < g.v; ++x)
            perm[static_cast<std::size_t>(x)] = pos_to_point_b[static_cast<std::size_t>(a.labeling[static_cast<std::size_t>(x)])];
        // Equal strings must come from a genuine automorphism; verify.
        for (const auto& ln : g.lines) {
            std::vector<int> mapped;
            mapped.reserve(ln.size());
            for (int x : ln) mapped.push_back(perm[static_cast<std::size_t>(x)]);
            std::sort(mapped.begin(), mapped.end());
            if (!g.is_line(mapped))
                fail(Error::Kind::assertion, "canonical search produced a non-automorphism");
        }
        std::vector<int> inv(static_cast<std::size_t>(g.v));
        for (int x = 0; x < g.v; ++x) inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(x)])] = x;
        gens.push_back(std::move(perm));
        gens_inv.push_back(std::move(inv));
        return gens.size() - 1;
    }

    bool gen_fixes_prefix(const std::vector<int>& perm, int depth) const {
        for (int i = 0; i < depth; ++i)
            if (perm[static_cast<std::size_t>(path[static_cast<std::size_t>(i)])] != path[static_cast<std::size_t>(i)])
                return false;
        return true;
    }

    bool in_orbit_of_processed(int candidate, int depth) const {
        const auto& done = processed[static_cast<std::size_t>(depth)];
        if (done.empty()) return false;
        std::vector<char> seen(static_cast<std::size_t>(g.v), 0);
        std::vector<int> queue;
        for (int x : done) {
            seen[static_cast<std::size_t>(x)] = 1;
            queue.push_back(x);
        }
        std::vector<const std::vector<int>*> applicable;
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            if (gen_fixes_prefix(gens[gi], depth)) {
                applicable.push_back(&gens[gi]);
                applicable.push_back(&gens_inv[gi]);
            }
        }
        if (applicable.empty()) return false;
        while (!queue.empty()) {
            int x = queue.back();
            queue.pop_back();
            for (const auto* perm : applicable) {
                int y = (*perm)[static_cast<std::size_t>(x)];
                if (!seen[static_cast<std::size_t>(y)]) {
                    if (y == candidate) return true;
                    seen[static_cast<std::size_t>(y)] = 1;
                    queue.push_back(y);
                }
            }
        }
        return false;
    }

    // Returns a backjump depth, or kNoJump.
    int run(Partition part, int depth) {
        refine(g, part);
        std::vector<int> members;
        int color = pick_target_cell(part, members);
        if (color < 0) {
            Leaf lf = make_leaf(part);
            if (!have_best || lf.string < best.string) {
                best = std::move(lf);
                have_best = true;
                return kNoJump;
            }
            if (lf.string == best.string) {
                std::size_t gi = record_generator(best, lf);
                // The deepest prefix the automorphism fixes pointwise is where
                // it can witness the current branch duplicating a processed
                // sibling; unwind there if it does.
                const auto& perm = gens[gi];
                const auto& inv = gens_inv[gi];
                int d = 0;
                while (d < static_cast<int>(path.size()) &&
                       perm[static_cast<std::size_t>(path[static_cast<std::size_t>(d)])] ==
                           path[static_cast<std::size_t>(d)])
                    ++d;
                if (d < static_cast<int>(path.size())) {
                    int moved = path[static_cast<std::size_t>(d)];
                    const auto& done = processed[static_cast<std::size_t>(d)];
                    int fwd = perm[static_cast<std::size_t>(moved)];
                    int bwd = inv[static_cast<std::size_t>(moved)];
                    if (std::find(done.begin(), done.end(), fwd) != done.end() ||
                        std::find(done.begin(), done.end(), bwd) != done.end())
                        return d;
                }
                return kNoJump;
            }
            return kNoJump;
        }

        processed.emplace_back();
        for (int cand : members) {
            if (in_orbit_of_processed(cand, depth)) continue;
            Partition child = part;
            child.pcolor[static_cast<std::size_t>(cand)] = -(depth + 1);
            path.push_back(cand);
            int jump = run(std::move(child), depth + 1);
            path.pop_back();
            processed[static_cast<std::size_t>(depth)].push_back(cand);
            if (jump < depth) {
                processed.pop_back();
                return jump;
            }
        }
        processed.pop_back();
        return kNoJump;
    }
};

std::vector<std::uint8_t> encode_u16(const std::vector<int>& values) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(values.size() * 2);
    for (int value : values) {
        bytes.push_back(static_cast<std::uint8_t>(value & 0xff));
        bytes.push_back(static_cast<std::uint8_t>((value >> 8) & 0xff));
    }
    return bytes;
}

// ---- extension-existence search (automorphism orbits) -----------------------

struct ExtendSearch {
    const View& g;
    std::vector<int> base_color;  // stable refinement colours, no individualization
    std::vector<int> f;           // partial point map
    std::vector<char> used;
    std::vector<char> assigned;
    int num_assigned = 0;

    explicit ExtendSearch(const View& view, const std::vector<int>& colors)
        : g(view), base_color(colors), f(static_cast<std::size_t>(view.v), -1),
          used(static_cast<std::size_t>(view.v), 0), assigned(static_cast<std::size_t>(view.v), 0) {}

    bool consistent(int x, int y) const {
        if (base_color[static_cast<std::size_t>(x)] != base_color[static_cast<std::size_t>(y)]) return false;
        if (g.degree(x) != g.degree(y)) return false;
        // Collinearity must be preserved in both directions, and co-line
        // partners must land on a common line of the right size.
        for (int z = 0; z < g.v; ++z) {
            if (!assigned[static_cast<std::size_t>(z)] || z == x) continue;
            bool ca = g.collinear(x, z);
            bool cb = g.collinear(y, f[static_cast<std::size_t>(z)]);
            if (ca != cb) return false;
        }
        for (int li : g.through[static_cast<std::size_t>(x)]) {
            const auto& ln = g.lines[static_cast<std::size_t>(li)];
            int first = -1, second = -1;
            for (int z : ln) {
                if (z != x && assigned[static_cast<std::size_t>(z)]) {
                    if (first < 0) {
                        first = z;
                    } else {
                        second = z;
                        break;
                    }
                }
            }
            if (first < 0) continue;
            // Some line must contain y and the assigned images with matching size.
            bool ok = false;
            for (int lj : g.through[static_cast<std::size_t>(y)]) {
                const auto& lm = g.lines[static_cast<std::size_t>(lj)];
                if (lm.size() != ln.size()) continue;
                bool has_first = std::binary_search(lm.begin(), lm.end(), f[static_cast<std::size_t>(first)]);
                bool has_second = second < 0 ||
                                  std::binary_search(lm.begin(), lm.end(), f[static_cast<std::size_t>(second)]);
                if (has_first && has_second) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return false;
        }
        return true;
    }

    void set(int x, int y) {
        f[static_cast<std::size_t>(x)] = y;
        used[static_cast<std::size_t>(y)] = 1;
        assigned[static_cast<std::size_t>(x)] = 1;
        ++num_assigned;
    }
    void unset(int x) {
        used[static_cast<std::size_t>(f[static_cast<std::size_t>(x)])] = 0;
        f[static_cast<std::size_t>(x)] = -1;
        assigned[static_cast<std::size_t>(x)] = 0;
        --num_assigned;
    }

    bool complete_is_automorphism() const {
        for (const auto& ln : g.lines) {
            std::vector<int> mapped;
            mapped.reserve(ln.size());
            for (int x : ln) mapped.push_back(f[static_cast<std::size_t>(x)]);
            std::sort(mapped.begin(), mapped.end());
            if (!g.is_line(mapped)) return false;
        }
        return true;
    }

    int pick_next() const {
        int best = -1, best_score = -1;
        for (int x = 0; x < g.v; ++x) {
            if (assigned[static_cast<std::size_t>(x)]) continue;
            int score = 0;
            for (int z = 0; z < g.v; ++z)
                if (assigned[static_cast<std::size_t>(z)] && g.collinear(x, z)) ++score;
            score = score * (g.v + 1) + g.degree(x);
            if (score > best_score) {
                best_score = score;
                best = x;
            }
        }
        return best;
    }

    bool solve() {
        if (num_assigned == g.v) return complete_is_automorphism();
        int x = pick_next();
        for (int y = 0; y < g.v; ++y) {
            if (used[static_cast<std::size_t>(y)]) continue;
            if (!consistent(x, y)) continue;
            set(x, y);
            if (solve()) return true;
            unset(x);
        }
        return false;
    }
};

BigUint automorphism_count_core(const IncidenceSystem& core) {
    View g(core);
    if (g.v == 0) return BigUint(1);
    g.build_collinear();
    Partition base;
    base.pcolor.assign(static_cast<std::size_t>(g.v), 0);
    base.lcolor.assign(static_cast<std::size_t>(g.b), 0);
    refine(g, base);

    BigUint total(1);
    for (int i = 0; i < g.v; ++i) {
        // Stable partition with 0..i-1 individualized; if discrete, the
        // pointwise stabilizer is trivial and every later orbit is 1.
        Partition part = base;
        for (int j = 0; j < i; ++j) part.pcolor[static_cast<std::size_t>(j)] = -(j + 1);
        refine(g, part);
        bool discrete = true;
        {
            std::vector<int> count(static_cast<std::size_t>(g.v), 0);
            for (int x = 0; x < g.v; ++x)
                if (++count[static_cast<std::size_t>(part.pcolor[static_cast<std::size_t>(x)])] > 1) {
                    discrete = false;
                    break;
                }
        }
        if (discrete) break;

        int orbit = 1;
        for (int w = 0; w < g.v; ++w) {
            if (w == i) continue;
            if (part.pcolor[static_cast<std::size_t>(w)] != part.pcolor[static_cast<std::size_t>(i)]) continue;
            ExtendSearch es(g, base.pcolor);
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) {
                ok = es.consistent(j, j);
                if (ok) es.set(j, j);
            }
            if (ok) ok = es.consistent(i, w);
            if (ok) {
                es.set(i, w);
                ok = es.solve();
            }
            if (ok) ++orbit;
        }
        total *= BigUint(orbit);
    }
    return total;
}

// ---- monomorphism counting ---------------------------------------------------

struct MonoSearch {
    const View& sub;
    const View& host;
    std::uint64_t budget;
    std::uint64_t nodes = 0;

    std::vector<int> sub_degree;          // cached degrees of sub points
    int isolated = 0;                     // degree-0 points of sub
    std::vector<int> singles_per_line;    // degree-1 points per sub line
    std::vector<int> multi_per_line;      // degree>=2 points per sub line
    bool trivial_factor = true;           // no singles and no isolated anywhere

    std::vector<int> line_img;            // sub line -> host line or -1
    std::vector<int> img_line_of;         // host line -> sub line or -1
    std::vector<int> f;                   // sub point -> host point (multi points only)
    std::vector<int> assigned_to;         // host point -> sub point or -1
    std::vector<int> cover_count;         // chosen images through each host point
    int covered_points = 0;
    int lines_placed = 0;

    BigUint total;
    std::uint64_t pending_ones = 0;

    MonoSearch(const View& s, const View& h, std::uint64_t node_budget)
        : sub(s), host(h), budget(node_budget) {
        sub_degree.resize(static_cast<std::size_t>(sub.v));
        for (int x = 0; x < sub.v; ++x) {
            sub_degree[static_cast<std::size_t>(x)] = sub.degree(x);
            if (sub_degree[static_cast<std::size_t>(x)] == 0) ++isolated;
        }
        singles_per_line.assign(static_cast<std::size_t>(sub.b), 0);
        multi_per_line.assign(static_cast<std::size_t>(sub.b), 0);
        for (int li = 0; li < sub.b; ++li)
            for (int x : sub.lines[static_cast<std::size_t>(li)]) {
                if (sub_degree[static_cast<std::size_t>(x)] == 1)
                    ++singles_per_line[static_cast<std::size_t>(li)];
                else
                    ++multi_per_line[static_cast<std::size_t>(li)];
            }
        trivial_factor = isolated == 0 &&
                         std::all_of(singles_per_line.begin(), singles_per_line.end(),
                                     [](int s) { return s == 0; });
        line_img.assign(static_cast<std::size_t>(sub.b), -1);
        img_line_of.assign(static_cast<std::size_t>(host.b), -1);
        f.assign(static_cast<std::size_t>(sub.v), -1);
        assigned_to.assign(static_cast<std::size_t>(host.v), -1);
        cover_count.assign(static_cast<std::size_t>(host.v), 0);
    }

    void tick() {
        if (++nodes > budget)
            fail(Error::Kind::guard, "count_monomorphisms: node budget exceeded");
    }

    int pick_next_line() const {
        int best = -1, best_assigned = -1, best_size = -1;
        for (int li = 0; li < sub.b; ++li) {
            if (line_img[static_cast<std::size_t>(li)] >= 0) continue;
            int assigned_count = 0;
            for (int x : sub.lines[static_cast<std::size_t>(li)])
                if (f[static_cast<std::size_t>(x)] >= 0) ++assigned_count;
            int size = static_cast<int>(sub.lines[static_cast<std::size_t>(li)].size());
            if (assigned_count > best_assigned ||
                (assigned_count == best_assigned && size > best_size)) {
                best = li;
                best_assigned = assigned_count;
                best_size = size;
            }
        }
        return best;
    }

    bool host_line_admissible(int li, int hl) const {
        const auto& yline = sub.lines[static_cast<std::size_t>(li)];
        const auto& xline = host.lines[static_cast<std::size_t>(hl)];
        if (img_line_of[static_cast<std::size_t>(hl)] >= 0) return false;
        if (xline.size() < yline.size()) return false;
        // All assigned points of the sub line must land on it.
        for (int z : yline) {
            int img = f[static_cast<std::size_t>(z)];
            if (img >= 0 && !std::binary_search(xline.begin(), xline.end(), img)) return false;
        }
        // No assigned image from outside the sub line may sit on it.
        for (int x : xline) {
            int z = assigned_to[static_cast<std::size_t>(x)];
            if (z >= 0 && !std::binary_search(yline.begin(), yline.end(), z)) return false;
        }
        return true;
    }

    void choose_line(int li, int hl) {
        line_img[static_cast<std::size_t>(li)] = hl;
        img_line_of[static_cast<std::size_t>(hl)] = li;
        ++lines_placed;
        for (int x : host.lines[static_cast<std::size_t>(hl)])
            if (cover_count[static_cast<std::size_t>(x)]++ == 0) ++covered_points;
    }
    void unchoose_line(int li, int hl) {
        line_img[static_cast<std::size_t>(li)] = -1;
        img_line_of[static_cast<std::size_t>(hl)] = -1;
        --lines_placed;
        for (int x : host.lines[static_cast<std::size_t>(hl)])
            if (--cover_count[static_cast<std::size_t>(x)] == 0) --covered_points;
    }

    bool point_admissible(int z, int x) const {
        if (assigned_to[static_cast<std::size_t>(x)] >= 0) return false;
        // x must lie on the images of all chosen lines through z, and on no
        // chosen image of a line avoiding z.
        for (int li : sub.through[static_cast<std::size_t>(z)]) {
            int hl = line_img[static_cast<std::size_t>(li)];
            if (hl >= 0 &&
                !std::binary_search(host.lines[static_cast<std::size_t>(hl)].begin(),
                                    host.lines[static_cast<std::size_t>(hl)].end(), x))
                return false;
        }
        for (int hl : host.through[static_cast<std::size_t>(x)]) {
            int li = img_line_of[static_cast<std::size_t>(hl)];
            if (li >= 0 &&
                !std::binary_search(sub.lines[static_cast<std::size_t>(li)].begin(),
                                    sub.lines[static_cast<std::size_t>(li)].end(), z))
                return false;
        }
        return true;
    }

    void leaf() {
        if (trivial_factor) {
            ++pending_ones;
            if (pending_ones == (1ull << 62)) {
                total += BigUint(pending_ones);
                pending_ones = 0;
            }
            return;
        }
        BigUint factor(1);
        for (int li = 0; li < sub.b; ++li) {
            int s = singles_per_line[static_cast<std::size_t>(li)];
            if (s == 0) continue;
            int hl = line_img[static_cast<std::size_t>(li)];
            int pool = 0;
            for (int x : host.lines[static_cast<std::size_t>(hl)])
                if (assigned_to[static_cast<std::size_t>(x)] < 0 &&
                    cover_count[static_cast<std::size_t>(x)] == 1)
                    ++pool;
            if (pool < s) return;  // factor is zero
            factor *= BigUint::falling_factorial(static_cast<std::uint64_t>(pool),
                                                 static_cast<std::uint64_t>(s));
        }
        if (isolated > 0) {
            int free_points = host.v - covered_points;
            if (free_points < isolated) return;
            factor *= BigUint::falling_factorial(static_cast<std::uint64_t>(free_points),
                                                 static_cast<std::uint64_t>(isolated));
        }
        total += factor;
    }

    // Assign all still-unassigned multi points of sub line li into its image,
    // then continue with the next line.
    void assign_multis(int li, std::size_t next_idx) {
        const auto& yline = sub.lines[static_cast<std::size_t>(li)];
        int z = -1;
        for (std::size_t i = next_idx; i < yline.size(); ++i) {
            int cand = yline[i];
            if (sub_degree[static_cast<std::size_t>(cand)] >= 2 && f[static_cast<std::size_t>(cand)] < 0) {
                z = cand;
                next_idx = i;
                break;
            }
        }
        if (z < 0) {
            solve();
            return;
        }
        int hl = line_img[static_cast<std::size_t>(li)];
        for (int x : host.lines[static_cast<std::size_t>(hl)]) {
            tick();
            if (!point_admissible(z, x)) continue;
            f[static_cast<std::size_t>(z)] = x;
            assigned_to[static_cast<std::size_t>(x)] = z;
            assign_multis(li, next_idx + 1);
            f[static_cast<std::size_t>(z)] = -1;
            assigned_to[static_cast<std::size_t>(x)] = -1;
        }
    }

    void solve() {
        int li = pick_next_line();
        if (li < 0) {
            leaf();
            return;
        }
        // Candidate host lines: through an assigned image when available,
        // otherwise all of them.
        const auto& yline = sub.lines[static_cast<std::size_t>(li)];
        int anchor = -1;
        for (int z : yline)
            if (f[static_cast<std::size_t>(z)] >= 0) {
                anchor = f[static_cast<std::size_t>(z)];
                break;
            }
        const std::vector<int>* cands;
        std::vector<int> all;
        if (anchor >= 0) {
            cands = &host.through[static_cast<std::size_t>(anchor)];
        } else {
            all.resize(static_cast<std::size_t>(host.b));
            std::iota(all.begin(), all.end(), 0);
            cands = &all;
        }
        for (int hl : *cands) {
            tick();
            if (!host_line_admissible(li, hl)) continue;
            choose_line(li, hl);
            assign_multis(li, 0);
            unchoose_line(li, hl);
        }
    }

    BigUint run() {
        solve();
        if (pending_ones) total += BigUint(pending_ones);
        return total;
    }
};

}  // namespace

std::string CanonicalForm::hex_hash() const {
    std::uint64_t h = fnv1a64(bytes.data(), bytes.size());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

CanonicalForm canonical_form(const IncidenceSystem& sys) {
    if (sys.num_points() > kCanonicalPointGuard)
        fail(Error::Kind::guard, "canonical_form: more than 200 points");

    View g(sys);
    CanonSearch search(g);
    Partition part;
    part.pcolor.assign(static_cast<std::size_t>(g.v), 0);
    part.lcolor.assign(static_cast<std::size_t>(g.b), 0);
    search.run(std::move(part), 0);
    if (!search.have_best) fail(Error::Kind::assertion, "canonical search produced no leaf");

    CanonicalForm cf;
    cf.point_order.resize(static_cast<std::size_t>(g.v));
    for (int x = 0; x < g.v; ++x)
        cf.point_order[static_cast<std::size_t>(search.best.labeling[static_cast<std::size_t>(x)])] = x;
    // Canonical line order: sort original lines by their relabeled contents.
    std::vector<std::pair<std::vector<int>, int>> relabeled;
    relabeled.reserve(static_cast<std::size_t>(g.b));
    for (int li = 0; li < g.b; ++li) {
        std::vector<int> r;
        r.reserve(g.lines[static_cast<std::size_t>(li)].size());
        for (int x : g.lines[static_cast<std::size_t>(li)])
            r.push_back(search.best.labeling[static_cast<std::size_t>(x)]);
        std::sort(r.begin(), r.end());
        relabeled.emplace_back(std::move(r), li);
    }
    std::sort(relabeled.begin(), relabeled.end());
    for (const auto& [contents, li] : relabeled) cf.line_order.push_back(li);
    cf.bytes = encode_u16(search.best.string);
    return cf;
}

bool are_isomorphic(const IncidenceSystem& a, const IncidenceSystem& b) {
    if (a.num_points() != b.num_points() || a.num_lines() != b.num_lines()) return false;
    std::vector<std::size_t> sa, sb;
    for (const auto& ln : a.lines()) sa.push_back(ln.size());
    for (const auto& ln : b.lines()) sb.push_back(ln.size());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    return canonical_form(a).bytes == canonical_form(b).bytes;
}

BigUint automorphism_count(const IncidenceSystem& sys) {
    if (sys.num_points() > kCanonicalPointGuard)
        fail(Error::Kind::guard, "automorphism_count: more than 200 points");
    int isolated = 0;
    IncidenceSystem core = covered_core(sys, &isolated);
    BigUint total = BigUint::factorial(static_cast<std::uint64_t>(isolated));
    total *= automorphism_count_core(core);
    return total;
}

BigUint count_monomorphisms(const IncidenceSystem& sub, const IncidenceSystem& host,
                            std::uint64_t node_budget) {
    if (!validate_partial_linear(sub).at_least(Verdict::partial_linear_space))
        fail(Error::Kind::invalid_argument, "count_monomorphisms: sub is not a partial linear space");
    if (!validate_partial_linear(host).at_least(Verdict::partial_linear_space))
        fail(Error::Kind::invalid_argument, "count_monomorphisms: host is not a partial linear space");
    if (sub.num_points() > host.num_points()) return BigUint(0);
    if (sub.num_lines() > host.num_lines()) return BigUint(0);
    View s(sub), h(host);
    MonoSearch ms(s, h, node_budget);
    return ms.run();
}

BigUint count_copies(const IncidenceSystem& sub, const IncidenceSystem& host,
                     std::uint64_t node_budget) {
    BigUint monos = count_monomorphisms(sub, host, node_budget);
    BigUint aut = automorphism_count(sub);
    BigUint q, r;
    BigUint::divmod(monos, aut, q, r);
    if (!r.is_zero())
        fail(Error::Kind::assertion, "count_copies: monomorphism count not divisible by #Aut");
    return q;
}

BigUint count_copies_direct(const IncidenceSystem& sub, const IncidenceSystem& host) {
    if (sub.num_points() > 12)
        fail(Error::Kind::guard, "count_copies_direct: sub larger than 12 points");
    View s(sub), h(host);
    s.build_collinear();
    h.build_collinear();

    std::vector<int> f(static_cast<std::size_t>(s.v), -1);
    std::vector<char> used(static_cast<std::size_t>(h.v), 0);
    std::set<std::vector<int>> images;

    auto record_if_valid = [&]() {
        // Each sub line must equal (host line) cap image, with distinct host lines.
        std::vector<char> in_image(static_cast<std::size_t>(h.v), 0);
        for (int x = 0; x < s.v; ++x) in_image[static_cast<std::size_t>(f[static_cast<std::size_t>(x)])] = 1;
        std::set<int> used_host_lines;
        std::vector<std::vector<int>> image_lines;
        for (const auto& ln : s.lines) {
            std::vector<int> img;
            img.reserve(ln.size());
            for (int x : ln) img.push_back(f[static_cast<std::size_t>(x)]);
            std::sort(img.begin(), img.end());
            // the unique host line through the first two image points
            int host_line = -1;
            for (int hl : h.through[static_cast<std::size_t>(img[0])]) {
                const auto& hline = h.lines[static_cast<std::size_t>(hl)];
                if (std::binary_search(hline.begin(), hline.end(), img[1])) {
                    host_line = hl;
                    break;
                }
            }
            if (host_line < 0) return;
            const auto& hline = h.lines[static_cast<std::size_t>(host_line)];
            for (int x : img)
                if (!std::binary_search(hline.begin(), hline.end(), x)) return;
            for (int x : hline)
                if (in_image[static_cast<std::size_t>(x)] &&
                    !std::binary_search(img.begin(), img.end(), x))
                    return;  // exactness fails
            if (!used_host_lines.insert(host_line).second) return;
            image_lines.push_back(std::move(img));
        }
        std::sort(image_lines.begin(), image_lines.end());
        std::vector<int> signature;
        for (int x = 0; x < s.v; ++x) signature.push_back(f[static_cast<std::size_t>(x)]);
        std::sort(signature.begin(), signature.end());
        signature.push_back(-1);
        for (const auto& img : image_lines) {
            signature.insert(signature.end(), img.begin(), img.end());
            signature.push_back(-1);
        }
        images.insert(std::move(signature));
    };

    // Literal point-by-point enumeration with collinearity pruning.
    auto rec = [&](auto&& self, int x) -> void {
        if (x == s.v) {
            record_if_valid();
            return;
        }
        for (int y = 0; y < h.v; ++y) {
            if (used[static_cast<std::size_t>(y)]) continue;
            bool ok = true;
            for (int z = 0; z < x && ok; ++z)
                if (s.collinear(z, x) && !h.collinear(f[static_cast<std::size_t>(z)], y)) ok = false;
            if (!ok) continue;
            f[static_cast<std::size_t>(x)] = y;
            used[static_cast<std::size_t>(y)] = 1;
            self(self, x + 1);
            used[static_cast<std::size_t>(y)] = 0;
            f[static_cast<std::size_t>(x)] = -1;
        }
    };
    rec(rec, 0);
    return BigUint(static_cast<std::uint64_t>(images.size()));
}

}  // namespace pc
