#include "fp_linear.hpp"

#include <algorithm>
#include <sstream>

#include "inc_io.hpp"

namespace pc {

bool is_prime_int(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int mod_inverse(int a, int p) {
    // Fermat; p prime and a != 0 mod p.
    a %= p;
    if (a == 0) fail(Error::Kind::invalid_argument, "mod_inverse of zero");
    int result = 1, base = a, exp = p - 2;
    while (exp) {
        if (exp & 1) result = result * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return result;
}

std::string WeightType::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i) out << ',';
        out << counts[i];
    }
    return out.str();
}

WeightType WeightType::parse(const std::string& csv, int p) {
    WeightType t;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) fail(Error::Kind::parse, "weight type: empty component");
        t.counts.push_back(std::stoi(tok));
    }
    if (static_cast<int>(t.counts.size()) != p)
        fail(Error::Kind::parse, "weight type must have exactly p components");
    for (int c : t.counts)
        if (c < 0) fail(Error::Kind::parse, "weight type components must be non-negative");
    return t;
}

WeightType type_of(const FpVector& w) {
    WeightType t;
    t.counts.assign(static_cast<std::size_t>(w.p), 0);
    for (std::uint8_t c : w.coords) ++t.counts[c];
    return t;
}

int weight_of(const FpVector& w) {
    int zeros = 0;
    for (std::uint8_t c : w.coords)
        if (c == 0) ++zeros;
    return w.length() - zeros;
}

namespace {

// In-place Gauss-Jordan to reduced row echelon form; pivot is the first row
// with a nonzero entry in the scan column. Returns the pivot columns.
std::vector<int> rref(std::vector<std::vector<std::uint8_t>>& rows, int p, int length) {
    std::vector<int> pivots;
    std::size_t rank = 0;
    for (int col = 0; col < length && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][static_cast<std::size_t>(col)] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        int inv = mod_inverse(rows[rank][static_cast<std::size_t>(col)], p);
        for (int c = col; c < length; ++c)
            rows[rank][static_cast<std::size_t>(c)] =
                static_cast<std::uint8_t>(rows[rank][static_cast<std::size_t>(c)] * inv % p);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) continue;
            int factor = rows[r][static_cast<std::size_t>(col)];
            if (factor == 0) continue;
            for (int c = col; c < length; ++c) {
                int val = rows[r][static_cast<std::size_t>(c)] -
                          factor * rows[rank][static_cast<std::size_t>(c)] % p;
                rows[r][static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(((val % p) + p) % p);
            }
        }
        pivots.push_back(col);
        ++rank;
    }
    rows.resize(rank);
    return pivots;
}

}  // namespace

LinearCode LinearCode::from_rows(int p, int length, std::vector<std::vector<std::uint8_t>> rows,
                                 std::string source_fingerprint) {
    if (!is_prime_int(p)) fail(Error::Kind::invalid_argument, "code characteristic must be prime");
    for (auto& r : rows) {
        if (static_cast<int>(r.size()) != length)
            fail(Error::Kind::invalid_argument, "generator row length mismatch");
        for (auto& c : r) c = static_cast<std::uint8_t>(c % p);
    }
    rref(rows, p, length);
    LinearCode code;
    code.p_ = p;
    code.length_ = length;
    code.rows_ = std::move(rows);
    code.source_fingerprint_ = std::move(source_fingerprint);
    return code;
}

std::string LinearCode::fingerprint() const {
    std::string blob = std::to_string(p_) + ":" + std::to_string(length_) + ":";
    for (const auto& r : rows_) blob.append(reinterpret_cast<const char*>(r.data()), r.size());
    std::uint64_t h = fnv1a64(blob.data(), blob.size());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

FpVector line_indicator(const IncidenceSystem& sys, int line, int p) {
    FpVector w(p, sys.num_points());
    for (int x : sys.line(line)) w.coords[static_cast<std::size_t>(x)] = 1;
    return w;
}

LinearCode code_from_system(const IncidenceSystem& sys, int p) {
    std::vector<std::vector<std::uint8_t>> rows;
    rows.reserve(static_cast<std::size_t>(sys.num_lines()));
    for (int li = 0; li < sys.num_lines(); ++li)
        rows.push_back(line_indicator(sys, li, p).coords);
    return LinearCode::from_rows(p, sys.num_points(), std::move(rows), fingerprint(sys));
}

LinearCode dual_code(const LinearCode& code) {
    const int p = code.p();
    const int v = code.length();
    const auto& rows = code.rows();
    // Pivot columns are the leading columns of the RREF rows; one kernel
    // vector per free column.
    std::vector<int> lead_of_row(rows.size(), -1);
    std::vector<char> is_pivot_col(static_cast<std::size_t>(v), 0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (int c = 0; c < v; ++c) {
            if (rows[r][static_cast<std::size_t>(c)] != 0) {
                lead_of_row[r] = c;
                is_pivot_col[static_cast<std::size_t>(c)] = 1;
                break;
            }
        }
    }
    std::vector<std::vector<std::uint8_t>> kernel;
    for (int free_col = 0; free_col < v; ++free_col) {
        if (is_pivot_col[static_cast<std::size_t>(free_col)]) continue;
        std::vector<std::uint8_t> w(static_cast<std::size_t>(v), 0);
        w[static_cast<std::size_t>(free_col)] = 1;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            int coeff = rows[r][static_cast<std::size_t>(free_col)];
            if (coeff != 0)
                w[static_cast<std::size_t>(lead_of_row[r])] = static_cast<std::uint8_t>((p - coeff) % p);
        }
        kernel.push_back(std::move(w));
    }
    return LinearCode::from_rows(p, v, std::move(kernel), code.source_fingerprint());
}

LinearCode hull(const LinearCode& code) {
    // C cap C-perp = (C-perp + C)-perp via row stacking.
    LinearCode dual = dual_code(code);
    std::vector<std::vector<std::uint8_t>> stacked = code.rows();
    for (const auto& r : dual.rows()) stacked.push_back(r);
    LinearCode sum = LinearCode::from_rows(code.p(), code.length(), std::move(stacked),
                                           code.source_fingerprint());
    return dual_code(sum);
}

bool contains(const LinearCode& code, const FpVector& w) {
    if (w.p != code.p() || w.length() != code.length())
        fail(Error::Kind::invalid_argument, "contains: vector/code shape mismatch");
    const int p = code.p();
    std::vector<std::uint8_t> rem = w.coords;
    for (const auto& row : code.rows()) {
        int lead = -1;
        for (int c = 0; c < code.length(); ++c)
            if (row[static_cast<std::size_t>(c)] != 0) {
                lead = c;
                break;
            }
        if (lead < 0) continue;
        int factor = rem[static_cast<std::size_t>(lead)];
        if (factor == 0) continue;
        for (int c = lead; c < code.length(); ++c) {
            int val = rem[static_cast<std::size_t>(c)] - factor * row[static_cast<std::size_t>(c)] % p;
            rem[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(((val % p) + p) % p);
        }
    }
    return std::all_of(rem.begin(), rem.end(), [](std::uint8_t c) { return c == 0; });
}

bool plane_membership(const Plane& plane, int p, const FpVector& w) {
    if (!is_prime_int(p) || plane.order() != p)
        fail(Error::Kind::invalid_argument, "plane_membership needs a plane of prime order p");
    if (w.length() != plane.num_points() || w.p != p)
        fail(Error::Kind::invalid_argument, "plane_membership: vector shape mismatch");
    int all = 0;
    for (std::uint8_t c : w.coords) all = (all + c) % p;
    for (int li = 0; li < plane.num_lines(); ++li) {
        int s = 0;
        for (int x : plane.line(li)) s = (s + w.coords[static_cast<std::size_t>(x)]) % p;
        if (s != all) return false;
    }
    return true;
}

std::string generator_csv(const LinearCode& code) {
    std::ostringstream out;
    out << "# planecode generator p=" << code.p() << " v=" << code.length()
        << " k=" << code.dim() << " fingerprint=" << code.fingerprint();
    if (!code.source_fingerprint().empty()) out << " source=" << code.source_fingerprint();
    out << "\n";
    for (const auto& row : code.rows()) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << static_cast<int>(row[c]);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace pc
