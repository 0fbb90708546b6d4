// planecode CLI: builds incidence systems, runs code/census computations, and
// drives the verification suites through the shared-library C API.

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <sys/stat.h>
#include <thread>
#include <vector>

#include "planecode/planecode.h"

namespace {

// Exit codes: 0 success, 1 assertion/verification failure, 2 guard refusal,
// 3 malformed input.
int exit_code_for(pc_status status) {
    switch (status) {
        case PC_OK: return 0;
        case PC_ERR_ASSERT: return 1;
        case PC_ERR_GUARD: return 2;
        default: return 3;
    }
}

[[noreturn]] void die(pc_status status) {
    std::fprintf(stderr, "error: %s\n", pc_last_error());
    std::exit(exit_code_for(status));
}

struct SystemHandle {
    pc_system* ptr = nullptr;
    ~SystemHandle() { pc_system_free(ptr); }
};
struct PlaneHandle {
    pc_plane* ptr = nullptr;
    ~PlaneHandle() { pc_plane_free(ptr); }
};
struct CodeHandle {
    pc_code* ptr = nullptr;
    ~CodeHandle() { pc_code_free(ptr); }
};
struct CensusHandle {
    pc_census* ptr = nullptr;
    ~CensusHandle() { pc_census_free(ptr); }
};

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { pc_string_free(ptr); }
    explicit operator bool() const { return ptr != nullptr; }
};

void load_system(const std::string& path, SystemHandle& sys) {
    if (auto rc = pc_system_read(path.c_str(), &sys.ptr)) die(rc);
}

void load_plane(const std::string& path, PlaneHandle& plane) {
    SystemHandle sys;
    load_system(path, sys);
    if (auto rc = pc_plane_build(sys.ptr, &plane.ptr)) die(rc);
}

bool file_exists(const std::string& path) {
    struct stat st{};
    return ::stat(path.c_str(), &st) == 0;
}

std::string cache_path(const std::string& dir, const std::string& fingerprint, int p,
                       const std::string& tag) {
    return dir + "/" + fingerprint + "_p" + std::to_string(p) + "_" + tag + ".cwe";
}

int run_pattern_build(const std::string& name, int size, int p, int k, pc_system** out) {
    if (name == "single-line") return pc_system_pattern("single-line", size, 0, out);
    if (name == "triangle") return pc_system_pattern("triangle", 0, 0, out);
    if (name == "two-full-lines") return pc_system_pattern("two-full-lines", p, 0, out);
    if (name == "k-lines-generic") return pc_system_pattern("k-lines-generic", k, p, out);
    std::fprintf(stderr, "error: unknown pattern '%s'\n", name.c_str());
    std::exit(3);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite projective planes, their p-ary codes and exact weight enumerators"};
    app.require_subcommand(1);

    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    std::uint64_t seed = 0;
    std::string cache_dir;
    bool enable_desargues = false;
    app.add_option("--threads", threads, "worker thread count (results are independent of it)");
    app.add_option("--seed", seed, "seed for randomized internals (default 0)");
    app.add_option("--cache", cache_dir, "directory for cached census files");
    app.add_flag("--enable-desargues", enable_desargues, "allow the Desargues counting commands");

    // ---- build ----
    auto* build = app.add_subcommand("build", "construct an incidence system and write .inc");
    std::string out_path;
    int q = 5, stage = 1, pattern_p = 5, pattern_k = 3, pattern_size = 3;
    long long budget_points = 100000;
    std::string pattern_name = "triangle";

    auto* build_pg2 = build->add_subcommand("pg2", "field plane PG(2,q)");
    build_pg2->add_option("--q", q, "plane order (2,3,4,5,7,8,9,11)")->required();
    build_pg2->add_option("--out", out_path, "output .inc path")->required();

    auto* build_hall = build->add_subcommand("hall9", "near-field translation plane of order 9");
    build_hall->add_option("--out", out_path, "output .inc path")->required();

    auto* build_free = build->add_subcommand("freeplane", "free completion stage of the 4-cycle");
    build_free->add_option("--n", stage, "stage index (>= 1)")->required();
    build_free->add_option("--budget", budget_points, "point budget (default 100000)");
    build_free->add_option("--out", out_path, "output .inc path")->required();

    auto* build_pappus = build->add_subcommand("pappus", "the 9-point Pappus configuration");
    build_pappus->add_option("--out", out_path, "output .inc path")->required();

    auto* build_desargues = build->add_subcommand("desargues", "the 10-point Desargues configuration");
    build_desargues->add_option("--out", out_path, "output .inc path")->required();

    auto* build_pattern = build->add_subcommand("pattern", "small test patterns");
    build_pattern->add_option("--name", pattern_name,
                              "single-line | triangle | two-full-lines | k-lines-generic");
    build_pattern->add_option("--size", pattern_size, "line size for single-line");
    build_pattern->add_option("--p", pattern_p, "p for two-full-lines / k-lines-generic");
    build_pattern->add_option("--k", pattern_k, "k for k-lines-generic");
    build_pattern->add_option("--out", out_path, "output .inc path")->required();

    // ---- code ----
    auto* code_cmd = app.add_subcommand("code", "linear-code computations over a system");
    std::string in_path, kind = "hamming", type_csv, strategy = "auto", census_budget;
    int p = 5, wmax = 12, shard_index = 0, shard_count = 1;
    bool on_dual = false, allow_full = false, allow_heuristic = false;
    std::vector<std::string> merge_inputs;

    auto* code_stats = code_cmd->add_subcommand("stats", "dimensions of code, dual and hull");
    code_stats->add_option("input", in_path, ".inc file")->required();
    code_stats->add_option("--p", p, "prime")->required();

    auto* code_dual = code_cmd->add_subcommand("dual", "dual code generator matrix as CSV");
    code_dual->add_option("input", in_path, ".inc file")->required();
    code_dual->add_option("--p", p, "prime")->required();
    code_dual->add_option("--out", out_path, "output .csv path")->required();

    auto* code_hull = code_cmd->add_subcommand("hull", "hull generator matrix as CSV");
    code_hull->add_option("input", in_path, ".inc file")->required();
    code_hull->add_option("--p", p, "prime")->required();
    code_hull->add_option("--out", out_path, "output .csv path")->required();

    auto* code_census = code_cmd->add_subcommand("census", "full weight/type census (.cwe)");
    code_census->add_option("input", in_path, ".inc file")->required();
    code_census->add_option("--p", p, "prime")->required();
    code_census->add_option("--kind", kind, "hamming | complete");
    code_census->add_option("--shard-index", shard_index, "shard to compute");
    code_census->add_option("--shard-count", shard_count, "total shards");
    code_census->add_option("--budget", census_budget, "per-shard word budget (decimal)");
    code_census->add_flag("--allow-full", allow_full,
                          "lift the default 10^9 budget to the full message space");
    code_census->add_option("--out", out_path, "output .cwe path")->required();

    auto* code_merge = code_cmd->add_subcommand("merge", "merge census shards");
    code_merge->add_option("--out", out_path, "output .cwe path")->required();
    code_merge->add_option("inputs", merge_inputs, "shard .cwe files")->required();

    auto* code_low = code_cmd->add_subcommand("lowweight", "bounded-weight census");
    code_low->add_option("input", in_path, ".inc file")->required();
    code_low->add_option("--p", p, "prime")->required();
    code_low->add_option("--wmax", wmax, "maximum weight")->required();
    code_low->add_flag("--dual", on_dual, "census the dual code");
    code_low->add_flag("--allow-heuristic", allow_heuristic,
                       "accept an unproven census instead of refusing");
    code_low->add_option("--out", out_path, "optional output .cwe path");

    auto* code_type = code_cmd->add_subcommand("typecount", "a_j for one weight type");
    code_type->add_option("input", in_path, ".inc file")->required();
    code_type->add_option("--p", p, "prime")->required();
    code_type->add_option("--type", type_csv, "comma-separated j_0,...,j_{p-1}")->required();
    code_type->add_option("--strategy", strategy, "auto | full | bounded");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run a verification suite (exit 0 iff it passes)");
    std::string plane_path, pattern_file;
    int lemma_k = 1, kmax = 12;

    auto* v39 = verify->add_subcommand("lemma39", "powers-of-two reconstruction");
    v39->add_option("--plane", plane_path, "plane .inc file")->required();
    v39->add_option("--k", lemma_k, "number of lines (2^k <= p)")->required();

    auto* v42 = verify->add_subcommand("theorem42", "inclusion-number pipeline vs direct search");
    v42->add_option("--plane", plane_path, "plane .inc file")->required();
    v42->add_option("--pattern", pattern_name,
                    "single-line | triangle | two-full-lines | k-lines-generic");
    v42->add_option("--pattern-file", pattern_file, "pattern from a .inc file instead");
    v42->add_option("--size", pattern_size, "line size for single-line");
    v42->add_option("--p", pattern_p, "p for two-full-lines / k-lines-generic");
    v42->add_option("--k", pattern_k, "k for k-lines-generic");

    auto* vpap = verify->add_subcommand("pappus", "Pappus count against the exact bound");
    vpap->add_option("--plane", plane_path, "plane .inc file")->required();

    auto* vdes = verify->add_subcommand("desargues", "Desargues witness count (needs --enable-desargues)");
    vdes->add_option("--plane", plane_path, "plane .inc file")->required();

    auto* v32 = verify->add_subcommand("lemma32", "rank duality over random systems");
    (void)v32;
    auto* v38 = verify->add_subcommand("lemma38", "binary digit lemma brute force");
    v38->add_option("--kmax", kmax, "largest k (default 12)");

    auto* vmin = verify->add_subcommand("minweights", "first minimum weights of the plane code");
    vmin->add_option("--plane", plane_path, "plane .inc file")->required();

    CLI11_PARSE(app, argc, argv);

    // ---- build dispatch ----
    if (build->parsed()) {
        SystemHandle sys;
        pc_status rc = PC_OK;
        if (build_pg2->parsed()) rc = pc_system_pg2(q, &sys.ptr);
        else if (build_hall->parsed()) rc = pc_system_hall9(&sys.ptr);
        else if (build_free->parsed()) rc = pc_system_free_plane_stage(stage, budget_points, &sys.ptr);
        else if (build_pappus->parsed()) rc = pc_system_pappus(&sys.ptr);
        else if (build_desargues->parsed()) rc = pc_system_desargues(&sys.ptr);
        else if (build_pattern->parsed())
            rc = static_cast<pc_status>(
                run_pattern_build(pattern_name, pattern_size, pattern_p, pattern_k, &sys.ptr));
        else {
            std::fprintf(stderr, "error: build needs a kind subcommand\n");
            return 3;
        }
        if (rc) die(rc);
        if (auto wrc = pc_system_write(sys.ptr, out_path.c_str())) die(wrc);
        std::printf("{\"written\": \"%s\", \"points\": %d, \"lines\": %d}\n", out_path.c_str(),
                    pc_system_points(sys.ptr), pc_system_lines(sys.ptr));
        return 0;
    }

    // ---- code dispatch ----
    if (code_cmd->parsed()) {
        if (code_merge->parsed()) {
            std::vector<CensusHandle> handles(merge_inputs.size());
            std::vector<const pc_census*> raw;
            for (std::size_t i = 0; i < merge_inputs.size(); ++i) {
                if (auto rc = pc_census_read(merge_inputs[i].c_str(), &handles[i].ptr)) die(rc);
                raw.push_back(handles[i].ptr);
            }
            CensusHandle merged;
            if (auto rc = pc_census_merge(raw.data(), static_cast<int>(raw.size()), &merged.ptr))
                die(rc);
            if (auto rc = pc_census_write(merged.ptr, out_path.c_str())) die(rc);
            std::printf("{\"written\": \"%s\", \"shards\": %zu}\n", out_path.c_str(), raw.size());
            return 0;
        }

        SystemHandle sys;
        load_system(in_path, sys);

        if (code_stats->parsed()) {
            OwnedString stats{pc_code_stats_json(sys.ptr, p)};
            if (!stats) die(PC_ERR_INVALID);
            std::printf("%s\n", stats.ptr);
            return 0;
        }

        CodeHandle code;
        if (auto rc = pc_code_build(sys.ptr, p, &code.ptr)) die(rc);

        if (code_dual->parsed() || code_hull->parsed()) {
            CodeHandle derived;
            pc_status rc = code_dual->parsed() ? pc_code_dual(code.ptr, &derived.ptr)
                                               : pc_code_hull(code.ptr, &derived.ptr);
            if (rc) die(rc);
            OwnedString csv{pc_code_generator_csv(derived.ptr)};
            if (!csv) die(PC_ERR_INVALID);
            FILE* f = std::fopen(out_path.c_str(), "wb");
            if (!f) {
                std::fprintf(stderr, "error: cannot open %s\n", out_path.c_str());
                return 3;
            }
            std::fputs(csv.ptr, f);
            std::fclose(f);
            std::printf("{\"written\": \"%s\", \"dim\": %d}\n", out_path.c_str(),
                        pc_code_dim(derived.ptr));
            return 0;
        }

        if (code_census->parsed()) {
            int kind_id = kind == "complete" ? 1 : 0;
            // Message spaces beyond one shard-budget of words are refused
            // outright unless --allow-full is given; with the flag, the
            // per-shard budget still applies, so big runs require sharding.
            double space = 1;
            for (int i = 0; i < pc_code_dim(code.ptr); ++i) space *= p;
            if (!allow_full && space > 1e9) {
                std::fprintf(stderr,
                             "error: p^dim ~ %.3g exceeds the default census scale; rerun with "
                             "--allow-full and --shard-count (each shard is capped at 10^9 words)\n",
                             space);
                return 2;
            }
            OwnedString fp{pc_code_fingerprint(code.ptr)};
            std::string cached = cache_dir.empty() || shard_count != 1
                                     ? std::string()
                                     : cache_path(cache_dir, fp.ptr, p, kind + "_full");
            CensusHandle census;
            if (!cached.empty() && file_exists(cached)) {
                if (auto rc = pc_census_read(cached.c_str(), &census.ptr)) die(rc);
            } else {
                const char* budget_arg = census_budget.empty() ? nullptr : census_budget.c_str();
                if (auto rc = pc_census_full(code.ptr, kind_id, shard_index, shard_count,
                                             budget_arg, threads, &census.ptr))
                    die(rc);
                if (!cached.empty()) pc_census_write(census.ptr, cached.c_str());
            }
            if (auto rc = pc_census_write(census.ptr, out_path.c_str())) die(rc);
            std::printf("{\"written\": \"%s\"}\n", out_path.c_str());
            return 0;
        }

        if (code_low->parsed()) {
            CodeHandle dual;
            const pc_code* target = code.ptr;
            if (on_dual) {
                if (auto rc = pc_code_dual(code.ptr, &dual.ptr)) die(rc);
                target = dual.ptr;
            }
            CensusHandle census;
            if (auto rc = pc_census_bounded(target, 0, wmax, seed, threads,
                                            allow_heuristic ? 1 : 0, &census.ptr))
                die(rc);
            if (!out_path.empty()) {
                if (auto rc = pc_census_write(census.ptr, out_path.c_str())) die(rc);
            }
            OwnedString text{pc_census_text(census.ptr)};
            std::printf("{\"proven\": %s, \"dual\": %s, \"wmax\": %d}\n",
                        pc_census_is_proven(census.ptr) ? "true" : "false",
                        on_dual ? "true" : "false", wmax);
            std::fputs(text.ptr, stdout);
            return 0;
        }

        if (code_type->parsed()) {
            OwnedString count{pc_type_count(code.ptr, type_csv.c_str(), strategy.c_str(), seed,
                                            threads)};
            if (!count) die(PC_ERR_GUARD);
            std::printf("{\"type\": \"%s\", \"a_j\": \"%s\"}\n", type_csv.c_str(), count.ptr);
            return 0;
        }
        std::fprintf(stderr, "error: code needs an action subcommand\n");
        return 3;
    }

    // ---- verify dispatch ----
    if (verify->parsed()) {
        OwnedString report;
        int pass = 0;
        if (v32->parsed()) {
            report.ptr = pc_verify_lemma32(seed, &pass);
        } else if (v38->parsed()) {
            report.ptr = pc_verify_lemma38(kmax, &pass);
        } else if (v39->parsed()) {
            PlaneHandle plane;
            load_plane(plane_path, plane);
            report.ptr = pc_verify_lemma39(plane.ptr, lemma_k, seed, threads, &pass);
        } else if (v42->parsed()) {
            PlaneHandle plane;
            load_plane(plane_path, plane);
            SystemHandle pattern;
            if (!pattern_file.empty())
                load_system(pattern_file, pattern);
            else if (auto rc = static_cast<pc_status>(run_pattern_build(
                         pattern_name, pattern_size, pattern_p, pattern_k, &pattern.ptr)))
                die(rc);
            report.ptr = pc_verify_theorem42(plane.ptr, pattern.ptr, seed, threads, &pass);
        } else if (vpap->parsed()) {
            PlaneHandle plane;
            load_plane(plane_path, plane);
            report.ptr = pc_verify_pappus(plane.ptr, threads, &pass);
        } else if (vdes->parsed()) {
            if (!enable_desargues) {
                std::fprintf(stderr, "error: Desargues counting requires --enable-desargues\n");
                return 2;
            }
            PlaneHandle plane;
            load_plane(plane_path, plane);
            report.ptr = pc_verify_desargues(plane.ptr, threads, &pass);
        } else if (vmin->parsed()) {
            PlaneHandle plane;
            load_plane(plane_path, plane);
            report.ptr = pc_verify_minweights(plane.ptr, seed, threads, &pass);
        } else {
            std::fprintf(stderr, "error: verify needs a suite subcommand\n");
            return 3;
        }
        if (!report) {
            std::fprintf(stderr, "error: %s\n", pc_last_error());
            return 2;
        }
        std::printf("%s\n", report.ptr);
        return pass ? 0 : 1;
    }

    return 3;
}
