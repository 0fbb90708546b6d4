#include "planecode/planecode.h"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <string>

#include "builders.hpp"
#include "census.hpp"
#include "fp_linear.hpp"
#include "inc_io.hpp"
#include "incidence.hpp"
#include "iso.hpp"
#include "verify.hpp"

using json = nlohmann::ordered_json;

struct pc_system {
    pc::IncidenceSystem sys;
};
struct pc_plane {
    pc::Plane plane;
    pc_system system_view;
};
struct pc_code {
    pc::LinearCode code;
};
struct pc_census {
    pc::CensusTable table;
};

namespace {

thread_local std::string g_last_error;

pc_status status_of(const pc::Error& e) {
    g_last_error = e.what();
    switch (e.kind()) {
        case pc::Error::Kind::invalid_argument: return PC_ERR_INVALID;
        case pc::Error::Kind::guard: return PC_ERR_GUARD;
        case pc::Error::Kind::parse: return PC_ERR_PARSE;
        case pc::Error::Kind::assertion: return PC_ERR_ASSERT;
        case pc::Error::Kind::io: return PC_ERR_IO;
    }
    return PC_ERR_INVALID;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
pc_status guarded(Fn&& fn) {
    try {
        fn();
        return PC_OK;
    } catch (const pc::Error& e) {
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PC_ERR_INVALID;
    }
}

template <typename Fn>
char* guarded_string(Fn&& fn) {
    try {
        return dup_string(fn());
    } catch (const pc::Error& e) {
        status_of(e);
        return nullptr;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

pc_status require(bool cond, const char* msg) {
    if (cond) return PC_OK;
    g_last_error = msg;
    return PC_ERR_INVALID;
}

}  // namespace

extern "C" {

const char* pc_last_error(void) { return g_last_error.c_str(); }

void pc_string_free(char* s) { std::free(s); }

pc_status pc_system_pg2(int q, pc_system** out) {
    if (auto rc = require(out != nullptr, "null output handle")) return rc;
    return guarded([&] { *out = new pc_system{pc::build_pg2(q).system()}; });
}

pc_status pc_system_hall9(pc_system** out) {
    if (auto rc = require(out != nullptr, "null output handle")) return rc;
    return guarded([&] { *out = new pc_system{pc::build_hall9().system()}; });
}

pc_status pc_system_free_plane_stage(int n, long long point_budget, pc_system** out) {
    if (auto rc = require(out != nullptr, "null output handle")) return rc;
    return guarded([&] {
        *out = new pc_system{
            pc::free_plane_stage(n, point_budget > 0 ? point_budget : 100000)};
    });
}

pc_status pc_system_pappus(pc_system** out) {
    if (auto rc = require(out != nullptr, "null output handle")) return rc;
    return guarded([&] { *out = new pc_system{pc::build_pappus_config()}; });
}

pc_status pc_system_desargues(pc_system** out) {
    if (auto rc = require(out != nullptr, "null output handle")) return rc;
    return guarded([&] { *out = new pc_system{pc::build_desargues_config()}; });
}

pc_status pc_system_pattern(const char* name, int a, int b, pc_system** out) {
    if (auto rc = require(out != nullptr && name != nullptr, "null argument")) return rc;
    return guarded([&] {
        std::string kind(name);
        pc::IncidenceSystem sys;
        if (kind == "single-line")
            sys = pc::pattern_single_line(a);
        else if (kind == "triangle")
            sys = pc::pattern_triangle();
        else if (kind == "two-full-lines")
            sys = pc::pattern_two_full_lines(a);
        else if (kind == "k-lines-generic")
            sys = pc::pattern_k_lines_generic(a, b);
        else
            pc::fail(pc::Error::Kind::invalid_argument, "unknown pattern name: " + kind);
        *out = new pc_system{std::move(sys)};
    });
}

pc_status pc_system_read(const char* path, pc_system** out) {
    if (auto rc = require(out != nullptr && path != nullptr, "null argument")) return rc;
    return guarded([&] { *out = new pc_system{pc::read_inc_file(path)}; });
}

pc_status pc_system_write(const pc_system* sys, const char* path) {
    if (auto rc = require(sys != nullptr && path != nullptr, "null argument")) return rc;
    return guarded([&] { pc::write_inc_file(sys->sys, path); });
}

int pc_system_points(const pc_system* sys) { return sys ? sys->sys.num_points() : -1; }
int pc_system_lines(const pc_system* sys) { return sys ? sys->sys.num_lines() : -1; }

pc_status pc_system_dual(const pc_system* sys, pc_system** out) {
    if (auto rc = require(sys != nullptr && out != nullptr, "null argument")) return rc;
    return guarded([&] { *out = new pc_system{pc::dual(sys->sys)}; });
}

char* pc_system_classify_json(const pc_system* sys) {
    if (!sys) {
        g_last_error = "null system";
        return nullptr;
    }
    return guarded_string([&] {
        pc::ValidationReport rep = pc::classify(sys->sys);
        json doc;
        switch (rep.verdict) {
            case pc::Verdict::invalid: doc["verdict"] = "invalid"; break;
            case pc::Verdict::partial_linear_space: doc["verdict"] = "partial_linear_space"; break;
            case pc::Verdict::linear_space: doc["verdict"] = "linear_space"; break;
            case pc::Verdict::projective_plane: doc["verdict"] = "projective_plane"; break;
        }
        if (rep.verdict == pc::Verdict::projective_plane) doc["order"] = rep.order;
        if (!rep.reason.empty()) doc["reason"] = rep.reason;
        if (rep.witness_a >= 0) doc["witness_a"] = rep.witness_a;
        if (rep.witness_b >= 0) doc["witness_b"] = rep.witness_b;
        doc["points"] = sys->sys.num_points();
        doc["lines"] = sys->sys.num_lines();
        return doc.dump(2);
    });
}

int pc_system_is_p_admissible(const pc_system* sys, int p) {
    if (!sys) {
        g_last_error = "null system";
        return -1;
    }
    try {
        return pc::is_p_admissible(sys->sys, p) ? 1 : 0;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return -1;
    }
}

char* pc_system_fingerprint(const pc_system* sys) {
    if (!sys) {
        g_last_error = "null system";
        return nullptr;
    }
    return guarded_string([&] { return pc::fingerprint(sys->sys); });
}

void pc_system_free(pc_system* sys) { delete sys; }

pc_status pc_systems_isomorphic(const pc_system* a, const pc_system* b, int* out) {
    if (auto rc = require(a != nullptr && b != nullptr && out != nullptr, "null argument"))
        return rc;
    return guarded([&] { *out = pc::are_isomorphic(a->sys, b->sys) ? 1 : 0; });
}

char* pc_system_canonical_hash(const pc_system* sys) {
    if (!sys) {
        g_last_error = "null system";
        return nullptr;
    }
    return guarded_string([&] { return pc::canonical_form(sys->sys).hex_hash(); });
}

char* pc_system_automorphism_count(const pc_system* sys) {
    if (!sys) {
        g_last_error = "null system";
        return nullptr;
    }
    return guarded_string([&] { return pc::automorphism_count(sys->sys).to_string(); });
}

char* pc_count_copies(const pc_system* sub, const pc_system* host) {
    if (!sub || !host) {
        g_last_error = "null system";
        return nullptr;
    }
    return guarded_string([&] { return pc::count_copies(sub->sys, host->sys).to_string(); });
}

pc_status pc_plane_build(const pc_system* sys, pc_plane** out) {
    if (auto rc = require(sys != nullptr && out != nullptr, "null argument")) return rc;
    return guarded([&] {
        auto* handle = new pc_plane{pc::Plane::build(sys->sys), {}};
        handle->system_view.sys = handle->plane.system();
        *out = handle;
    });
}

int pc_plane_order(const pc_plane* plane) { return plane ? plane->plane.order() : -1; }

const pc_system* pc_plane_system(const pc_plane* plane) {
    return plane ? &plane->system_view : nullptr;
}

void pc_plane_free(pc_plane* plane) { delete plane; }

pc_status pc_code_build(const pc_system* sys, int p, pc_code** out) {
    if (auto rc = require(sys != nullptr && out != nullptr, "null argument")) return rc;
    return guarded([&] { *out = new pc_code{pc::code_from_system(sys->sys, p)}; });
}

int pc_code_dim(const pc_code* code) { return code ? code->code.dim() : -1; }
int pc_code_length(const pc_code* code) { return code ? code->code.length() : -1; }
int pc_code_p(const pc_code* code) { return code ? code->code.p() : -1; }

pc_status pc_code_dual(const pc_code* code, pc_code** out) {
    if (auto rc = require(code != nullptr && out != nullptr, "null argument")) return rc;
    return guarded([&] { *out = new pc_code{pc::dual_code(code->code)}; });
}

pc_status pc_code_hull(const pc_code* code, pc_code** out) {
    if (auto rc = require(code != nullptr && out != nullptr, "null argument")) return rc;
    return guarded([&] { *out = new pc_code{pc::hull(code->code)}; });
}

char* pc_code_fingerprint(const pc_code* code) {
    if (!code) {
        g_last_error = "null code";
        return nullptr;
    }
    return guarded_string([&] { return code->code.fingerprint(); });
}

char* pc_code_generator_csv(const pc_code* code) {
    if (!code) {
        g_last_error = "null code";
        return nullptr;
    }
    return guarded_string([&] { return pc::generator_csv(code->code); });
}

char* pc_code_stats_json(const pc_system* sys, int p) {
    if (!sys) {
        g_last_error = "null system";
        return nullptr;
    }
    return guarded_string([&] {
        pc::LinearCode code = pc::code_from_system(sys->sys, p);
        pc::LinearCode dual = pc::dual_code(code);
        pc::LinearCode h = pc::hull(code);
        json doc;
        doc["p"] = p;
        doc["length"] = code.length();
        doc["dim"] = code.dim();
        doc["dual_dim"] = dual.dim();
        doc["hull_dim"] = h.dim();
        doc["hull_equals_dual"] = (h == dual);
        doc["fingerprint"] = code.fingerprint();
        return doc.dump(2);
    });
}

void pc_code_free(pc_code* code) { delete code; }

pc_status pc_census_full(const pc_code* code, int kind, int shard_index, int shard_count,
                         const char* budget_decimal, int threads, pc_census** out) {
    if (auto rc = require(code != nullptr && out != nullptr, "null argument")) return rc;
    if (auto rc = require(kind == 0 || kind == 1, "kind must be 0 (hamming) or 1 (complete)"))
        return rc;
    return guarded([&] {
        pc::BigUint budget = budget_decimal ? pc::BigUint::from_string(budget_decimal)
                                            : pc::BigUint(1000000000ull);
        *out = new pc_census{pc::full_census(
            code->code, kind == 0 ? pc::CensusKind::hamming : pc::CensusKind::complete,
            pc::ShardSpec{shard_index, shard_count}, budget, threads < 1 ? 1 : threads)};
    });
}

pc_status pc_census_bounded(const pc_code* code, int kind, int wmax, uint64_t seed, int threads,
                            int allow_heuristic, pc_census** out) {
    if (auto rc = require(code != nullptr && out != nullptr, "null argument")) return rc;
    if (auto rc = require(kind == 0 || kind == 1, "kind must be 0 (hamming) or 1 (complete)"))
        return rc;
    return guarded([&] {
        pc::BoundedCensus census = pc::bounded_weight_census(
            code->code, wmax, /*want_words=*/false, seed, threads < 1 ? 1 : threads,
            allow_heuristic != 0);
        *out = new pc_census{kind == 0 ? std::move(census.hamming) : std::move(census.complete)};
    });
}

int pc_census_is_proven(const pc_census* census) {
    if (!census) return 0;
    return census->table.is_full_kind() ? (census->table.full_cover() ? 1 : 0)
                                        : (census->table.proven ? 1 : 0);
}

pc_status pc_census_merge(const pc_census* const* tables, int count, pc_census** out) {
    if (auto rc = require(tables != nullptr && out != nullptr && count > 0, "null argument"))
        return rc;
    return guarded([&] {
        std::vector<pc::CensusTable> inputs;
        inputs.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) {
            if (!tables[i]) pc::fail(pc::Error::Kind::invalid_argument, "null census in merge");
            inputs.push_back(tables[i]->table);
        }
        *out = new pc_census{pc::merge_censuses(inputs)};
    });
}

pc_status pc_census_write(const pc_census* census, const char* path) {
    if (auto rc = require(census != nullptr && path != nullptr, "null argument")) return rc;
    return guarded([&] { pc::write_cwe_file(census->table, path); });
}

pc_status pc_census_read(const char* path, pc_census** out) {
    if (auto rc = require(path != nullptr && out != nullptr, "null argument")) return rc;
    return guarded([&] { *out = new pc_census{pc::read_cwe_file(path)}; });
}

char* pc_census_lookup(const pc_census* census, const char* key) {
    if (!census || !key) {
        g_last_error = "null argument";
        return nullptr;
    }
    return guarded_string([&] {
        std::vector<int> parsed;
        std::string token;
        for (const char* c = key;; ++c) {
            if (*c == ',' || *c == '\0') {
                if (token.empty()) pc::fail(pc::Error::Kind::parse, "bad census key");
                parsed.push_back(std::stoi(token));
                token.clear();
                if (*c == '\0') break;
            } else {
                token.push_back(*c);
            }
        }
        const pc::BigUint* hit = census->table.lookup(parsed);
        return hit ? hit->to_string() : std::string("0");
    });
}

char* pc_census_text(const pc_census* census) {
    if (!census) {
        g_last_error = "null census";
        return nullptr;
    }
    return guarded_string([&] { return pc::to_cwe_text(census->table); });
}

void pc_census_free(pc_census* census) { delete census; }

char* pc_type_count(const pc_code* code, const char* type_csv, const char* strategy,
                    uint64_t seed, int threads) {
    if (!code || !type_csv) {
        g_last_error = "null argument";
        return nullptr;
    }
    return guarded_string([&] {
        pc::WeightType type = pc::WeightType::parse(type_csv, code->code.p());
        pc::TypeCountStrategy strat = pc::TypeCountStrategy::automatic;
        if (strategy) {
            std::string s(strategy);
            if (s == "full")
                strat = pc::TypeCountStrategy::full;
            else if (s == "bounded")
                strat = pc::TypeCountStrategy::bounded_weight;
            else if (s != "auto")
                pc::fail(pc::Error::Kind::invalid_argument, "unknown strategy: " + s);
        }
        return pc::type_census(code->code, type, strat, seed, threads < 1 ? 1 : threads)
            .to_string();
    });
}

namespace {

char* emit_suite(const pc::SuiteResult& result, int* pass) {
    if (pass) *pass = result.pass ? 1 : 0;
    return dup_string(result.json);
}

}  // namespace

char* pc_verify_lemma32(uint64_t seed, int* pass) {
    try {
        return emit_suite(pc::verify_lemma32(seed), pass);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

char* pc_verify_lemma38(int kmax, int* pass) {
    try {
        return emit_suite(pc::verify_lemma38(kmax), pass);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

char* pc_verify_minweights(const pc_plane* plane, uint64_t seed, int threads, int* pass) {
    if (!plane) {
        g_last_error = "null plane";
        return nullptr;
    }
    try {
        return emit_suite(pc::verify_minweights(plane->plane, seed, threads < 1 ? 1 : threads),
                          pass);
    } catch (const pc::Error& e) {
        status_of(e);
        return nullptr;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

char* pc_verify_lemma39(const pc_plane* plane, int k, uint64_t seed, int threads, int* pass) {
    if (!plane) {
        g_last_error = "null plane";
        return nullptr;
    }
    try {
        return emit_suite(pc::verify_lemma39(plane->plane, k, seed, threads < 1 ? 1 : threads),
                          pass);
    } catch (const pc::Error& e) {
        status_of(e);
        return nullptr;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

char* pc_verify_theorem42(const pc_plane* plane, const pc_system* pattern, uint64_t seed,
                          int threads, int* pass) {
    if (!plane || !pattern) {
        g_last_error = "null argument";
        return nullptr;
    }
    try {
        return emit_suite(
            pc::verify_theorem42(plane->plane, pattern->sys, seed, threads < 1 ? 1 : threads),
            pass);
    } catch (const pc::Error& e) {
        status_of(e);
        return nullptr;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

char* pc_verify_pappus(const pc_plane* plane, int threads, int* pass) {
    if (!plane) {
        g_last_error = "null plane";
        return nullptr;
    }
    try {
        return emit_suite(pc::verify_pappus(plane->plane, threads < 1 ? 1 : threads), pass);
    } catch (const pc::Error& e) {
        status_of(e);
        return nullptr;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

char* pc_verify_desargues(const pc_plane* plane, int threads, int* pass) {
    if (!plane) {
        g_last_error = "null plane";
        return nullptr;
    }
    try {
        return emit_suite(pc::verify_desargues(plane->plane, threads < 1 ? 1 : threads), pass);
    } catch (const pc::Error& e) {
        status_of(e);
        return nullptr;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

}  // extern "C"
