/* planecode: finite projective planes, their p-ary codes, exact weight
 * enumerators, and the configuration-counting machinery built on them.
 *
 * C API over the C++ core: opaque handles, integer status codes, and
 * library-allocated strings (release with pc_string_free). All handles are
 * immutable once created and may be shared across threads.
 */
#ifndef PLANECODE_H
#define PLANECODE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pc_system pc_system;  /* incidence system */
typedef struct pc_plane pc_plane;    /* validated projective plane */
typedef struct pc_code pc_code;      /* p-ary linear code */
typedef struct pc_census pc_census;  /* weight/type census table */

typedef enum pc_status {
    PC_OK = 0,
    PC_ERR_INVALID = 1,   /* precondition broken / bad argument */
    PC_ERR_GUARD = 2,     /* size or budget guard refused the computation */
    PC_ERR_PARSE = 3,     /* malformed input file */
    PC_ERR_ASSERT = 4,    /* internal exact identity failed */
    PC_ERR_IO = 5
} pc_status;

/* Message for the most recent failure on this thread. */
const char* pc_last_error(void);
void pc_string_free(char* s);

/* ---- builders ---- */
pc_status pc_system_pg2(int q, pc_system** out);
pc_status pc_system_hall9(pc_system** out);
pc_status pc_system_free_plane_stage(int n, long long point_budget, pc_system** out);
pc_status pc_system_pappus(pc_system** out);
pc_status pc_system_desargues(pc_system** out);
/* name: "single-line" (a = size), "triangle", "two-full-lines" (a = p),
 * "k-lines-generic" (a = k, b = p). */
pc_status pc_system_pattern(const char* name, int a, int b, pc_system** out);

/* ---- incidence systems ---- */
pc_status pc_system_read(const char* path, pc_system** out);
pc_status pc_system_write(const pc_system* sys, const char* path);
int pc_system_points(const pc_system* sys);
int pc_system_lines(const pc_system* sys);
pc_status pc_system_dual(const pc_system* sys, pc_system** out);
/* JSON: {"verdict": "...", "order": n, "reason": "...", ...} */
char* pc_system_classify_json(const pc_system* sys);
int pc_system_is_p_admissible(const pc_system* sys, int p); /* 1/0, -1 on error */
char* pc_system_fingerprint(const pc_system* sys);
void pc_system_free(pc_system* sys);

/* ---- isomorphism search ---- */
pc_status pc_systems_isomorphic(const pc_system* a, const pc_system* b, int* out);
char* pc_system_canonical_hash(const pc_system* sys);
char* pc_system_automorphism_count(const pc_system* sys);     /* decimal string */
char* pc_count_copies(const pc_system* sub, const pc_system* host); /* i(sub, host) */

/* ---- planes ---- */
pc_status pc_plane_build(const pc_system* sys, pc_plane** out);
int pc_plane_order(const pc_plane* plane);
const pc_system* pc_plane_system(const pc_plane* plane); /* borrowed, do not free */
void pc_plane_free(pc_plane* plane);

/* ---- codes ---- */
pc_status pc_code_build(const pc_system* sys, int p, pc_code** out);
int pc_code_dim(const pc_code* code);
int pc_code_length(const pc_code* code);
int pc_code_p(const pc_code* code);
pc_status pc_code_dual(const pc_code* code, pc_code** out);
pc_status pc_code_hull(const pc_code* code, pc_code** out);
char* pc_code_fingerprint(const pc_code* code);
char* pc_code_generator_csv(const pc_code* code);
/* JSON {dim, dual_dim, hull_dim, hull_equals_dual} */
char* pc_code_stats_json(const pc_system* sys, int p);
void pc_code_free(pc_code* code);

/* ---- censuses ---- */
/* kind: 0 = hamming, 1 = complete. */
pc_status pc_census_full(const pc_code* code, int kind, int shard_index, int shard_count,
                         const char* budget_decimal /* NULL = 10^9 */, int threads,
                         pc_census** out);
/* Bounded-weight census to wmax; fails unless completeness is proven, or
 * allow_heuristic is nonzero. */
pc_status pc_census_bounded(const pc_code* code, int kind, int wmax, uint64_t seed, int threads,
                            int allow_heuristic, pc_census** out);
int pc_census_is_proven(const pc_census* census); /* 1 proven / full, 0 heuristic */
pc_status pc_census_merge(const pc_census* const* tables, int count, pc_census** out);
pc_status pc_census_write(const pc_census* census, const char* path);
pc_status pc_census_read(const char* path, pc_census** out);
/* key: "w" for hamming tables, "j0,j1,...,j_{p-1}" for complete tables;
 * returns the decimal count ("0" when absent). */
char* pc_census_lookup(const pc_census* census, const char* key);
char* pc_census_text(const pc_census* census); /* full .cwe text */
void pc_census_free(pc_census* census);

/* a_j for one type; strategy: "auto" | "full" | "bounded". */
char* pc_type_count(const pc_code* code, const char* type_csv, const char* strategy,
                    uint64_t seed, int threads);

/* ---- verification suites ----
 * Each returns a JSON report (NULL on hard error) and sets *pass. */
char* pc_verify_lemma32(uint64_t seed, int* pass);
char* pc_verify_lemma38(int kmax, int* pass);
char* pc_verify_minweights(const pc_plane* plane, uint64_t seed, int threads, int* pass);
char* pc_verify_lemma39(const pc_plane* plane, int k, uint64_t seed, int threads, int* pass);
char* pc_verify_theorem42(const pc_plane* plane, const pc_system* pattern, uint64_t seed,
                          int threads, int* pass);
char* pc_verify_pappus(const pc_plane* plane, int threads, int* pass);
char* pc_verify_desargues(const pc_plane* plane, int threads, int* pass);

#ifdef __cplusplus
}
#endif

#endif /* PLANECODE_H */
