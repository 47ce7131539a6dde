/* Copyright (C) 2026 mqx contributors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to libmqx. Every call returns an mqx_status; on failure
 * mqx_last_error() describes the problem for the calling thread. Strings
 * returned through char** are heap allocated; release them with
 * mqx_string_free.
 */

#ifndef MQX_H_
#define MQX_H_

#include <stddef.h>
#include <stdint.h>

#if defined(MQX_BUILDING_LIBRARY)
#define MQX_API __attribute__((visibility("default")))
#else
#define MQX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mqx_status {
  MQX_OK = 0,
  MQX_E_INVALID_ARGUMENT = 1,
  MQX_E_UNSUPPORTED_BACKEND = 2,
  MQX_E_NOT_PRIME = 3,
  MQX_E_NO_ROOT_OF_UNITY = 4,
  MQX_E_SIZE_MISMATCH = 5,
  MQX_E_IO = 6,
  MQX_E_SCHEMA = 7,
  MQX_E_INTERNAL = 8,
  MQX_E_VERIFY_FAILED = 9
} mqx_status;

typedef struct mqx_backend mqx_backend;
typedef struct mqx_modulus mqx_modulus;
typedef struct mqx_plan mqx_plan;

MQX_API const char* mqx_version(void);
MQX_API const char* mqx_status_string(mqx_status s);
/* Message of the last failed call on this thread, "" if none. */
MQX_API const char* mqx_last_error(void);
MQX_API void mqx_string_free(char* s);

/* ---- backends --------------------------------------------------------- */

typedef struct mqx_backend_options {
  /* portable | native-256 | native-512 | mqx; NULL reads MQX_BACKEND and
   * falls back to portable. */
  const char* backend;
  const char* mqx_mode;    /* functional | pisa; NULL for functional */
  const char* mqx_variant; /* base | m | c | mc | mhc | mcp; NULL for mc */
  size_t lanes;            /* portable only; 0 for 8 */
  int conservative;        /* PISA mode: keep carry data dependences */
  int force_emulated;      /* run MQX on the array emulator */
} mqx_backend_options;

MQX_API mqx_status mqx_backend_create(const mqx_backend_options* opt, mqx_backend** out);
MQX_API void mqx_backend_destroy(mqx_backend* b);
MQX_API size_t mqx_backend_lanes(const mqx_backend* b);
/* Writes a NUL-terminated name, truncated to cap bytes. */
MQX_API mqx_status mqx_backend_name(const mqx_backend* b, char* buf, size_t cap);
MQX_API const char* mqx_backend_timing_class(const mqx_backend* b);
/* Newline-separated names of every configuration this host can run. */
MQX_API mqx_status mqx_backends_available(char** names);

/* ---- arithmetic ------------------------------------------------------- */

MQX_API mqx_status mqx_modulus_create(uint64_t q_hi, uint64_t q_lo, mqx_modulus** out);
/* One of the shipped NTT-friendly primes: 60, 100, 120, 123 or 124 bits. */
MQX_API mqx_status mqx_modulus_shipped(unsigned bits, mqx_modulus** out);
MQX_API void mqx_modulus_destroy(mqx_modulus* m);

typedef enum mqx_mulalgo { MQX_SCHOOLBOOK = 0, MQX_KARATSUBA = 1 } mqx_mulalgo;

/* Element-wise over split hi/lo arrays of n residues; n must be a
 * multiple of the backend's lanes. */
MQX_API mqx_status mqx_addmod(const mqx_backend* b, const mqx_modulus* m, const uint64_t* a_hi,
                              const uint64_t* a_lo, const uint64_t* b_hi, const uint64_t* b_lo,
                              uint64_t* c_hi, uint64_t* c_lo, size_t n);
MQX_API mqx_status mqx_submod(const mqx_backend* b, const mqx_modulus* m, const uint64_t* a_hi,
                              const uint64_t* a_lo, const uint64_t* b_hi, const uint64_t* b_lo,
                              uint64_t* c_hi, uint64_t* c_lo, size_t n);
MQX_API mqx_status mqx_mulmod(const mqx_backend* b, const mqx_modulus* m, mqx_mulalgo algo,
                              const uint64_t* a_hi, const uint64_t* a_lo, const uint64_t* b_hi,
                              const uint64_t* b_lo, uint64_t* c_hi, uint64_t* c_lo, size_t n);

/* ---- NTT -------------------------------------------------------------- */

MQX_API mqx_status mqx_plan_create(const mqx_modulus* m, size_t n, mqx_mulalgo algo, mqx_plan** out);
MQX_API void mqx_plan_destroy(mqx_plan* p);
MQX_API mqx_status mqx_plan_omega(const mqx_plan* p, uint64_t* hi, uint64_t* lo);
MQX_API mqx_status mqx_ntt_forward(const mqx_plan* p, const mqx_backend* b, const uint64_t* in_hi,
                                   const uint64_t* in_lo, uint64_t* out_hi, uint64_t* out_lo, size_t n);
MQX_API mqx_status mqx_ntt_inverse(const mqx_plan* p, const mqx_backend* b, const uint64_t* in_hi,
                                   const uint64_t* in_lo, uint64_t* out_hi, uint64_t* out_lo, size_t n);

/* ---- benchmarks ------------------------------------------------------- */

typedef struct mqx_bench_spec {
  const char* kernel; /* ntt | vadd | vsub | vpmul | axpy */
  const char* sizes;  /* "2^10..2^16", "1024,4096"; NULL for the default */
  mqx_backend_options backend;
  const char* algo;   /* schoolbook | karatsuba; NULL for schoolbook */
  unsigned modulus_bits; /* 0 for 124 */
  size_t runs;        /* 0 keeps the protocol default */
  size_t measured;    /* 0 keeps the protocol default */
  uint64_t seed;      /* used when has_seed is set */
  int has_seed;
  int no_pin;
} mqx_bench_spec;

/* Runs the benchmark. Optional outputs: the records as CSV and as a
 * terminal table; either pointer may be NULL. */
MQX_API mqx_status mqx_bench_run(const mqx_bench_spec* spec, char** csv, char** table);

/* Runs every suite on every available backend. MQX_E_VERIFY_FAILED when
 * any check fails; the report is produced either way. */
MQX_API mqx_status mqx_verify_all(uint64_t seed, char** report);
/* One configuration; `sizes` as for benchmarks (NULL for 8,1024). */
MQX_API mqx_status mqx_verify_backend(const mqx_backend_options* opt, const char* sizes, uint64_t seed,
                                      char** report);

/* ---- performance models ---------------------------------------------- */

MQX_API mqx_status mqx_pisa_error(double t_target, double t_proxy, double* epsilon_percent);
MQX_API mqx_status mqx_sol_project(double t_m, double c1, double c2, double f_m, double f_max,
                                   double* t_sol);

typedef struct mqx_roofline_args {
  const char* in_csv;             /* bench CSV */
  const char* const* cpu_specs;   /* key-value CPU files */
  size_t n_cpu_specs;
  const char* baselines_csv;      /* optional, NULL for none */
  double c1;                      /* 0 for 1 */
  double f_m;                     /* 0: assume the target frequency */
} mqx_roofline_args;

MQX_API mqx_status mqx_roofline(const mqx_roofline_args* args, char** csv, char** table);
/* Matches target and proxy bench CSVs on (kernel, size). */
MQX_API mqx_status mqx_pisa_error_csv(const char* target_csv, const char* proxy_csv, char** csv,
                                      char** table);
/* Times the target/proxy instruction pairs on an NTT of size n (0 for 2^14). */
MQX_API mqx_status mqx_pisa_validate(size_t n, size_t runs, size_t measured, char** csv, char** table);

#ifdef __cplusplus
}
#endif

#endif /* MQX_H_ */
