/* SPDX-License-Identifier: Apache-2.0
 * Copyright 2026 The rischan Authors
 *
 * C interface to the rischan estimator library. Every object is an opaque
 * handle created by a *_create / *_load / *_generate / rischan_train call
 * and released with the matching *_destroy. Functions return a
 * rischan_status; on failure rischan_last_error() describes the cause for
 * the calling thread. Strings returned through char** are owned by the
 * caller and released with rischan_string_free().
 */
#ifndef RISCHAN_H
#define RISCHAN_H

#include <stddef.h>
#include <stdint.h>

#if defined(RISCHAN_BUILDING_LIBRARY)
#define RISCHAN_API __attribute__((visibility("default")))
#else
#define RISCHAN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rischan_status {
  RISCHAN_OK = 0,
  RISCHAN_ERR_INVALID_ARGUMENT = 1, /* null handle or malformed argument */
  RISCHAN_ERR_CONFIG = 2,           /* configuration or schedule rejected */
  RISCHAN_ERR_IO = 3,               /* unreadable / unwritable file */
  RISCHAN_ERR_DIVERGENCE = 4,       /* non-finite loss or state */
  RISCHAN_ERR_SHAPE = 5,            /* dimension mismatch */
  RISCHAN_ERR_INTERNAL = 6
} rischan_status;

typedef struct rischan_config rischan_config;
typedef struct rischan_dataset rischan_dataset;
typedef struct rischan_model rischan_model;

RISCHAN_API const char* rischan_last_error(void);
RISCHAN_API const char* rischan_status_string(rischan_status status);
RISCHAN_API void rischan_string_free(char* s);

/* Configuration ---------------------------------------------------------- */

/* profile: "desk" or "paper". */
RISCHAN_API rischan_status rischan_config_create(const char* profile, rischan_config** out);
RISCHAN_API void rischan_config_destroy(rischan_config* cfg);
/* Overlay a JSON config file; keys absent from the file keep their values. */
RISCHAN_API rischan_status rischan_config_merge_file(rischan_config* cfg, const char* path);
/* Overlay a JSON document given as text. */
RISCHAN_API rischan_status rischan_config_merge_json(rischan_config* cfg, const char* json);
RISCHAN_API rischan_status rischan_config_set_seed(rischan_config* cfg, uint64_t seed);
/* Fully resolved configuration as JSON text. */
RISCHAN_API rischan_status rischan_config_to_json(const rischan_config* cfg, char** out);
RISCHAN_API rischan_status rischan_config_validate(const rischan_config* cfg);
/* Entry of the "paths" block: key is "dataset", "checkpoint" or "report". */
RISCHAN_API rischan_status rischan_config_path(const rischan_config* cfg, const char* key,
                                              char** out);

/* Datasets --------------------------------------------------------------- */

RISCHAN_API rischan_status rischan_dataset_generate(const rischan_config* cfg,
                                                   rischan_dataset** out);
/* Writes <dir>/dataset.bin and <dir>/manifest.json. */
RISCHAN_API rischan_status rischan_dataset_save(const rischan_dataset* ds, const char* dir,
                                               uint64_t* bytes_written);
RISCHAN_API rischan_status rischan_dataset_load(const char* dir, rischan_dataset** out);
RISCHAN_API size_t rischan_dataset_size(const rischan_dataset* ds);
RISCHAN_API rischan_status rischan_dataset_manifest(const rischan_dataset* ds, char** out);
RISCHAN_API void rischan_dataset_destroy(rischan_dataset* ds);

/* Training and evaluation ------------------------------------------------ */

/* Trains on `ds` with the train/model blocks of `cfg`. The run record (JSON)
 * is produced even when training diverges; in that case the status is
 * RISCHAN_ERR_DIVERGENCE and *model is left null. Either output pointer may
 * be null if the caller does not need it. */
RISCHAN_API rischan_status rischan_train(const rischan_config* cfg, const rischan_dataset* ds,
                                        rischan_model** model, char** run_record_json);
RISCHAN_API rischan_status rischan_model_save(rischan_model* model, const char* path);
RISCHAN_API rischan_status rischan_model_load(const char* path, rischan_model** out);
/* Test-split NMSE (split fractions taken from cfg). */
RISCHAN_API rischan_status rischan_model_evaluate(rischan_model* model,
                                                 const rischan_config* cfg,
                                                 const rischan_dataset* ds, double* nmse);
RISCHAN_API void rischan_model_destroy(rischan_model* model);

/* Sweeps ----------------------------------------------------------------- */

/* axis: "r_a", "r_t", "snr" or "epoch". Writes the CSV report to csv_path
 * (header "axis,value,epoch,loss_t,loss_a,nmse") and, when non-null, the
 * number of trained runs to *runs. */
RISCHAN_API rischan_status rischan_sweep(const rischan_config* cfg, const char* axis,
                                        const double* values, size_t count,
                                        const char* csv_path, size_t* runs);

#ifdef __cplusplus
}
#endif

#endif /* RISCHAN_H */
