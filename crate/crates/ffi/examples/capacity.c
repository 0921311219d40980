/* Minimal consumer of the qbcap C API: evaluate one point, then run a
 * coarse verification.
 *
 * Build (from the workspace root, after `cargo build -p qbcap-ffi`):
 *   cc crates/ffi/examples/capacity.c \
 *      -Icrates/ffi/include target/debug/libqbcap_ffi.a \
 *      -lm -lpthread -ldl -o capacity_demo
 */
#include <stdio.h>
#include <stdlib.h>

#include "qbcap.h"

int main(void) {
    printf("qbcap %s\n", qbcap_version());

    QbCapacityResult result;
    QbStatus status = qbcap_capacity_eval(
        QB_REGION_A1B1, QB_NOISE_NONE,
        /*p=*/0.3, /*eta_a=*/0.0, /*eta_b=*/0.5235987755982988, /*k=*/0.0,
        &result);
    if (status != QB_STATUS_OK) {
        fprintf(stderr, "capacity_eval failed: %d\n", (int)status);
        return 1;
    }
    printf("capacity (pipeline) = %.12f\n", result.capacity_pipeline);
    printf("capacity (analytic) = %.12f\n", result.capacity_analytic);
    printf("residual            = %.3e\n", result.residual);

    QbVerifyReport *report = NULL;
    status = qbcap_verify_run(5, &report);
    if (status != QB_STATUS_OK) {
        fprintf(stderr, "verify_run failed: %d\n", (int)status);
        return 1;
    }
    printf("verify passed = %s (max capacity residual %.3e)\n",
           qbcap_verify_passed(report) ? "yes" : "no",
           qbcap_verify_max_capacity_residual(report));
    qbcap_verify_free(report);
    return 0;
}
