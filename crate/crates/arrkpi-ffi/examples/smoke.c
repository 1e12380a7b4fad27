/* Minimal C consumer of the arrkpi interface.
 *
 * Build (from the repository root, after `cargo build -p arrkpi-ffi`):
 *
 *   cc crates/arrkpi-ffi/examples/smoke.c \
 *      -I crates/arrkpi-ffi/include \
 *      target/debug/libarrkpi_ffi.a -lpthread -ldl -lm -o smoke
 */
#include <stdio.h>
#include <string.h>
#include "arrkpi.h"

int main(void) {
    ArrkpiArrangement *arr = NULL;
    if (arrkpi_arrangement_reflection(ARRKPI_FAMILY_B, 2, &arr) != ARRKPI_STATUS_OK) {
        fprintf(stderr, "build failed: %s\n", arrkpi_last_error_message());
        return 1;
    }

    ArrkpiFanComplex *fc = NULL;
    if (arrkpi_fan_complex_new(arr, &fc) != ARRKPI_STATUS_OK) {
        fprintf(stderr, "fan enumeration failed: %s\n", arrkpi_last_error_message());
        arrkpi_arrangement_free(arr);
        return 1;
    }
    uintptr_t fans = 0, chambers = 0;
    arrkpi_fan_complex_counts(fc, &fans, &chambers);
    printf("rank-2 signed arrangement: %zu fans, %zu chambers\n",
           (size_t)fans, (size_t)chambers);

    int32_t word[] = {1, 2, 1};
    char *name = NULL;
    if (arrkpi_braid_normal_form("A2", word, 3, &name) == ARRKPI_STATUS_OK) {
        printf("normal form of s1 s2 s1: %s\n", name);
        arrkpi_string_free(name);
    }

    char *report = NULL;
    if (arrkpi_verify_ball_suite(2, 3, 2, &report) == ARRKPI_STATUS_OK) {
        printf("radius-3 ball audit report: %zu bytes of JSON\n", strlen(report));
        arrkpi_string_free(report);
    }

    arrkpi_fan_complex_free(fc);
    arrkpi_arrangement_free(arr);
    return 0;
}
