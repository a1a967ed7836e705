#include <stdio.h>
#include <string.h>

#include "salab.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__,    \
                    __LINE__, #cond);                                 \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    SalabIdeal *ideal = NULL;
    CHECK(salab_ideal_parse("ring QQ[x1,x2]\nx1^2\nx1*x2\n", &ideal) == SALAB_STATUS_OK);

    size_t pd = 0;
    CHECK(salab_projective_dimension(ideal, &pd) == SALAB_STATUS_OK);
    CHECK(pd == 2);

    uint64_t hf[4];
    size_t needed = 0;
    CHECK(salab_hilbert_function(ideal, 8, hf, 4, &needed) == SALAB_STATUS_BUFFER_TOO_SMALL);
    CHECK(needed == 9);
    CHECK(salab_hilbert_function(ideal, 3, hf, 4, &needed) == SALAB_STATUS_OK);
    CHECK(hf[0] == 1 && hf[1] == 2 && hf[2] == 1 && hf[3] == 1);
    salab_ideal_free(ideal);

    SalabIdeal *bad = NULL;
    CHECK(salab_ideal_parse("ring QQ[x]\nx^^2\n", &bad) == SALAB_STATUS_PARSE_ERROR);
    CHECK(bad == NULL);
    CHECK(strstr(salab_last_error(), "2:3") != NULL);

    char *json = NULL;
    CHECK(salab_run_command("regseq", "ring QQ[x,y,z]\nx*y\nx*z\n", 0, &json) == SALAB_STATUS_OK);
    CHECK(strstr(json, "\"regular\": false") != NULL);
    salab_string_free(json);

    printf("ok %s\n", salab_version());
    return 0;
}
