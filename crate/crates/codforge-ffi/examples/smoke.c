#include <assert.h>
#include <stdio.h>
#include <string.h>
#include "codforge.h"

int main(void) {
    CodforgeMatrix *m = NULL;
    assert(codforge_gen_gw(3, 1, &m) == CODFORGE_STATUS_OK);
    size_t rows = 0, cols = 0, vars = 0;
    assert(codforge_matrix_rows(m, &rows) == CODFORGE_STATUS_OK);
    assert(codforge_matrix_cols(m, &cols) == CODFORGE_STATUS_OK);
    assert(codforge_matrix_vars(m, &vars) == CODFORGE_STATUS_OK);
    assert(rows == 4 && cols == 3 && vars == 3);
    bool cod = false;
    assert(codforge_matrix_is_cod(m, &cod) == CODFORGE_STATUS_OK && cod);
    char *text = NULL;
    assert(codforge_matrix_render(m, CODFORGE_FORMAT_TEXT, &text) == CODFORGE_STATUS_OK);
    assert(strlen(text) > 0);
    codforge_string_free(text);
    codforge_matrix_free(m);
    uint64_t num = 0, den = 0;
    assert(codforge_max_rate(14, &num, &den) == CODFORGE_STATUS_OK);
    assert(num == 4 && den == 7);
    assert(codforge_gen_g(3, NULL) == CODFORGE_STATUS_NULL_POINTER);
    char *err = NULL;
    assert(codforge_last_error_message(&err) == CODFORGE_STATUS_OK);
    assert(strlen(err) > 0);
    codforge_string_free(err);
    puts("c smoke: ok");
    return 0;
}
