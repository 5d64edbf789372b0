#include <stdio.h>
#include <string.h>

#include "cherednik.h"

static const char *WIDE_M2 =
    "{\"e\": 5, \"multicharge\": [0], \"theta\": [\"0\"], \"g\": \"1\","
    " \"gamma\": [[30,30,30,30,30,30,28,20,19,19,15,11,9,7,3,3,3,3,3,3]],"
    " \"residues\": [0], \"multiset\": {\"0\": 2}}";

int main(void) {
    ChkContext *ctx = NULL;
    if (chk_context_parse(WIDE_M2, &ctx) != CHK_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", chk_last_error());
        return 1;
    }
    size_t n = 0;
    if (chk_gamma_size(ctx, &n) != CHK_STATUS_OK || n != 6) {
        return 2;
    }
    char *plus = NULL, *minus = NULL, *d = NULL;
    chk_gamma_element(ctx, 0, &plus);
    chk_gamma_element(ctx, 5, &minus);
    if (chk_decomp_number(ctx, plus, minus, &d) != CHK_STATUS_OK) {
        fprintf(stderr, "decomp: %s\n", chk_last_error());
        return 3;
    }
    printf("%s\n", d);
    int bad = strcmp(d, "t^4") != 0;
    chk_string_free(plus);
    chk_string_free(minus);
    chk_string_free(d);

    if (chk_gamma_element(ctx, 99, &d) != CHK_STATUS_INPUT_ERROR || chk_last_error() == NULL) {
        bad = 1;
    }
    chk_context_free(ctx);
    return bad ? 4 : 0;
}
