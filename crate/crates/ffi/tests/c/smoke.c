#include <stdio.h>
#include <string.h>
#include "curvecount.h"

static int expect(const char *what, CcStatus st, const char *got, const char *want) {
    if (st != CC_STATUS_OK || strcmp(got, want) != 0) {
        fprintf(stderr, "%s: status %d, got %s, want %s\n", what, (int)st, got ? got : "(null)", want);
        return 1;
    }
    return 0;
}

int main(void) {
    int bad = 0;
    CcSession *s = NULL;
    char *out = NULL;

    if (cc_session_new(7, &s) != CC_STATUS_OK) return 2;
    CcStatus st = cc_eval(s, "[T1 T1 T2] * y1^2 * yd^31", &out);
    bad |= expect("eval", st, out, "72");
    cc_string_free(out);

    st = cc_eval(s, "[T1]]", &out);
    if (st != CC_STATUS_PARSE || out != NULL || strstr(cc_last_error(), "offset 4") == NULL) {
        fprintf(stderr, "parse error not reported: %d %s\n", (int)st, cc_last_error());
        bad = 1;
    }
    cc_session_free(s);

    uint32_t beta[] = {0, 2, 1};
    uint32_t alpha[] = {0};
    st = cc_ch_invariant(7, 0, alpha, 1, beta, 3, &out);
    bad |= expect("ch", st, out, "36");
    cc_string_free(out);

    st = cc_wdvv_nd_t1(8, &out);
    bad |= expect("wdvv", st, out, "58749399019136");
    cc_string_free(out);

    if (cc_session_new(0, &s) != CC_STATUS_INVALID_INPUT) bad = 1;
    printf("%s\n", bad ? "failed" : "ok");
    return bad;
}
