#include <stdio.h>
#include <string.h>
#include "polylog.h"

int main(void) {
    PolylogSession *s = NULL;
    if (polylog_session_new(1, 1, &s) != POLYLOG_STATUS_OK) return 1;
    PolylogElem *e = NULL;
    if (polylog_elem_parse(s, "Li[2](x) + Li[2](1-x)", &e) != POLYLOG_STATUS_OK) return 2;
    if (polylog_certify(s, e) != POLYLOG_STATUS_OK) return 3;
    char *txt = NULL;
    if (polylog_elem_to_string(e, &txt) != POLYLOG_STATUS_OK) return 4;
    printf("%s\n", txt);
    polylog_string_free(txt);
    if (polylog_elem_parse(s, "cor(0)", &e) != POLYLOG_STATUS_SYNTAX) return 5;
    if (strstr(polylog_last_error(), "arity") == NULL) return 6;
    if (polylog_verify_five_term("2", "3") != POLYLOG_STATUS_OK) return 7;
    polylog_elem_free(e);
    polylog_session_free(s);
    return 0;
}
