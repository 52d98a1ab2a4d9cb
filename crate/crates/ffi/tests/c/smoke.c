#include <stdio.h>
#include <string.h>

#include "surface_conjugacy.h"

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond, \
              sg_last_error_message());                              \
      return 1;                                                      \
    }                                                                \
  } while (0)

int main(void) {
  SgGroup *g = NULL;
  CHECK(sg_group_new(2, &g) == SG_STATUS_OK);

  SgWord *u = NULL, *v = NULL, *nf = NULL, *bad = NULL;
  CHECK(sg_word_parse(g, "1", SG_WORD_STYLE_INT, &u) == SG_STATUS_OK);
  CHECK(sg_word_parse(g, "-2 -2 1 2 2", SG_WORD_STYLE_INT, &v) == SG_STATUS_OK);
  CHECK(sg_word_parse(g, "5", SG_WORD_STYLE_INT, &bad) == SG_STATUS_PARSE);
  CHECK(strlen(sg_last_error_message()) > 0);

  SgWord *r = NULL;
  CHECK(sg_word_parse(g, "1 2 3 4", SG_WORD_STYLE_INT, &r) == SG_STATUS_OK);
  CHECK(sg_normal_form(g, r, &nf) == SG_STATUS_OK);
  char *text = NULL;
  CHECK(sg_word_format(nf, SG_WORD_STYLE_INT, &text) == SG_STATUS_OK);
  CHECK(strcmp(text, "4 3 2 1") == 0);
  sg_string_free(text);

  SgCertificate *cert = NULL;
  CHECK(sg_conjugator(g, u, v, true, 20, 1000000, &cert) == SG_STATUS_OK);
  CHECK(sg_certificate_is_conjugate(cert));
  CHECK(sg_certificate_conjugator_len(cert) == 2);
  CHECK(sg_certificate_exact_cl(cert) == 2);
  CHECK(sg_certificate_bound(cert) == 18);
  char *json = NULL;
  CHECK(sg_certificate_to_json(cert, &json) == SG_STATUS_OK);
  CHECK(strstr(json, "\"conjugator_len\":2") != NULL);
  printf("%s\n", json);
  sg_string_free(json);

  sg_certificate_free(cert);
  sg_word_free(r);
  sg_word_free(nf);
  sg_word_free(u);
  sg_word_free(v);
  sg_group_free(g);
  return 0;
}
