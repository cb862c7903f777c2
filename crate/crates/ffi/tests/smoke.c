#include <stdio.h>
#include <string.h>

#include "erdos_straus.h"

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "check failed at line %d: %s\n", __LINE__, #cond); \
      return 1;                                                  \
    }                                                            \
  } while (0)

int main(void) {
  bool ok = false;
  CHECK(es_verify(193, 50, 1930, 4825, &ok) == ES_STATUS_OK && ok);

  EsSieve *sieve = NULL;
  CHECK(es_sieve_new(1 << 16, &sieve) == ES_STATUS_OK);

  EsTypeBWitness b;
  EsTriple t;
  CHECK(es_type_b_search(2521, sieve, &b, &t) == ES_STATUS_OK);
  CHECK(b.d == 11 && b.n == 2 && b.u == 29);
  CHECK(t.x == 638 && t.y == 55462 && t.z == 804199);

  EsTypeAWitness a;
  CHECK(es_type_a_search(193, sieve, &a, &t) == ES_STATUS_NOT_FOUND);

  EsTripleList *run = NULL;
  CHECK(es_chain(4, &run) == ES_STATUS_OK);
  CHECK(es_triple_list_len(run) == 8);
  CHECK(es_triple_list_get(run, 0, &t) == ES_STATUS_OK && t.n == 89);
  es_triple_list_free(run);

  int8_t j = 0;
  CHECK(es_jacobi(5, 4, &j) == ES_STATUS_DOMAIN);
  CHECK(strlen(es_last_error_message()) > 0);

  es_sieve_free(sieve);
  puts("ok");
  return 0;
}
