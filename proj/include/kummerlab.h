#ifndef KUMMERLAB_H
#define KUMMERLAB_H

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque evaluation context. Contexts are independent; one context must not
 * be used from two threads at once. */
typedef struct klab_ctx klab_ctx;

klab_ctx* klab_ctx_new(void);
void klab_ctx_free(klab_ctx* ctx);

/* Evaluates a JSON request of the form {"op": ..., ...}. Returns 0 on
 * success, 2 on parse/usage errors, 3 when a desk-scale limit is exceeded,
 * and 4 on degenerate inputs. *response_json receives a NUL-terminated JSON
 * string in every case (an error payload on failure); release it with
 * klab_free. */
int klab_eval(klab_ctx* ctx, const char* request_json, char** response_json);

/* Message of the most recent error on this context, or "" if the last call
 * succeeded. The pointer stays valid until the next klab_eval or
 * klab_ctx_free on the same context. */
const char* klab_last_error(const klab_ctx* ctx);

void klab_free(char* s);

const char* klab_version(void);

#ifdef __cplusplus
}
#endif

#endif
