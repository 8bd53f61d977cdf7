// T: async, wait  V: 2.0
// Three queued loops: the third waits on the first two, then a bare wait
// drains queue 3 before the host checks the results.
#include <stdlib.h>

int test1(int n) {
  int err = 0;
  double *a = (double *)malloc(n * sizeof(double));
  double *b = (double *)malloc(n * sizeof(double));
  double *c = (double *)malloc(n * sizeof(double));
  double *d = (double *)malloc(n * sizeof(double));
  double *e = (double *)malloc(n * sizeof(double));
  double *f = (double *)malloc(n * sizeof(double));
  double *g = (double *)malloc(n * sizeof(double));
  for (int x = 0; x < n; ++x) {
    a[x] = 1; b[x] = 2; d[x] = 3; e[x] = 4;
  }
#pragma acc enter data copyin(a[0:n], b[0:n], d[0:n], e[0:n]) create(c[0:n], f[0:n], g[0:n])
#pragma acc parallel loop present(a[0:n], \
  b[0:n], c[0:n]) async(1)
  for (int x = 0; x < n; ++x) {
    c[x] = a[x] + b[x];
  }
#pragma acc parallel loop present(d[0:n], \
  e[0:n], f[0:n]) async(2)
  for (int x = 0; x < n; ++x) {
    f[x] = d[x] + e[x];
  }
#pragma acc wait(1, 2) async(3)
#pragma acc parallel loop present(c[0:n], \
  f[0:n], g[0:n]) async(3)
  for (int x = 0; x < n; ++x) {
    g[x] = c[x] + f[x];
  }
#pragma acc wait(3)
#pragma acc exit data copyout(g[0:n]) delete(a[0:n], b[0:n], c[0:n], d[0:n], e[0:n], f[0:n])
  for (int x = 0; x < n; ++x)
    if (g[x] != 10) err += 1;
  free(a); free(b); free(c); free(d); free(e); free(f); free(g);
  return err;
}

int main() { return test1(2048); }
