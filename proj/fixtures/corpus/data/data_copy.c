// T: data, copyin, copyout  V: 1.0
// Plain array addition under a structured data region.
#include <stdlib.h>

int main() {
  int N = 1 << 20;
  double *a = (double *)malloc(N * sizeof(double));
  double *b = (double *)malloc(N * sizeof(double));
  double *c = (double *)malloc(N * sizeof(double));
  for (int x = 0; x < N; ++x) {
    a[x] = 10;
    b[x] = 15;
  }
#pragma acc data copyin(a[0:N], b[0:N]) copyout(c[0:N])
  for (int x = 0; x < 1 << 14; ++x) {
#pragma acc parallel loop independent
    for (int y = 0; y < N; ++y)
      c[y] = a[y] + b[y];
  }
  int err = 0;
  for (int y = 0; y < N; ++y)
    if (c[y] != 25) err += 1;
  free(a);
  free(b);
  free(c);
  return err;
}
