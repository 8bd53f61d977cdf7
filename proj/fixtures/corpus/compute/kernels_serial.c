// T: kernels, serial, gang, worker, vector, atomic  V: 2.5
// Gang/worker/vector levels on a kernels loop, a serial loop reduction,
// and an atomic capture.
#include <stdlib.h>

int test1(int n) {
  int err = 0;
  int captured = 0;
  int total = 0;
  int *a = (int *)malloc(n * sizeof(int));
  for (int x = 0; x < n; ++x) a[x] = 1;
#pragma acc data copyin(a[0:n]) copy(total, captured)
  {
#pragma acc kernels loop gang worker vector
    for (int x = 0; x < n; ++x)
      a[x] = a[x] + 1;
#pragma acc serial loop reduction(+:total)
    for (int x = 0; x < n; ++x)
      total += 1;
#pragma acc parallel loop
    for (int x = 0; x < n; ++x) {
#pragma acc atomic capture
      captured = total + x;
    }
  }
  if (total != n) err += 1;
  free(a);
  return err;
}

int main() { return test1(512); }
