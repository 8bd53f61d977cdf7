// T: exit_data, copyout  V: 3.1
// A data region copies c in and out, leaving its reference count at zero.
// The exit data copyout that follows then targets an absent variable:
// 3.0 and earlier raise a runtime error, 3.1 and later take no action.
#include <math.h>
#include <stdlib.h>

#define PRECISION 1e-9

int test1(int n) {
  int err = 0;
  double *a = (double *)malloc(n * sizeof(double));
  double *b = (double *)malloc(n * sizeof(double));
  double *c = (double *)malloc(n * sizeof(double));
  for (int x = 0; x < n; ++x) {
    a[x] = rand() % 100;
    b[x] = rand() % 100;
    c[x] = 0.0;
  }
#pragma acc data copyin(a[0:n], b[0:n]) copy(c[0:n])
#pragma acc parallel loop
  for (int x = 0; x < n; ++x)
    c[x] = a[x] + b[x];
#pragma acc exit data copyout(c[0:n])
  for (int x = 0; x < n; ++x) {
    if (fabs(c[x] - (a[x] + b[x])) > PRECISION)
      err += 1;
  }
  free(a);
  free(b);
  free(c);
  return err;
}

int main() { return test1(1024); }
