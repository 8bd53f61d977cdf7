// T: routine, seq  V: 2.0
#include <openacc.h>

int pow_int(int base, int exponent) {
  int returned = 1;
  for (int x = 0; x < exponent; ++x)
    returned = returned * base;
  return returned;
}
#pragma acc routine(pow_int) seq

int main() {
  const int n = 256;
  int a[256];
  for (int x = 0; x < n; ++x) a[x] = 2;
#pragma acc enter data copyin(a[0:n])
#pragma acc parallel loop present(a[0:n])
  for (int x = 0; x < n; ++x)
    a[x] = pow_int(a[x], 2);
#pragma acc exit data copyout(a[0:n])
  int err = 0;
  for (int x = 0; x < n; ++x)
    if (a[x] != 4) err += 1;
  return err;
}
