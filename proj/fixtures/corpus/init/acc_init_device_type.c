// T: acc_init, device_type  V: 2.0
// One init per accepted device-type keyword.
#include <openacc.h>
#include <stdlib.h>

#define SEED 42

int test1() {
  int err = 0;
  srand(SEED);
#pragma acc init device_type(host)
#pragma acc init device_type(multicore)
#pragma acc init device_type(default)
#pragma acc init device_type(nvidia)
  return err;
}

int main() { return test1(); }
