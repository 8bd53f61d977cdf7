// T: acc_init, device_num  V: 2.0
#include <openacc.h>
#include <stdlib.h>

#define SEED 42

int test1() {
  int err = 0;
  srand(SEED);
  int device_num = acc_get_device_num(acc_get_device_type());
#pragma acc init device_num(device_num)
  return err;
}

int main() { return test1(); }
