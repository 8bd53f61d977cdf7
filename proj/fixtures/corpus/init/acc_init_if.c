// T: acc_init, if  V: 3.0
// Initializes the runtime only when the if condition holds; the condition
// compares a device number against itself so it is always true.
#include <openacc.h>
#include <stdio.h>

int test1() {
  int err = 0;
  int device_num = acc_get_device_num(acc_get_device_type());
#pragma acc init if(device_num == device_num)
  if (acc_get_device_num(acc_get_device_type()) != device_num) err += 1;
  return err;
}

int main() {
  int err = test1();
  return err;
}
