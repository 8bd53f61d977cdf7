// T: acc_set, acc_shutdown, wait, if  V: 3.0
// The if clause gates set, shutdown and wait the same way it gates init:
// the directive acts only when the condition holds.
#include <openacc.h>

int test1() {
  int err = 0;
  int device_num = acc_get_device_num(acc_get_device_type());
#pragma acc set device_num(device_num) if(device_num == device_num)
#pragma acc wait if(device_num == device_num)
#pragma acc shutdown if(device_num == device_num)
  return err;
}

int main() { return test1(); }
