// T: enter_data, exit_data, delete, create  V: 2.0
// Dynamic data lifetimes: the exit path either copies the data back or
// deletes it in place depending on the reduction result.
#include <stdlib.h>

int test1(int n) {
  int err = 0;
  int total = 0;
  int *data = (int *)malloc(n * sizeof(int));
  int *scratch = (int *)malloc(n * sizeof(int));
  for (int x = 0; x < n; ++x) data[x] = 1;
#pragma acc enter data copyin(data[0:n])
#pragma acc enter data create(scratch[0:n])
#pragma acc parallel loop present(data[0:n]) reduction(+:total)
  for (int x = 0; x < n; ++x) {
    data[x] = data[x] * 2;
    total += data[x];
  }
  if (total < n) {
#pragma acc exit data copyout(data[0:n])
  } else {
#pragma acc exit data delete(data[0:n])
  }
#pragma acc exit data delete(scratch[0:n])
#pragma acc update if_present host(data[0:n])
  for (int x = 0; x < n; ++x)
    if (data[x] != 2) err += 1;
  free(data);
  free(scratch);
  return err;
}

int main() { return test1(4096); }
