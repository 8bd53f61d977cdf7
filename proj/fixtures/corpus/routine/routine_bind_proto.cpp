// T: routine, bind, vector  V: 2.0
// Prototype form: the routine directive names the host function and binds
// the device-side lambda by identifier.
#include <openacc.h>

typedef double real_t;

real_t host_array_array(real_t *a, long long n);
#pragma acc routine(host_array_array) vector bind(device_array_array)

real_t host_array_array(real_t *a, long long n) {
  real_t returned = 0.0;
#pragma acc loop reduction(+:returned)
  for (int x = 0; x < n; ++x)
    returned += a[x];
  return returned;
}

auto device_array_array = [](real_t *a, long long n) {
  real_t returned = 0.0;
#pragma acc loop reduction(-:returned)
  for (int x = 0; x < n; ++x)
    returned -= a[x];
  return returned;
};

int main() {
  const long long n = 64;
  real_t a[n];
  for (long long x = 0; x < n; ++x) a[x] = 1.0;
  real_t total = host_array_array(a, n);
  return total == static_cast<real_t>(n) ? 0 : 1;
}
