// T: mock, cerr  V: 1.0
// MOCK-COMPILE-ERROR
int main() { return 0 }
