// T: mock, pass  V: 1.0
// MOCK-RUN-EXIT=0
int main() { return 0; }
