// T: mock, fail  V: 1.0
// MOCK-RUN-EXIT=1
int main() { return 1; }
