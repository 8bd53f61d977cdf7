// T: mock, fail  V: 1.0
// MOCK-RUN-EXIT=3
int main() { return 3; }
