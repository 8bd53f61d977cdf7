// T: mock, hang  V: 1.0
// MOCK-RUN-SLEEP=6
int main() { for (;;) {} }
