#include <cstdio>
int main() { std::puts("tlf: placeholder"); return 0; }
