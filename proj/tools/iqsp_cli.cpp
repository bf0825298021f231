#include <cstdio>
int main() { std::puts("iqsp"); return 0; }
