#include <cstdio>
int main(){ printf("acceptance: pending kernel\n"); return 1; }
