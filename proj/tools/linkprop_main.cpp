#include "linkprop/linkprop.hpp"
int main() { return 0; }
