#include <catch2/catch_amalgamated.hpp>

#include "linkprop/linkprop.hpp"
