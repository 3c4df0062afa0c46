#pragma once

#include "linkprop/eval.hpp"
#include "linkprop/features.hpp"
#include "linkprop/generators.hpp"
#include "linkprop/graph.hpp"
#include "linkprop/io.hpp"
#include "linkprop/proposal.hpp"
#include "linkprop/quality.hpp"
#include "linkprop/rng.hpp"
#include "linkprop/scorers.hpp"
#include "linkprop/spectral.hpp"
#include "linkprop/splits.hpp"
