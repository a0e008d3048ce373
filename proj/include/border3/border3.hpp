#pragma once

#include "rational.hpp"
#include "cyclotomic.hpp"
#include "laurent.hpp"
#include "scalar_io.hpp"
#include "poly.hpp"
#include "circuit.hpp"
#include "extraction.hpp"
#include "construct.hpp"
#include "numeric_split.hpp"
#include "verify.hpp"
#include "json_io.hpp"
