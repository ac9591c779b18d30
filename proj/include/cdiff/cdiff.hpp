// Umbrella header.
#pragma once

#include "cdiff/arith.hpp"
#include "cdiff/cddt.hpp"
#include "cdiff/closed_form.hpp"
#include "cdiff/field.hpp"
#include "cdiff/function.hpp"
#include "cdiff/io.hpp"
#include "cdiff/parallel.hpp"
#include "cdiff/theorem_suite.hpp"
