#pragma once

#include "grval/error.hpp"
#include "grval/fields.hpp"
#include "grval/hilbert.hpp"
#include "grval/lattice.hpp"
#include "grval/linalg.hpp"
#include "grval/ncpoly.hpp"
#include "grval/parallel.hpp"
#include "grval/parser.hpp"
#include "grval/pbw.hpp"
#include "grval/reduction.hpp"
#include "grval/spec_file.hpp"
#include "grval/valfilt.hpp"
#include "grval/value.hpp"
#include "grval/valued_field.hpp"
