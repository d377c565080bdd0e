#pragma once

#include "permuframe/cayley.hpp"
#include "permuframe/csv.hpp"
#include "permuframe/error.hpp"
#include "permuframe/frames.hpp"
#include "permuframe/io.hpp"
#include "permuframe/irreps.hpp"
#include "permuframe/jacobi.hpp"
#include "permuframe/permutation.hpp"
#include "permuframe/ranked.hpp"
#include "permuframe/young.hpp"
#include "permuframe/s3_reference.hpp"
