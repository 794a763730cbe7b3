#pragma once

#include "sparsemod/errors.hpp"
#include "sparsemod/expsums.hpp"
#include "sparsemod/numtheory.hpp"
#include "sparsemod/parallel.hpp"
#include "sparsemod/report_io.hpp"
#include "sparsemod/residue_set.hpp"
#include "sparsemod/sequence.hpp"
#include "sparsemod/sumsets.hpp"
#include "sparsemod/survey.hpp"
#include "sparsemod/valueset.hpp"
