#pragma once

#include "padet/bounds.hpp"
#include "padet/counting.hpp"
#include "padet/determinant_method.hpp"
#include "padet/errors.hpp"
#include "padet/function_model.hpp"
#include "padet/geometry.hpp"
#include "padet/height_enum.hpp"
#include "padet/json_io.hpp"
#include "padet/linalg.hpp"
#include "padet/padic.hpp"
#include "padet/parallel.hpp"
#include "padet/polynomial.hpp"
#include "padet/suites.hpp"
#include "padet/verifiers.hpp"
