#pragma once

#include "ossynth/affine.hpp"
#include "ossynth/derivor.hpp"
#include "ossynth/error.hpp"
#include "ossynth/farkas.hpp"
#include "ossynth/interp.hpp"
#include "ossynth/maude.hpp"
#include "ossynth/model.hpp"
#include "ossynth/os_core.hpp"
#include "ossynth/pipeline.hpp"
#include "ossynth/polynomial.hpp"
#include "ossynth/rational.hpp"
#include "ossynth/smtlib.hpp"
#include "ossynth/solver.hpp"
#include "ossynth/theory.hpp"
