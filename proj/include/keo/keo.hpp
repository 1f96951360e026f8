#pragma once

#include "keo/catalog.hpp"
#include "keo/classifier.hpp"
#include "keo/discretizer.hpp"
#include "keo/errors.hpp"
#include "keo/mass_profile.hpp"
#include "keo/ordering.hpp"
#include "keo/parser.hpp"
#include "keo/rational.hpp"
#include "keo/spectra.hpp"
#include "keo/surd.hpp"
