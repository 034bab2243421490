#pragma once

#include "revpeb/error.hpp"
#include "revpeb/dag.hpp"
#include "revpeb/pebbling.hpp"
#include "revpeb/strategies.hpp"
#include "revpeb/search.hpp"
#include "revpeb/field.hpp"
#include "revpeb/polynomial.hpp"
#include "revpeb/formula.hpp"
#include "revpeb/certificate.hpp"
#include "revpeb/io.hpp"
