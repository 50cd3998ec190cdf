#pragma once

#include "errors.hpp"
#include "monotone.hpp"
#include "spec_parser.hpp"
#include "coords.hpp"
#include "lcmap.hpp"
#include "constructions.hpp"
#include "verify.hpp"
#include "symmetry.hpp"
#include "render.hpp"
#include "serialize.hpp"
