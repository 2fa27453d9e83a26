#pragma once

#include "frlab/dress.hpp"
#include "frlab/error.hpp"
#include "frlab/frcode.hpp"
#include "frlab/gf256.hpp"
#include "frlab/io.hpp"
#include "frlab/labeling.hpp"
#include "frlab/magic.hpp"
#include "frlab/minps.hpp"
#include "frlab/oracle.hpp"
#include "frlab/rational.hpp"
#include "frlab/setsystem.hpp"
#include "frlab/verify.hpp"
