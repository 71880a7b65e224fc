#pragma once

#include "geu/value.hpp"
#include "geu/error.hpp"
#include "geu/random.hpp"
#include "geu/domain.hpp"
#include "geu/expectation.hpp"
#include "geu/plausibility.hpp"
#include "geu/decision.hpp"
#include "geu/relation.hpp"
#include "geu/rules.hpp"
#include "geu/representations.hpp"
#include "geu/lottery.hpp"
#include "geu/horse.hpp"
#include "geu/fuzz.hpp"
