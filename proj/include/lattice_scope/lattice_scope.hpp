#pragma once

#include "arith.hpp"
#include "cover.hpp"
#include "explicit_cover.hpp"
#include "hidden_forest.hpp"
#include "serialize.hpp"
#include "types.hpp"
#include "visibility.hpp"
