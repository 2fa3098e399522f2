#pragma once

#include "schmidt/error.hpp"
#include "schmidt/rational.hpp"
#include "schmidt/interval.hpp"
#include "schmidt/game.hpp"
#include "schmidt/classify.hpp"
#include "schmidt/enumeration.hpp"
#include "schmidt/omega.hpp"
#include "schmidt/target_tree.hpp"
#include "schmidt/adversary.hpp"
#include "schmidt/serialize.hpp"
#include "schmidt/verify.hpp"
#include "schmidt/session.hpp"
