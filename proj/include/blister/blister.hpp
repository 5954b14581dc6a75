#pragma once

#include "blister/auxiliary.hpp"
#include "blister/classifier.hpp"
#include "blister/curves.hpp"
#include "blister/oracle.hpp"
#include "blister/params.hpp"
#include "blister/profile.hpp"
#include "blister/serialize.hpp"
