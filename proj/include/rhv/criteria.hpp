#pragma once

#include "rhv/criteria/check.hpp"
#include "rhv/criteria/contributions.hpp"
#include "rhv/criteria/params.hpp"
