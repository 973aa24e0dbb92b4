#pragma once

#include "gridmapf/core.hpp"
#include "gridmapf/formula.hpp"
#include "gridmapf/io.hpp"
#include "gridmapf/oracle.hpp"
#include "gridmapf/reduction.hpp"
#include "gridmapf/render.hpp"
#include "gridmapf/twodir.hpp"
