#pragma once

#include "catalog.hpp"
#include "errors.hpp"
#include "extremal.hpp"
#include "patterns.hpp"
#include "report.hpp"
#include "spherical_core.hpp"
#include "tessellation.hpp"
#include "vertex_pattern.hpp"
