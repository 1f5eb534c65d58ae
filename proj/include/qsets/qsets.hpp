#pragma once

#include "checks.hpp"
#include "error.hpp"
#include "gluing.hpp"
#include "io.hpp"
#include "limits.hpp"
#include "morphism.hpp"
#include "qset.hpp"
#include "quantale.hpp"
#include "report.hpp"
#include "scott.hpp"
#include "search.hpp"
#include "suite.hpp"
