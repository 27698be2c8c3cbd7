#pragma once

#include "duoidal/algebra.hpp"
#include "duoidal/bialgebroid.hpp"
#include "duoidal/bim_duoidal.hpp"
#include "duoidal/bim_random.hpp"
#include "duoidal/error.hpp"
#include "duoidal/linalg.hpp"
#include "duoidal/report.hpp"
#include "duoidal/small_category.hpp"
#include "duoidal/span.hpp"
#include "duoidal/span_catalog.hpp"
#include "duoidal/span_duoidal.hpp"
#include "duoidal/span_hopf.hpp"
#include "duoidal/span_random.hpp"
