#pragma once

#include "selpref/corpus.hpp"
#include "selpref/error.hpp"
#include "selpref/eval.hpp"
#include "selpref/model_io.hpp"
#include "selpref/prefmodel.hpp"
#include "selpref/taxonomy.hpp"
#include "selpref/wsd.hpp"
