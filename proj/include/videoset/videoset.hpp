#pragma once

#include "videoset/analysis.hpp"
#include "videoset/corpus.hpp"
#include "videoset/error.hpp"
#include "videoset/evaluator.hpp"
#include "videoset/random.hpp"
#include "videoset/rouge.hpp"
#include "videoset/summarize.hpp"
#include "videoset/textproc.hpp"
#include "videoset/visual.hpp"
